use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::json;

use isobasis::excdata::{self, FamilyTable, WeylType};
use isobasis::family::enumerate_family;
use isobasis::phimap::{PhiTable, TildeV};
use isobasis::symfam::{self, MAX_M};
use isobasis::verify::{self, Report};
use isobasis::zbasis::{basis_matrix, DEFAULT_D_MAX};

/// Enumerate, export and verify isotropic subspace families and the
/// exceptional family tables.
#[derive(Parser, Debug)]
#[command(name = "isobasis", version, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest d for verification and reports; also bounds --d.
    #[arg(long, global = true, default_value_t = DEFAULT_D_MAX)]
    d_max: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for parallel checks.
    #[arg(long, global = true, env = "ISOBASIS_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the family for one d.
    Enumerate {
        #[arg(long)]
        d: usize,
    },
    /// Tabulate Phi over the family for one d.
    Phi {
        #[arg(long)]
        d: usize,
    },
    /// Run every check for d <= d-max plus the exceptional data.
    Verify,
    /// Membership matrix and determinant for one d.
    Basis {
        #[arg(long)]
        d: usize,
    },
    /// Kostka numbers, the matching and the multiplicity vectors of S_m.
    Kostka {
        /// Defaults to m = 3, 4, 5.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Family tables of exceptional Weyl groups with their checks.
    Exceptional {
        #[arg(long = "type")]
        weyl_type: Option<WeylType>,
        /// Family size; defaults to the largest family of the type.
        #[arg(long)]
        nc: Option<usize>,
    },
    /// Summary counts per d and per table.
    Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command()
        .error(ErrorKind::ArgumentConflict, msg)
        .exit()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("warning: could not configure thread pool: {e}");
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// Returns whether all checks in the output passed.
fn run(cli: &Cli) -> Result<bool> {
    let check_d = |d: usize| {
        if d > cli.d_max {
            usage_error(format!("--d {d} exceeds --d-max {}", cli.d_max));
        }
        d
    };
    let (text, passed) = match cli.command {
        Command::Enumerate { d } => (enumerate(check_d(d), cli.format)?, true),
        Command::Phi { d } => (phi(check_d(d), cli.format)?, true),
        Command::Basis { d } => (basis(check_d(d), cli.format)?, true),
        Command::Verify => {
            let report = verify::run_suite(cli.d_max)?;
            (render_report(&report, cli.format)?, report.passed())
        }
        Command::Kostka { m } => {
            let ms = match m {
                Some(m) if !(1..=MAX_M).contains(&m) => {
                    usage_error(format!("--m must lie in 1..={MAX_M}"))
                }
                Some(m) => vec![m],
                None => vec![3, 4, 5],
            };
            (kostka(&ms, cli.format)?, true)
        }
        Command::Exceptional { weyl_type, nc } => {
            return exceptional(weyl_type, nc, cli.format, cli.out.as_deref())
        }
        Command::Report => (report(cli.d_max, cli.format)?, true),
    };
    emit(&text, cli.out.as_deref())?;
    Ok(passed)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn to_json(value: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn enumerate(d: usize, format: Format) -> Result<String> {
    let fam = enumerate_family(d)?;
    Ok(match format {
        Format::Json => to_json(&fam.to_export())?,
        Format::Csv => {
            let mut s = String::from("dim,basis,alpha\n");
            for x in fam.members() {
                let basis: Vec<String> = x.basis().iter().map(|v| v.to_bitstring()).collect();
                let alpha: Vec<String> = x.alpha().iter().map(|iv| iv.to_string()).collect();
                writeln!(s, "{},{},{}", x.dim(), basis.join(" "), alpha.join(" "))?;
            }
            s
        }
        Format::Text => {
            let mut s = format!("d={d}: {} subspaces\n", fam.len());
            for x in fam.members() {
                let alpha: Vec<String> = x.alpha().iter().map(|iv| iv.to_string()).collect();
                writeln!(s, "{x}  alpha={{{}}}", alpha.join(", "))?;
            }
            s
        }
    })
}

fn phi(d: usize, format: Format) -> Result<String> {
    let fam = enumerate_family(d)?;
    let table = PhiTable::new(&fam);
    let tilde_v = TildeV::from_family(&fam);
    Ok(match format {
        Format::Json => to_json(&table.to_export(tilde_v.len()))?,
        Format::Csv => {
            let mut s = String::from("subspace,phi\n");
            for (x, v) in fam.members().iter().zip(&table.images) {
                let basis: Vec<String> = x.basis().iter().map(|b| b.to_bitstring()).collect();
                writeln!(s, "{},{}", basis.join(" "), v.to_bitstring())?;
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "d={d}: {} members, |Ṽ| = {}, injective: {}\n",
                fam.len(),
                tilde_v.len(),
                table.is_injective()
            );
            for (x, v) in fam.members().iter().zip(&table.images) {
                writeln!(s, "{x} -> {}", v.to_bitstring())?;
            }
            s
        }
    })
}

fn basis(d: usize, format: Format) -> Result<String> {
    let cert = basis_matrix(d)?;
    Ok(match format {
        Format::Json => to_json(&cert.to_export())?,
        Format::Csv => cert.to_csv(),
        Format::Text => {
            let mut s = format!(
                "d={d}: {}x{} membership matrix, determinant {}\n",
                cert.matrix.nrows(),
                cert.matrix.ncols(),
                cert.determinant
            );
            for (x, row) in cert.row_order.iter().zip(cert.matrix.row_strings()) {
                writeln!(s, "{row}  {x}")?;
            }
            s
        }
    })
}

fn render_report(report: &Report, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => to_json(&json!({
            "passed": report.passed(),
            "lines": report.lines,
        }))?,
        Format::Csv => {
            let mut s = String::from("check,d,status,checked,violations\n");
            for l in &report.lines {
                let d = l.d.map(|d| d.to_string()).unwrap_or_default();
                let status = if l.passed() { "PASS" } else { "FAIL" };
                writeln!(s, "{},{d},{status},{},{}", l.name, l.checked, l.violations)?;
            }
            s
        }
        Format::Text => report.to_string() + "\n",
    })
}

fn kostka(ms: &[usize], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let exports = ms
                .iter()
                .map(|&m| symfam::kostka_export(m))
                .collect::<isobasis::Result<Vec<_>>>()?;
            to_json(&exports)
        }
        Format::Csv => {
            let mut s = String::from("m,lambda,mu,kostka\n");
            for &m in ms {
                for (l, row) in symfam::kostka_table(m)? {
                    for (mu, k) in row {
                        writeln!(s, "{m},{l},{mu},{k}")?;
                    }
                }
            }
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            for &m in ms {
                let parts = symfam::partitions(m);
                writeln!(s, "S_{m}: Kostka numbers K(lambda, mu)")?;
                let table = symfam::kostka_table(m)?;
                let header: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                writeln!(
                    s,
                    "{:>10} {}",
                    "",
                    header
                        .iter()
                        .map(|h| format!("{h:>10}"))
                        .collect::<String>()
                )?;
                for l in &parts {
                    let cells: String = parts
                        .iter()
                        .map(|mu| format!("{:>10}", table[l][mu]))
                        .collect();
                    writeln!(s, "{:>10} {cells}", l.to_string())?;
                }
                if m >= 3 {
                    writeln!(s, "multiplicity-one matching:")?;
                    for (l, mu) in symfam::unique_bijection(m)? {
                        writeln!(s, "  {l} <-> {mu}")?;
                    }
                    writeln!(s, "multiplicity vectors:")?;
                    for row in symfam::cx_multiplicities(m)? {
                        let v: Vec<String> = row.vector().iter().map(u64::to_string).collect();
                        writeln!(
                            s,
                            "  {} (matched {}): ({})",
                            row.rho,
                            row.matched,
                            v.join(",")
                        )?;
                    }
                }
                s.push('\n');
            }
            Ok(s)
        }
    }
}

fn select_tables(weyl_type: Option<WeylType>, nc: Option<usize>) -> Vec<FamilyTable> {
    let Some(t) = weyl_type else {
        if nc.is_some() {
            usage_error("--nc needs --type");
        }
        return excdata::all_tables();
    };
    let n_c = match nc {
        Some(n) if !t.family_sizes().contains(&n) => usage_error(format!(
            "{t} has no family of size {n}; sizes are {:?}",
            t.family_sizes()
        )),
        Some(n) => n,
        None => *t
            .family_sizes()
            .iter()
            .max()
            .expect("every type has families"),
    };
    vec![excdata::family_table(t, n_c).expect("size checked above")]
}

fn exceptional(
    weyl_type: Option<WeylType>,
    nc: Option<usize>,
    format: Format,
    out: Option<&Path>,
) -> Result<bool> {
    let tables = select_tables(weyl_type, nc);
    let mut passed = true;
    let mut entries = Vec::new();
    for table in &tables {
        let report = excdata::verify_table(table);
        passed &= report.passed();
        let cross = match table.weyl_type.symmetric_family() {
            Some((n, _)) if n == table.n_c => {
                let cc = excdata::cross_check_cx(table.weyl_type, n);
                passed &= cc.as_ref().is_ok_and(|c| c.is_unique())
                    && excdata::printed_sum_mismatches(table.weyl_type)?.is_empty();
                Some(cc)
            }
            _ => None,
        };
        entries.push((table, report, cross));
    }
    match format {
        Format::Csv => {
            let [(table, _, _)] = entries.as_slice() else {
                usage_error("csv output needs a single table: pass --type");
            };
            emit(&table.to_csv(), out)?;
            if let Some(path) = out {
                let sidecar = path.with_extension("json");
                fs::write(&sidecar, to_json(&table.sidecar())?)
                    .with_context(|| format!("writing {}", sidecar.display()))?;
            }
        }
        Format::Json => {
            let values: Vec<serde_json::Value> = entries
                .iter()
                .map(|(table, report, cross)| {
                    json!({
                        "table": table.sidecar(),
                        "matrix": table.matrix.to_rows(),
                        "report": report,
                        "cx_cross_check": cross.as_ref().map(|c| match c {
                            Ok(c) => json!(c),
                            Err(e) => json!({ "error": e.to_string() }),
                        }),
                    })
                })
                .collect();
            emit(&to_json(&values)?, out)?;
        }
        Format::Text => {
            let mut s = String::new();
            for (table, report, cross) in &entries {
                writeln!(s, "{} n_c={}", table.weyl_type, table.n_c)?;
                let width = table
                    .column_labels
                    .iter()
                    .map(String::len)
                    .max()
                    .unwrap_or(1)
                    .max(2);
                let rows = table.matrix.to_rows();
                write!(s, "{:>3} ", "")?;
                for label in &table.column_labels {
                    write!(s, " {label:>width$}")?;
                }
                s.push('\n');
                for (r, row) in rows.iter().enumerate() {
                    write!(s, "{:>3} ", r + 1)?;
                    for (c, x) in row.iter().enumerate() {
                        let cell = if table.marks[r] == c {
                            format!("{x}*")
                        } else {
                            x.to_string()
                        };
                        write!(s, " {cell:>width$}")?;
                    }
                    writeln!(s, "  {}", table.row_class[r])?;
                }
                let status = if report.passed() { "PASS" } else { "FAIL" };
                writeln!(
                    s,
                    "table checks: {status}, determinant {}",
                    report.determinant
                )?;
                for v in &report.violations {
                    writeln!(s, "    {}: {}", v.check, v.detail)?;
                }
                match cross {
                    Some(Ok(cc)) => {
                        let status = if cc.is_unique() { "PASS" } else { "FAIL" };
                        writeln!(
                            s,
                            "cx cross-check with S_{}: {status}, {} consistent assignment(s)",
                            cc.m, cc.consistent_assignments
                        )?;
                        for (p, label) in &cc.correspondence {
                            writeln!(s, "    {p} -> {label}")?;
                        }
                        for (rho, row) in &cc.rows {
                            writeln!(s, "    row {row} <- rho = {rho}")?;
                        }
                    }
                    Some(Err(e)) => writeln!(s, "cx cross-check: FAIL, {e}")?,
                    None => {}
                }
                s.push('\n');
            }
            emit(&s, out)?;
        }
    }
    Ok(passed)
}

fn report(d_max: usize, format: Format) -> Result<String> {
    let levels = verify::level_summaries(d_max)?;
    let tables: Vec<serde_json::Value> = excdata::all_tables()
        .iter()
        .map(|t| {
            let r = excdata::verify_table(t);
            json!({
                "weyl_type": t.weyl_type,
                "n_c": t.n_c,
                "determinant": r.determinant,
                "passed": r.passed(),
            })
        })
        .collect();
    Ok(match format {
        Format::Json => to_json(&json!({ "levels": levels, "tables": tables }))?,
        Format::Csv => {
            let mut s = String::from(
                "d,family_size,tilde_v_size,lagrangians,max_distance_to_zero,determinant\n",
            );
            for l in &levels {
                writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    l.d,
                    l.family_size,
                    l.tilde_v_size,
                    l.lagrangians,
                    l.max_distance_to_zero,
                    l.determinant
                )?;
            }
            s
        }
        Format::Text => {
            let mut s = String::from("  d  |family|  |Ṽ|  lagrangian  max dist  det\n");
            for l in &levels {
                writeln!(
                    s,
                    "{:>3} {:>8} {:>5} {:>11} {:>9} {:>4}",
                    l.d,
                    l.family_size,
                    l.tilde_v_size,
                    l.lagrangians,
                    l.max_distance_to_zero,
                    l.determinant
                )?;
            }
            s.push('\n');
            for t in &tables {
                let status = if t["passed"] == true { "PASS" } else { "FAIL" };
                writeln!(
                    s,
                    "{} n_c={}: determinant {}, {status}",
                    t["weyl_type"].as_str().unwrap_or("?"),
                    t["n_c"],
                    t["determinant"].as_str().unwrap_or("?")
                )?;
            }
            s
        }
    })
}
