//! Exhaustive checks of the structural properties of the family, `Phi`, the
//! Z-basis, and the exceptional data, assembled into a pass/fail report.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::excdata::{self, WeylType};
use crate::family::{
    extend_to_lagrangian, parity_split, perp_in_parity, project_member, Family, FamilyTower,
};
use crate::phimap::{phi, reachable_set, PhiTable, TildeV};
use crate::space::{QuotientModel, Vector};
use crate::subspace::Subspace;
use crate::symfam;
use crate::zbasis::{certificate_for, Decomposer, FunctionOnTildeV};

/// Largest `d` for which the constructive induction-step check runs.
pub const INDUCTION_CHECK_D_MAX: usize = 3;

/// Result of one check, possibly over one value of `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub d: Option<usize>,
    /// Number of instances examined.
    pub checked: usize,
    pub violations: usize,
    /// A few violating instances, for diagnosis.
    pub samples: Vec<String>,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{}: {status}", self.name)?;
        if let Some(d) = self.d {
            write!(f, ", d={d}")?;
        }
        write!(
            f,
            ", {} checked, {} violations",
            self.checked, self.violations
        )?;
        for s in &self.samples {
            write!(f, "\n    {s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(CheckLine::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.passed())
    }

    pub fn find(&self, name: &str, d: Option<usize>) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.name == name && l.d == d)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        let failed = self.failures().count();
        if failed == 0 {
            write!(f, "all {} checks passed", self.lines.len())
        } else {
            write!(f, "{failed} of {} checks FAILED", self.lines.len())
        }
    }
}

const MAX_SAMPLES: usize = 3;

/// Accumulates one [`CheckLine`].
struct Tally {
    line: CheckLine,
}

impl Tally {
    fn new(name: &str, d: Option<usize>) -> Self {
        Tally {
            line: CheckLine {
                name: name.to_string(),
                d,
                checked: 0,
                violations: 0,
                samples: Vec::new(),
            },
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.line.checked += 1;
        if !ok {
            self.line.violations += 1;
            if self.line.samples.len() < MAX_SAMPLES {
                self.line.samples.push(describe());
            }
        }
    }

    fn finish(self) -> CheckLine {
        self.line
    }
}

/// Every odd interval `[a,b]` of `alpha(X)` with `a < b` has some `e_i`,
/// `a < i < b`, inside `X`.
pub fn check_interval_interior(family: &Family) -> CheckLine {
    let mut t = Tally::new("interval-interior", Some(family.d()));
    for x in family.members() {
        for iv in x.alpha().iter().filter(|iv| iv.start() < iv.end()) {
            let ok = (iv.start() + 1..iv.end()).any(|i| x.contains_basis_vector(i));
            t.check(ok, || format!("{x}: {iv} has no interior e_i"));
        }
    }
    t.finish()
}

/// Projecting a member through any `e_i` it contains lands in the family below.
pub fn check_quotient_stability(family: &Family, below: Option<&Family>) -> CheckLine {
    let mut t = Tally::new("quotient-stability", Some(family.d()));
    let Some(below) = below else {
        return t.finish();
    };
    for x in family.members() {
        for i in x.basis_vectors_contained() {
            let ok = project_member(x, i).is_ok_and(|y| below.contains(&y));
            t.check(ok, || {
                format!("{x}: projection through e_{i} leaves the family")
            });
        }
    }
    t.finish()
}

/// Every nonzero member is the preimage of its projection through some
/// `e_i` it contains, with the projection in the family below.
pub fn check_recursion_closure(family: &Family, below: Option<&Family>) -> CheckLine {
    let mut t = Tally::new("recursion-closure", Some(family.d()));
    let Some(below) = below else {
        let ok = family.members() == [Subspace::zero(0)];
        t.check(ok, || "d = 0 family is not {0}".into());
        return t.finish();
    };
    let d = family.d();
    let mut lifted: BTreeSet<Subspace> = BTreeSet::from([Subspace::zero(d)]);
    for q in QuotientModel::all(d) {
        for y in below.members() {
            lifted.insert(Subspace::lift(y, &q).expect("dimensions agree"));
        }
    }
    let members: BTreeSet<Subspace> = family.members().iter().cloned().collect();
    t.check(lifted == members, || {
        format!(
            "lifts give {} subspaces, family has {}",
            lifted.len(),
            members.len()
        )
    });
    for x in family.members().iter().filter(|x| !x.is_zero()) {
        let ok = x.basis_vectors_contained().into_iter().any(|i| {
            let q = QuotientModel::new(d, i).expect("pivot in range");
            x.project(&q)
                .ok()
                .filter(|y| below.contains(y))
                .and_then(|y| Subspace::lift(&y, &q).ok())
                .is_some_and(|back| &back == x)
        });
        t.check(ok, || format!("{x} is not a preimage of a member below"));
    }
    t.finish()
}

pub fn check_isotropic(family: &Family) -> CheckLine {
    let mut t = Tally::new("isotropic", Some(family.d()));
    for x in family.members() {
        t.check(x.is_isotropic(), || format!("{x} is not isotropic"));
    }
    t.finish()
}

/// Each member extends to a dimension-`d` member containing it.
pub fn check_lagrangian_extension(family: &Family) -> CheckLine {
    let d = family.d();
    let mut t = Tally::new("lagrangian-extension", Some(d));
    for x in family.members() {
        let ok = extend_to_lagrangian(x)
            .is_ok_and(|ext| ext.dim() == d && x.is_subspace_of(&ext) && family.contains(&ext));
        t.check(ok, || format!("{x} has no valid extension"));
    }
    t.finish()
}

/// The interval vectors of `alpha(X)` are a basis of `X`.
pub fn check_interval_basis(family: &Family) -> CheckLine {
    let d = family.d();
    let mut t = Tally::new("interval-basis", Some(d));
    for x in family.members() {
        let vs: Vec<Vector> = x
            .alpha()
            .iter()
            .map(|iv| iv.vector(d).expect("interval of V_d"))
            .collect();
        let ok = vs.len() == x.dim() && Subspace::span(d, &vs).is_ok_and(|s| &s == x);
        t.check(ok, || {
            format!("{x}: {} intervals for dimension {}", vs.len(), x.dim())
        });
    }
    t.finish()
}

/// For `X != 0`: `i = min ∪ alpha(X)`, `j = min { k : e_k ∈ X }`.
fn start_indices(x: &Subspace) -> Option<(usize, usize)> {
    let i = x.alpha().iter().map(|iv| iv.start()).min()?;
    let j = *x.basis_vectors_contained().first()?;
    Some((i, j))
}

/// The unique-successor structure of `alpha(X)` on `[i, j]`, and the two
/// boundary statements that follow from isotropy.
pub fn check_interval_structure(family: &Family) -> Vec<CheckLine> {
    let d = family.d();
    let mut chain = Tally::new("interval-chain", Some(d));
    let mut beyond = Tally::new("interval-chain-beyond-j", Some(d));
    let mut gap = Tally::new("interval-gap-after-j", Some(d));
    for x in family.members().iter().filter(|x| !x.is_zero()) {
        let Some((i, j)) = start_indices(x) else {
            chain.check(false, || format!("{x}: no e_k or no interval"));
            continue;
        };
        chain.check(i <= j, || format!("{x}: i = {i} > j = {j}"));
        for h in i..=j.max(i) {
            let ends: Vec<usize> = x
                .alpha()
                .iter()
                .filter(|iv| iv.start() == h)
                .map(|iv| iv.end())
                .collect();
            chain.check(ends.len() == 1 && ends[0] >= j, || {
                format!("{x}: intervals starting at {h} end at {ends:?}, j = {j}")
            });
            if j < 2 * d && h < j {
                beyond.check(ends.len() == 1 && ends[0] > j, || {
                    format!("{x}: interval from {h} ends at {ends:?}, not beyond j = {j}")
                });
            }
        }
        if j < 2 * d {
            let bad: Vec<String> = x
                .alpha()
                .iter()
                .filter(|iv| iv.start() == j + 1 && iv.end() > j + 1)
                .map(|iv| iv.to_string())
                .collect();
            gap.check(bad.is_empty(), || {
                format!("{x}: {bad:?} start at j + 1 = {}", j + 1)
            });
        }
    }
    vec![chain.finish(), beyond.finish(), gap.finish()]
}

/// `Phi(X)` is perpendicular to `e_i` and projects to `Phi(pi_i X)`.
pub fn check_phi_compatibility(family: &Family) -> CheckLine {
    let d = family.d();
    let mut t = Tally::new("phi-compatibility", Some(d));
    for x in family.members() {
        let image = phi(x);
        for i in x.basis_vectors_contained() {
            let q = QuotientModel::new(d, i).expect("pivot in range");
            let ok = q.is_perpendicular(&image)
                && match (q.project(&image), project_member(x, i)) {
                    (Ok(p), Ok(child)) => p == phi(&child),
                    _ => false,
                };
            t.check(ok, || {
                format!("{x}: Phi = {image} incompatible with pivot {i}")
            });
        }
    }
    t.finish()
}

pub fn check_phi_membership(family: &Family) -> CheckLine {
    let mut t = Tally::new("phi-membership", Some(family.d()));
    for x in family.members() {
        let image = phi(x);
        t.check(x.contains(&image), || {
            format!("Phi({x}) = {image} is not in X")
        });
    }
    t.finish()
}

pub fn check_phi_injective(table: &PhiTable) -> CheckLine {
    let mut t = Tally::new("phi-injective", Some(table.d));
    let collisions = table.collisions();
    for _ in 0..table.images.len().saturating_sub(collisions.len()) {
        t.check(true, String::new);
    }
    for (a, b) in collisions {
        t.check(false, || format!("members {a} and {b} share an image"));
    }
    t.finish()
}

/// `#family = #Ṽ` and the image of `Phi` is all of `Ṽ`.
pub fn check_phi_bijection(family: &Family, table: &PhiTable, tilde_v: &TildeV) -> CheckLine {
    let mut t = Tally::new("phi-bijection", Some(family.d()));
    t.check(family.len() == tilde_v.len(), || {
        format!("{} members but {} vectors", family.len(), tilde_v.len())
    });
    t.check(table.image() == tilde_v.elements, || {
        "image of Phi is not Ṽ".into()
    });
    t.finish()
}

/// The breadth-first closure of 0 under admissible `e_j` moves is `Ṽ`.
pub fn check_reachability(tilde_v: &TildeV) -> Result<CheckLine> {
    let d = tilde_v.d;
    let mut t = Tally::new("reachability", Some(d));
    let reach = reachable_set(d)?.set();
    let missing = tilde_v.elements.difference(&reach).count();
    let extra = reach.difference(&tilde_v.elements).count();
    t.check(missing == 0, || {
        format!("{missing} vectors of Ṽ are not reachable")
    });
    t.check(extra == 0, || {
        format!("{extra} reachable vectors lie outside Ṽ")
    });
    Ok(t.finish())
}

/// The membership matrix is square with determinant ±1 and Smith form `I`.
pub fn check_z_basis(family: &Family) -> CheckLine {
    let mut t = Tally::new("z-basis", Some(family.d()));
    match certificate_for(family) {
        Ok(cert) => {
            t.check(cert.is_unimodular(), || {
                format!("determinant {}", cert.determinant)
            });
            let snf = cert.matrix.smith_diagonal();
            t.check(snf.iter().all(One::is_one), || {
                "Smith form is not the identity".into()
            });
        }
        Err(e) => t.check(false, || e.to_string()),
    }
    t.finish()
}

/// Each `ψ_x` with `x != 0` reaches a neighbour `x' = x + e_j` one step
/// closer to 0, and `ψ_x + ψ_x'` is the lift of the decomposition of
/// `ψ_{pi_j(x)}` one level down.
pub fn check_induction_step(family: &Family, below: Option<&Family>) -> Result<CheckLine> {
    let d = family.d();
    let mut t = Tally::new("induction-step", Some(d));
    let Some(below) = below else {
        return Ok(t.finish());
    };
    let tilde_v = TildeV::from_family(family);
    let tilde_below = TildeV::from_family(below);
    let decomposer = Decomposer::new(certificate_for(below)?)?;
    let reach = reachable_set(d)?;
    for x in tilde_v.elements.iter().filter(|x| !x.is_zero()) {
        let Some(&(neighbour, j)) = reach.parent.get(x) else {
            t.check(false, || format!("{x} has no path to 0"));
            continue;
        };
        let q = QuotientModel::new(d, j).expect("pivot in range");
        let y = q.project(x)?;
        if !tilde_v.contains(&neighbour) || !tilde_below.contains(&y) {
            t.check(false, || {
                format!("{x}: neighbour {neighbour} or image {y} outside Ṽ")
            });
            continue;
        }
        let point = FunctionOnTildeV::indicator(&tilde_below, |v| *v == y);
        let coeffs = decomposer.decompose(&point)?;
        let lifted: Vec<(Subspace, i64)> = coeffs
            .iter()
            .map(|(sub, c)| Ok((Subspace::lift(sub, &q)?, *c)))
            .collect::<Result<_>>()?;
        let ok = tilde_v.elements.iter().all(|v| {
            let lhs = i64::from(v == x) + i64::from(*v == neighbour);
            let rhs: i64 = lifted
                .iter()
                .filter(|(s, _)| s.contains(v))
                .map(|(_, c)| c)
                .sum();
            lhs == rhs
        });
        t.check(ok, || format!("{x} via e_{j}: lifted combination differs"));
    }
    Ok(t.finish())
}

/// `X = X^0 ⊕ X^1` for every member. For Lagrangian members each parity
/// part is also the perpendicular of the other inside its parity subspace;
/// smaller members fail this (already `X = 0` does), so they are skipped.
pub fn check_parity(family: &Family) -> Vec<CheckLine> {
    let d = family.d();
    let mut split = Tally::new("parity-split", Some(d));
    let mut perp = Tally::new("parity-perp", Some(d));
    for x in family.members() {
        let (x0, x1) = parity_split(x);
        let mut both = x0.basis();
        both.extend(x1.basis());
        let ok = x0.dim() + x1.dim() == x.dim() && Subspace::span(d, &both).is_ok_and(|s| &s == x);
        split.check(ok, || format!("{x}: parts {x0} + {x1}"));
        if x.dim() != d {
            continue;
        }
        let ok = perp_in_parity(&x0, 1) == x1 && perp_in_parity(&x1, 0) == x0;
        perp.check(ok, || {
            format!("{x}: parity parts are not mutual perpendiculars")
        });
    }
    vec![split.finish(), perp.finish()]
}

/// All checks on the family side for one `d`.
pub fn family_checks(tower: &FamilyTower, d: usize) -> Result<Vec<CheckLine>> {
    let family = tower.level(d).expect("level within tower");
    let below = d.checked_sub(1).and_then(|b| tower.level(b));
    let tilde_v = TildeV::from_family(family);
    let table = PhiTable::new(family);
    let mut lines = vec![
        check_isotropic(family),
        check_recursion_closure(family, below),
        check_interval_interior(family),
        check_quotient_stability(family, below),
        check_lagrangian_extension(family),
        check_interval_basis(family),
    ];
    lines.extend(check_interval_structure(family));
    lines.push(check_phi_compatibility(family));
    lines.push(check_phi_membership(family));
    lines.push(check_phi_injective(&table));
    lines.push(check_phi_bijection(family, &table, &tilde_v));
    lines.push(check_reachability(&tilde_v)?);
    lines.push(check_z_basis(family));
    if d <= INDUCTION_CHECK_D_MAX {
        lines.push(check_induction_step(family, below)?);
    }
    lines.extend(check_parity(family));
    Ok(lines)
}

/// Kostka agreement, the unique matching, and Young module distinctness.
pub fn symmetric_group_checks(m_max: usize) -> Result<Vec<CheckLine>> {
    let mut kostka = Tally::new("kostka-two-routes", None);
    for m in 1..=m_max {
        for l in symfam::partitions(m) {
            for mu in symfam::partitions(m) {
                let a = symfam::kostka(&l, &mu)?;
                let b = symfam::kostka_by_characters(&l, &mu)?;
                kostka.check(a == b, || {
                    format!("K({l}, {mu}): tableaux {a}, characters {b}")
                });
            }
        }
    }
    let mut lines = vec![kostka.finish()];
    for m in 3..=m_max.max(3) {
        let mut t = Tally::new(&format!("multiplicity-one-bijection m={m}"), None);
        let count = symfam::multiplicity_one_matchings(m)?.len();
        t.check(count == 1, || format!("{count} matchings"));
        t.check(symfam::young_modules_distinct(m)?, || {
            "two Young contents give isomorphic modules".into()
        });
        let rows = symfam::cx_multiplicities(m)?;
        for row in &rows {
            t.check(row.multiplicity(&row.rho) == Some(1), || {
                format!("{} does not occur once", row.rho)
            });
        }
        lines.push(t.finish());
    }
    Ok(lines)
}

/// Every stored table verifies, printed sums match, and the cx rows agree
/// with the symmetric-group data.
pub fn exceptional_checks() -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for table in excdata::all_tables() {
        let mut t = Tally::new(
            &format!("family-table {} n_c={}", table.weyl_type, table.n_c),
            None,
        );
        let report = excdata::verify_table(&table);
        t.check(report.passed(), || {
            report
                .violations
                .iter()
                .map(|v| format!("{}: {}", v.check, v.detail))
                .collect::<Vec<_>>()
                .join("; ")
        });
        lines.push(t.finish());
    }
    for weyl in [WeylType::G2, WeylType::F4, WeylType::E8] {
        let (n_c, _) = weyl.symmetric_family().expect("has symmetric family");
        let mut t = Tally::new(&format!("cx-cross-check {weyl} n_c={n_c}"), None);
        match excdata::cross_check_cx(weyl, n_c) {
            Ok(cc) => t.check(cc.is_unique(), || {
                format!("{} consistent assignments", cc.consistent_assignments)
            }),
            Err(e) => t.check(false, || e.to_string()),
        }
        let bad = excdata::printed_sum_mismatches(weyl)?;
        t.check(bad.is_empty(), || {
            format!("printed sums differ on rows {bad:?}")
        });
        lines.push(t.finish());
    }
    Ok(lines)
}

/// The full suite: family checks for every `d <= d_max`, then the
/// symmetric-group and exceptional checks.
pub fn run_suite(d_max: usize) -> Result<Report> {
    let tower = FamilyTower::build(d_max)?;
    let per_d: Vec<Result<Vec<CheckLine>>> = {
        use rayon::prelude::*;
        (0..=d_max)
            .into_par_iter()
            .map(|d| family_checks(&tower, d))
            .collect()
    };
    let mut lines = Vec::new();
    for part in per_d {
        lines.extend(part?);
    }
    lines.extend(symmetric_group_checks(5)?);
    lines.extend(exceptional_checks()?);
    Ok(Report { lines })
}

/// Counts per `d` for the summary report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub d: usize,
    pub family_size: usize,
    pub tilde_v_size: usize,
    pub lagrangians: usize,
    pub max_distance_to_zero: usize,
    pub determinant: String,
}

pub fn level_summaries(d_max: usize) -> Result<Vec<LevelSummary>> {
    let tower = FamilyTower::build(d_max)?;
    tower
        .levels()
        .iter()
        .map(|fam| {
            let d = fam.d();
            let tv = TildeV::from_family(fam);
            let reach = reachable_set(d)?;
            let cert = certificate_for(fam)?;
            Ok(LevelSummary {
                d,
                family_size: fam.len(),
                tilde_v_size: tv.len(),
                lagrangians: fam.members().iter().filter(|x| x.dim() == d).count(),
                max_distance_to_zero: reach.distance.values().copied().max().unwrap_or(0),
                determinant: cert.determinant.to_string(),
            })
        })
        .collect()
}
