//! Acceptance criteria, one PASS/FAIL line each. Oracles here are written
//! from the definitions and do not call the library's own checkers.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Signed};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use isobasis::excdata::{self, WeylType};
use isobasis::phimap::TildeV;
use isobasis::symfam::{self, Partition};
use isobasis::verify;
use isobasis::zbasis::{certificate_for, Decomposer, FunctionOnTildeV};
use isobasis::{enumerate_family, FamilyTower, Subspace, Vector};

const D_MAX: usize = 5;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn span(d: usize, gens: &[&[usize]]) -> Subspace {
    let vs: Vec<Vector> = gens
        .iter()
        .map(|idx| Vector::from_indices(d, idx).unwrap())
        .collect();
    Subspace::span(d, &vs).unwrap()
}

/// Pairing straight from the Gram matrix: `(e_i, e_j) = 1` iff `|i-j| = 1`.
fn pairing(x: &[u8], y: &[u8]) -> u8 {
    let mut s = 0;
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            if i.abs_diff(j) == 1 {
                s ^= xi & yj;
            }
        }
    }
    s
}

fn coords(v: &Vector) -> Vec<u8> {
    (1..=2 * v.d()).map(|i| u8::from(v.coord(i))).collect()
}

/// `Ṽ` as the union of the members' element sets.
fn union_of_members(members: &[Subspace]) -> BTreeSet<Vector> {
    members.iter().flat_map(|x| x.elements()).collect()
}

/// `Phi` from the definition: count the odd intervals `[a,b]` whose vector
/// lies in `X` and contain `j`, then take that count mod 4 in {1,2}.
fn phi_oracle(x: &Subspace) -> Vector {
    let d = x.d();
    let n = 2 * d;
    let mut f = vec![0usize; n + 1];
    for a in 1..=n {
        for b in (a..=n).step_by(2) {
            let v = Vector::from_indices(d, &(a..=b).collect::<Vec<_>>()).unwrap();
            if x.contains(&v) {
                for fj in &mut f[a..=b] {
                    *fj += 1;
                }
            }
        }
    }
    let idx: Vec<usize> = (1..=n).filter(|&j| matches!(f[j] % 4, 1 | 2)).collect();
    Vector::from_indices(d, &idx).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let f1 = enumerate_family(1).map_err(|e| e.to_string())?;
    let f2 = enumerate_family(2).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let want1: BTreeSet<Subspace> = [span(1, &[]), span(1, &[&[1]]), span(1, &[&[2]])]
        .into_iter()
        .collect();
    let want2: BTreeSet<Subspace> = [
        span(2, &[]),
        span(2, &[&[1]]),
        span(2, &[&[2]]),
        span(2, &[&[3]]),
        span(2, &[&[4]]),
        span(2, &[&[1], &[4]]),
        span(2, &[&[2], &[1, 2, 3]]),
        span(2, &[&[2], &[4]]),
        span(2, &[&[1], &[3]]),
        span(2, &[&[3], &[2, 3, 4]]),
    ]
    .into_iter()
    .collect();
    let got1: BTreeSet<Subspace> = f1.members().iter().cloned().collect();
    let got2: BTreeSet<Subspace> = f2.members().iter().cloned().collect();
    ensure(f1.len() == 3 && got1 == want1, || {
        format!("d=1 gives {got1:?}")
    })?;
    ensure(f2.len() == 10 && got2 == want2, || {
        format!("d=2 gives {got2:?}")
    })?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "3 and 10 subspaces match the printed lists in {elapsed:?}"
    ))
}

fn criterion_2(tower: &FamilyTower) -> Outcome {
    let start = Instant::now();
    let mut sizes = Vec::new();
    for fam in tower.levels() {
        let d = fam.d();
        let tilde: BTreeSet<Vector> = union_of_members(fam.members());
        let images: Vec<Vector> = fam.members().iter().map(phi_oracle).collect();
        let distinct: BTreeSet<Vector> = images.iter().copied().collect();
        for (x, v) in fam.members().iter().zip(&images) {
            let lib = isobasis::phimap::phi(x);
            ensure(lib == *v, || {
                format!("d={d}: Phi({x}) is {lib}, oracle {v}")
            })?;
        }
        ensure(fam.len() == tilde.len(), || {
            format!("d={d}: {} members, {} vectors", fam.len(), tilde.len())
        })?;
        ensure(distinct.len() == images.len(), || {
            format!("d={d}: Phi not injective")
        })?;
        ensure(distinct == tilde, || {
            format!("d={d}: image of Phi is not Ṽ")
        })?;
        sizes.push(fam.len());
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "bijection for d <= {D_MAX}, sizes {sizes:?}, {elapsed:?}"
    ))
}

/// Determinant modulo a prime by plain Gaussian elimination.
fn det_mod_p(rows: &[Vec<i64>], p: i64) -> i64 {
    let n = rows.len();
    let mut a: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let inv = |x: i64| {
        let (mut r, mut e, mut b) = (1i64, p - 2, x);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut det = 1i64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| a[r][k] != 0) else {
            return 0;
        };
        if piv != k {
            a.swap(piv, k);
            det = (p - det) % p;
        }
        det = det * a[k][k] % p;
        let ik = inv(a[k][k]);
        for r in k + 1..n {
            let factor = a[r][k] * ik % p;
            if factor != 0 {
                let pivot_row = a[k].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row).skip(k) {
                    *x = (*x - factor * y).rem_euclid(p);
                }
            }
        }
    }
    det
}

fn criterion_3(tower: &FamilyTower) -> Outcome {
    let primes = [1_000_000_007i64, 998_244_353];
    let mut dets = Vec::new();
    for fam in tower.levels() {
        let d = fam.d();
        let tilde: Vec<Vector> = union_of_members(fam.members()).into_iter().collect();
        let rows: Vec<Vec<i64>> = fam
            .members()
            .iter()
            .map(|x| tilde.iter().map(|v| i64::from(x.contains(v))).collect())
            .collect();
        ensure(rows.len() == tilde.len(), || format!("d={d}: not square"))?;
        let cert = certificate_for(fam).map_err(|e| e.to_string())?;
        ensure(cert.matrix.to_rows() == rows, || {
            format!("d={d}: matrix differs from oracle")
        })?;
        ensure(cert.determinant.abs().is_one(), || {
            format!("d={d}: determinant {}", cert.determinant)
        })?;
        let sign: i64 = if cert.determinant.is_positive() {
            1
        } else {
            -1
        };
        for p in primes {
            let m = det_mod_p(&rows, p);
            ensure(m == sign.rem_euclid(p), || {
                format!("d={d}: det mod {p} = {m}")
            })?;
        }
        ensure(cert.matrix.smith_diagonal().iter().all(One::is_one), || {
            format!("d={d}: Smith form is not the identity")
        })?;
        dets.push(cert.determinant.to_string());
    }
    Ok(format!("determinants {} for d <= {D_MAX}", dets.join(", ")))
}

fn criterion_4(tower: &FamilyTower) -> Outcome {
    for fam in tower.levels() {
        let d = fam.d();
        let tilde = union_of_members(fam.members());
        let basis: Vec<Vector> = (1..=2 * d).map(|j| Vector::basis(d, j).unwrap()).collect();
        let mut seen = BTreeSet::from([Vector::zero(d)]);
        let mut queue = VecDeque::from([Vector::zero(d)]);
        while let Some(x) = queue.pop_front() {
            for e in &basis {
                if pairing(&coords(&x), &coords(e)) == 0 {
                    let y = x + *e;
                    if seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
        }
        ensure(seen == tilde, || {
            format!(
                "d={d}: {} reachable, {} in Ṽ, {} in common",
                seen.len(),
                tilde.len(),
                seen.intersection(&tilde).count()
            )
        })?;
        let lib = isobasis::phimap::reachable_set(d).map_err(|e| e.to_string())?;
        ensure(lib.set() == seen, || {
            format!("d={d}: library closure differs")
        })?;
    }
    Ok(format!("closure of 0 equals Ṽ for d <= {D_MAX}"))
}

fn criterion_5(tower: &FamilyTower) -> Outcome {
    const REQUIRED: &[&str] = &[
        "interval-interior",
        "quotient-stability",
        "lagrangian-extension",
        "interval-basis",
        "interval-chain",
        "interval-chain-beyond-j",
        "interval-gap-after-j",
        "phi-compatibility",
        "phi-membership",
        "parity-split",
        "parity-perp",
    ];
    let mut checked = 0;
    for d in 0..=D_MAX {
        let lines = verify::family_checks(tower, d).map_err(|e| e.to_string())?;
        for name in REQUIRED {
            let line = lines
                .iter()
                .find(|l| l.name == *name)
                .ok_or_else(|| format!("d={d}: check {name} missing"))?;
            ensure(line.passed(), || line.to_string())?;
            checked += line.checked;
        }
        // isotropy straight from the Gram matrix
        let fam = tower.level(d).unwrap();
        for x in fam.members() {
            let b = x.basis();
            for u in &b {
                for v in &b {
                    ensure(pairing(&coords(u), &coords(v)) == 0, || {
                        format!("{x} not isotropic")
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "{} properties, {checked} instances, 0 violations",
        REQUIRED.len()
    ))
}

/// Lower unitriangular after moving each row's marked column to the diagonal.
fn unitriangular_by_marks(rows: &[Vec<i64>], marks: &[usize]) -> bool {
    let n = rows.len();
    let mut order = marks.to_vec();
    order.sort_unstable();
    order.dedup();
    if order.len() != n {
        return false;
    }
    (0..n).all(|r| {
        (0..n).all(|k| {
            let x = rows[r][marks[k]];
            match k.cmp(&r) {
                std::cmp::Ordering::Equal => x == 1,
                std::cmp::Ordering::Greater => x == 0,
                std::cmp::Ordering::Less => x >= 0,
            }
        })
    })
}

fn criterion_6() -> Outcome {
    let shapes = excdata::distinct_shapes();
    let sizes: BTreeSet<usize> = shapes.iter().map(|t| t.n_c).collect();
    ensure(sizes == BTreeSet::from([1, 2, 3, 4, 5, 11, 17]), || {
        format!("shapes {sizes:?}")
    })?;
    for t in excdata::all_tables() {
        let report = excdata::verify_table(&t);
        ensure(report.passed() && report.determinant == "1", || {
            format!("{} n_c={}: {:?}", t.weyl_type, t.n_c, report.violations)
        })?;
        ensure(
            unitriangular_by_marks(&t.matrix.to_rows(), &t.marks),
            || {
                format!(
                    "{} n_c={}: not unitriangular under its marks",
                    t.weyl_type, t.n_c
                )
            },
        )?;
    }
    Ok(format!(
        "{} shapes, {} tables, all unitriangular",
        shapes.len(),
        excdata::all_tables().len()
    ))
}

fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

fn criterion_7() -> Outcome {
    for (t, n_c) in [(WeylType::G2, 4), (WeylType::F4, 11), (WeylType::E8, 17)] {
        let cc = excdata::cross_check_cx(t, n_c).map_err(|e| e.to_string())?;
        ensure(cc.is_unique(), || {
            format!("{t}: {} assignments", cc.consistent_assignments)
        })?;
        let bad = excdata::printed_sum_mismatches(t).map_err(|e| e.to_string())?;
        ensure(bad.is_empty(), || {
            format!("{t}: printed sums differ on {bad:?}")
        })?;
    }
    let row = |t, n_c, r: usize| excdata::family_table(t, n_c).unwrap().matrix.to_rows()[r].clone();
    let f4 = row(WeylType::F4, 11, 3);
    ensure(
        f4[..4] == [1, 2, 1, 1] && f4[4..].iter().all(|&x| x == 0),
        || format!("F4 row {f4:?}"),
    )?;
    let e8 = row(WeylType::E8, 17, 5);
    ensure(
        e8[..6] == [1, 3, 3, 3, 2, 1] && e8[6..].iter().all(|&x| x == 0),
        || format!("E8 row {e8:?}"),
    )?;
    let vec_for = |m: usize, rho: &str| -> Result<Vec<u64>, String> {
        let rho: Partition = rho.parse().map_err(|e: isobasis::Error| e.to_string())?;
        symfam::cx_multiplicities(m)
            .map_err(|e| e.to_string())?
            .into_iter()
            .find(|r| r.rho == rho)
            .map(|r| r.vector())
            .ok_or_else(|| format!("no row for {rho}"))
    };
    ensure(vec_for(4, "2+1+1")? == [1, 2, 1, 1], || {
        "S_4 vector differs".into()
    })?;
    ensure(vec_for(5, "2+1+1+1")? == [1, 3, 3, 3, 2, 1], || {
        "S_5 vector differs".into()
    })?;

    let mut pairs = 0;
    for m in 1..=5 {
        let parts = symfam::partitions(m);
        let column = Partition::new(vec![1; m]).unwrap();
        let mut sum_sq = 0;
        for l in &parts {
            for mu in &parts {
                let a = symfam::kostka(l, mu).map_err(|e| e.to_string())?;
                let b = symfam::kostka_by_characters(l, mu).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("K({l},{mu}): {a} vs {b}"))?;
                pairs += 1;
            }
            let f = symfam::kostka(l, &column).map_err(|e| e.to_string())?;
            sum_sq += f * f;
        }
        ensure(sum_sq == factorial(m), || {
            format!("m={m}: sum of f_lambda^2 is {sum_sq}")
        })?;
    }
    Ok(format!(
        "unique correspondences for G2, F4, E8; {pairs} Kostka pairs agree"
    ))
}

fn criterion_8(tower: &FamilyTower) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0fb1);
    let mut total = 0;
    for fam in tower.levels().iter().filter(|f| f.d() <= 4) {
        let d = fam.d();
        let tilde = TildeV::from_family(fam);
        let dec = Decomposer::new(certificate_for(fam).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let f = FunctionOnTildeV::new(&tilde, |_| rng.gen_range(-5..=5));
            let coeffs: BTreeMap<Subspace, i64> = dec.decompose(&f).map_err(|e| e.to_string())?;
            for (v, want) in &f.values {
                let got: i64 = coeffs
                    .iter()
                    .filter(|(x, _)| x.contains(v))
                    .map(|(_, c)| c)
                    .sum();
                ensure(got == *want, || {
                    format!("d={d}: value at {v} is {got}, want {want}")
                })?;
            }
            ensure(dec.recompose(&coeffs) == f, || {
                format!("d={d}: recompose differs")
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} random functions round-trip exactly"))
}

fn main() -> ExitCode {
    let tower = FamilyTower::build(D_MAX).expect("family tower");
    let criteria: Vec<Criterion> = vec![
        ("printed lists for d = 1, 2", Box::new(criterion_1)),
        (
            "Phi is a bijection onto Ṽ",
            Box::new(|| criterion_2(&tower)),
        ),
        (
            "membership matrix is unimodular",
            Box::new(|| criterion_3(&tower)),
        ),
        ("reachable set equals Ṽ", Box::new(|| criterion_4(&tower))),
        (
            "structural properties of every member",
            Box::new(|| criterion_5(&tower)),
        ),
        ("exceptional family tables", Box::new(criterion_6)),
        ("symmetric-group cross-checks", Box::new(criterion_7)),
        ("decompose and recompose", Box::new(|| criterion_8(&tower))),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {title}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
