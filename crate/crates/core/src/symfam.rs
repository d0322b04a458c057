//! Partitions, Kostka numbers and Young permutation modules of `S_m`.
//!
//! Irreducible representations of `S_m` are indexed by partitions `λ` of
//! `m` (`(m)` trivial, `(1^m)` sign). The permutation module on the cosets
//! of the Young subgroup `S_μ` contains the irreducible `λ` with multiplicity
//! equal to the Kostka number `K(λ, μ)`.
//!
//! Two independent routes to `K(λ, μ)` are provided: counting semistandard
//! tableaux ([`kostka`]) and the character inner product
//! `<χ^λ, 1↑S_μ>` over all of `S_m` ([`kostka_by_characters`]), with `χ^λ`
//! from the Murnaghan–Nakayama rule and the permutation character from
//! fixed tabloids.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `m` accepted by the routines that enumerate `S_m`.
pub const MAX_M: usize = 7;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        parts.shrink_to_fit();
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(1^m)`.
    pub fn is_column(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    pub fn transpose(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }
}

/// Reverse lexicographic: `(4) > (3,1) > (2,2) > (2,1,1) > (1,1,1,1)`.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts.iter().join("+"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"3+1"`; `"0"` or the empty string give the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition { parts: vec![] });
        }
        let parts = s
            .split('+')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidPartition(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `m`, largest first in reverse lexicographic order.
pub fn partitions(m: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// Irreducibles other than the sign: every partition except `(1^m)`.
pub fn non_sign_irreducibles(m: usize) -> Vec<Partition> {
    partitions(m)
        .into_iter()
        .filter(|p| !p.is_column())
        .collect()
}

/// Young subgroups other than `{1}`, up to conjugacy: every `μ` except `(1^m)`.
pub fn nontrivial_young_contents(m: usize) -> Vec<Partition> {
    non_sign_irreducibles(m)
}

fn check_sizes(lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch {
            left: lambda.size(),
            right: mu.size(),
        });
    }
    Ok(())
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 || m > MAX_M {
        return Err(Error::UnsupportedOrder { m, max: MAX_M });
    }
    Ok(())
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`.
pub fn kostka(lambda: &Partition, mu: &Partition) -> Result<u64> {
    check_sizes(lambda, mu)?;
    let cells: Vec<(usize, usize)> = lambda
        .parts
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = lambda.parts.iter().map(|&len| vec![0; len]).collect();
    let mut remaining = mu.parts.clone();
    Ok(fill(&cells, 0, &mut grid, &mut remaining))
}

fn fill(
    cells: &[(usize, usize)],
    k: usize,
    grid: &mut [Vec<usize>],
    remaining: &mut [usize],
) -> u64 {
    let Some(&(r, c)) = cells.get(k) else {
        return 1;
    };
    // rows weakly increase, columns strictly increase; entries are 1-based
    let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
    let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
    let lo = lo_row.max(lo_col);
    let mut total = 0;
    for value in lo..=remaining.len() {
        if remaining[value - 1] == 0 {
            continue;
        }
        remaining[value - 1] -= 1;
        grid[r][c] = value;
        total += fill(cells, k + 1, grid, remaining);
        remaining[value - 1] += 1;
    }
    grid[r][c] = 0;
    total
}

/// Cycle type of a permutation of `0..m`.
fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition { parts }
}

/// `χ^λ` on the class of cycle type `rho`, by the Murnaghan–Nakayama rule on
/// beta-sets.
pub fn character(lambda: &Partition, rho: &Partition) -> Result<i64> {
    check_sizes(lambda, rho)?;
    let len = lambda.len();
    let beta: Vec<usize> = lambda
        .parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (len - 1 - i))
        .collect();
    Ok(mn(beta, &rho.parts))
}

fn mn(beta: Vec<usize>, cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        // removing a rim hook of length r moves a bead from b to b - r; the
        // sign counts the beads jumped over
        let jumped = beta.iter().filter(|&&x| b - r < x && x < b).count();
        let mut next = beta.clone();
        next[idx] = b - r;
        let value = mn(next, rest);
        total += if jumped % 2 == 0 { value } else { -value };
    }
    total
}

/// Number of tabloids of shape `mu` (ordered set partitions into blocks of
/// sizes `mu`) fixed by `perm`.
fn fixed_tabloids(perm: &[usize], mu: &Partition) -> u64 {
    fn go(x: usize, perm: &[usize], row: &mut [usize], counts: &mut [usize]) -> u64 {
        if x == perm.len() {
            return u64::from((0..perm.len()).all(|y| row[perm[y]] == row[y]));
        }
        let mut total = 0;
        for r in 0..counts.len() {
            if counts[r] == 0 {
                continue;
            }
            counts[r] -= 1;
            row[x] = r;
            total += go(x + 1, perm, row, counts);
            counts[r] += 1;
        }
        total
    }
    let mut row = vec![0; perm.len()];
    let mut counts = mu.parts.clone();
    go(0, perm, &mut row, &mut counts)
}

/// Values of the permutation character `1↑S_μ` on each element of `S_m`,
/// elements in the order produced by `itertools::permutations`.
pub fn permutation_character(mu: &Partition) -> Result<Vec<u64>> {
    let m = mu.size();
    check_m(m)?;
    Ok((0..m)
        .permutations(m)
        .map(|p| fixed_tabloids(&p, mu))
        .collect())
}

/// `K(λ, μ) = <χ^λ, 1↑S_μ>` summed over every element of `S_m`.
pub fn kostka_by_characters(lambda: &Partition, mu: &Partition) -> Result<u64> {
    check_sizes(lambda, mu)?;
    let m = mu.size();
    check_m(m)?;
    let mut chi_cache: BTreeMap<Partition, i64> = BTreeMap::new();
    let mut sum: i64 = 0;
    let mut order: i64 = 0;
    for p in (0..m).permutations(m) {
        let ty = cycle_type(&p);
        let chi = match chi_cache.get(&ty) {
            Some(&v) => v,
            None => {
                let v = character(lambda, &ty)?;
                chi_cache.insert(ty, v);
                v
            }
        };
        sum += chi * fixed_tabloids(&p, mu) as i64;
        order += 1;
    }
    debug_assert_eq!(sum % order, 0);
    Ok((sum / order) as u64)
}

/// Whether the permutation modules of distinct `μ` have distinct characters.
pub fn young_modules_distinct(m: usize) -> Result<bool> {
    let chars = nontrivial_young_contents(m)
        .iter()
        .map(permutation_character)
        .collect::<Result<Vec<_>>>()?;
    Ok(chars.iter().tuple_combinations().all(|(a, b)| a != b))
}

/// Kostka numbers for all pairs of partitions of `m`.
pub fn kostka_table(m: usize) -> Result<BTreeMap<Partition, BTreeMap<Partition, u64>>> {
    let ps = partitions(m);
    ps.iter()
        .map(|l| {
            let row = ps
                .iter()
                .map(|mu| Ok((mu.clone(), kostka(l, mu)?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            Ok((l.clone(), row))
        })
        .collect()
}

/// All bijections `λ -> μ` between non-sign irreducibles and nontrivial
/// Young contents with `K(λ, μ) = 1` on every matched pair.
pub fn multiplicity_one_matchings(m: usize) -> Result<Vec<Vec<(Partition, Partition)>>> {
    check_m(m)?;
    let left = non_sign_irreducibles(m);
    let right = nontrivial_young_contents(m);
    let ok: Vec<Vec<bool>> = left
        .iter()
        .map(|l| {
            right
                .iter()
                .map(|mu| kostka(l, mu).map(|k| k == 1))
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut found = Vec::new();
    let mut used = vec![false; right.len()];
    let mut chosen = Vec::new();
    fn search(
        k: usize,
        ok: &[Vec<bool>],
        used: &mut [bool],
        chosen: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if k == ok.len() {
            found.push(chosen.clone());
            return;
        }
        for j in 0..used.len() {
            if ok[k][j] && !used[j] {
                used[j] = true;
                chosen.push(j);
                search(k + 1, ok, used, chosen, found);
                chosen.pop();
                used[j] = false;
            }
        }
    }
    let mut raw = Vec::new();
    search(0, &ok, &mut used, &mut chosen, &mut raw);
    for assignment in raw {
        found.push(
            assignment
                .into_iter()
                .enumerate()
                .map(|(i, j)| (left[i].clone(), right[j].clone()))
                .collect(),
        );
    }
    Ok(found)
}

/// The unique multiplicity-one bijection; an error if there is not exactly one.
pub fn unique_bijection(m: usize) -> Result<Vec<(Partition, Partition)>> {
    let mut all = multiplicity_one_matchings(m)?;
    if all.len() != 1 {
        return Err(Error::UniquenessViolation {
            m,
            count: all.len(),
        });
    }
    Ok(all.pop().expect("exactly one"))
}

/// Multiplicities of the family members in the representation attached to
/// one non-sign irreducible `rho`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CxRow {
    pub m: usize,
    pub rho: Partition,
    /// The Young content matched to `rho`.
    pub matched: Partition,
    /// `(ρ', K(ρ', matched))` over the non-sign irreducibles, largest first.
    pub multiplicities: Vec<(Partition, u64)>,
}

impl CxRow {
    pub fn vector(&self) -> Vec<u64> {
        self.multiplicities.iter().map(|(_, k)| *k).collect()
    }

    pub fn multiplicity(&self, rho: &Partition) -> Option<u64> {
        self.multiplicities
            .iter()
            .find(|(p, _)| p == rho)
            .map(|(_, k)| *k)
    }
}

pub fn cx_multiplicities(m: usize) -> Result<Vec<CxRow>> {
    let bijection = unique_bijection(m)?;
    let irreducibles = non_sign_irreducibles(m);
    bijection
        .into_iter()
        .map(|(rho, matched)| {
            let multiplicities = irreducibles
                .iter()
                .map(|r| Ok((r.clone(), kostka(r, &matched)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(CxRow {
                m,
                rho,
                matched,
                multiplicities,
            })
        })
        .collect()
}

/// JSON form of the `S_m` data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KostkaExport {
    pub m: usize,
    pub table: BTreeMap<String, BTreeMap<String, u64>>,
    pub bijection: BTreeMap<String, String>,
    pub cx_rows: Vec<CxRowExport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CxRowExport {
    pub rho: String,
    pub matched: String,
    pub multiplicities: BTreeMap<String, u64>,
}

pub fn kostka_export(m: usize) -> Result<KostkaExport> {
    let table = kostka_table(m)?
        .into_iter()
        .map(|(l, row)| {
            (
                l.to_string(),
                row.into_iter().map(|(mu, k)| (mu.to_string(), k)).collect(),
            )
        })
        .collect();
    let bijection = unique_bijection(m)?
        .into_iter()
        .map(|(l, mu)| (l.to_string(), mu.to_string()))
        .collect();
    let cx_rows = cx_multiplicities(m)?
        .into_iter()
        .map(|row| CxRowExport {
            rho: row.rho.to_string(),
            matched: row.matched.to_string(),
            multiplicities: row
                .multiplicities
                .into_iter()
                .map(|(p, k)| (p.to_string(), k))
                .collect(),
        })
        .collect();
    Ok(KostkaExport {
        m,
        table,
        bijection,
        cx_rows,
    })
}
