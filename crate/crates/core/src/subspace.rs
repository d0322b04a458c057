use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2;
use crate::space::{self, intervals, Interval, QuotientModel, Vector};

/// A subspace of `V_d` in canonical form.
///
/// The basis is the reduced row echelon form (pivot = smallest index with a
/// nonzero coefficient), so two subspaces are equal exactly when their
/// stored rows are. The set of odd intervals whose interval vector lies in
/// the subspace is computed once at construction.
#[derive(Clone)]
pub struct Subspace {
    d: usize,
    rows: Vec<u64>,
    alpha: Vec<Interval>,
}

impl Subspace {
    pub fn zero(d: usize) -> Self {
        Subspace {
            d,
            rows: Vec::new(),
            alpha: Vec::new(),
        }
    }

    pub fn span(d: usize, vectors: &[Vector]) -> Result<Self> {
        space::check_d(d)?;
        for v in vectors {
            if v.d() != d {
                return Err(Error::DimensionMismatch {
                    left: v.d(),
                    right: d,
                });
            }
        }
        let raw: Vec<u64> = vectors.iter().map(Vector::bits).collect();
        Ok(Self::from_raw(d, &raw))
    }

    pub(crate) fn from_raw(d: usize, rows: &[u64]) -> Self {
        let rows = gf2::rref(rows);
        let alpha = intervals(d)
            .filter(|i| gf2::reduce(&rows, i.mask()) == 0)
            .collect();
        Subspace { d, rows, alpha }
    }

    /// Span of the given basis vectors `e_i`.
    pub fn coordinate(d: usize, indices: &[usize]) -> Result<Self> {
        let vs = indices
            .iter()
            .map(|&i| Vector::basis(d, i))
            .collect::<Result<Vec<_>>>()?;
        Self::span(d, &vs)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub(crate) fn raw_rows(&self) -> &[u64] {
        &self.rows
    }

    /// Canonical basis, sorted by pivot.
    pub fn basis(&self) -> Vec<Vector> {
        self.rows
            .iter()
            .map(|&r| Vector::from_bits_unchecked(self.d, r))
            .collect()
    }

    /// Odd intervals whose interval vector lies in the subspace.
    pub fn alpha(&self) -> &[Interval] {
        &self.alpha
    }

    pub fn contains(&self, v: &Vector) -> bool {
        v.d() == self.d && self.contains_bits(v.bits())
    }

    pub(crate) fn contains_bits(&self, bits: u64) -> bool {
        gf2::reduce(&self.rows, bits) == 0
    }

    pub fn contains_basis_vector(&self, i: usize) -> bool {
        i >= 1 && i <= 2 * self.d && self.contains_bits(1 << (i - 1))
    }

    /// Indices `i` with `e_i` in the subspace, ascending.
    pub fn basis_vectors_contained(&self) -> Vec<usize> {
        (1..=2 * self.d)
            .filter(|&i| self.contains_basis_vector(i))
            .collect()
    }

    /// All `2^dim` elements, in no particular order.
    pub fn elements(&self) -> Vec<Vector> {
        let mut out = vec![0u64];
        for &r in &self.rows {
            let extra: Vec<u64> = out.iter().map(|x| x ^ r).collect();
            out.extend(extra);
        }
        out.into_iter()
            .map(|b| Vector::from_bits_unchecked(self.d, b))
            .collect()
    }

    pub fn is_isotropic(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(k, &x)| self.rows[k + 1..].iter().all(|&y| !space::pair_bits(x, y)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.d == other.d && self.rows.iter().all(|&r| other.contains_bits(r))
    }

    /// `pi_i(X)` for a subspace inside `e_i^perp`.
    pub fn project(&self, q: &QuotientModel) -> Result<Subspace> {
        if self.d != q.parent_d() {
            return Err(Error::DimensionMismatch {
                left: self.d,
                right: q.parent_d(),
            });
        }
        let e = q.kernel();
        if let Some(&r) = self.rows.iter().find(|&&r| space::pair_bits(r, e.bits())) {
            return Err(Error::NotPerpendicular {
                pivot: q.pivot(),
                vector: Vector::from_bits_unchecked(self.d, r).to_bitstring(),
            });
        }
        let rows: Vec<u64> = self.rows.iter().map(|&r| q.project_bits(r)).collect();
        Ok(Subspace::from_raw(q.child_d(), &rows))
    }

    /// The full preimage `pi_i^{-1}(X')` of a child subspace.
    pub fn lift(child: &Subspace, q: &QuotientModel) -> Result<Subspace> {
        if child.d != q.child_d() {
            return Err(Error::DimensionMismatch {
                left: child.d,
                right: q.child_d(),
            });
        }
        let mut rows: Vec<u64> = child.rows.iter().map(|&r| q.lift_bits(r)).collect();
        rows.push(q.kernel().bits());
        Ok(Subspace::from_raw(q.parent_d(), &rows))
    }

    /// Intersection with the span of the `e_i`, `i` in `mask` (raw bits).
    pub(crate) fn intersect_coordinate(&self, mask: u64) -> Subspace {
        Subspace::from_raw(self.d, &gf2::intersect_coordinate(&self.rows, mask))
    }

    fn sort_key(&self) -> (usize, Vec<u64>) {
        (
            self.rows.len(),
            self.rows
                .iter()
                .map(|&r| space::lex_key(r, self.d))
                .collect(),
        )
    }

    pub fn to_record(&self) -> SubspaceRecord {
        SubspaceRecord {
            basis: self.basis().iter().map(Vector::to_bitstring).collect(),
            alpha: self.alpha.iter().map(Interval::to_string).collect(),
        }
    }

    /// Parse a JSON record back into a subspace; `d` comes from the bitstrings.
    pub fn from_record(d: usize, record: &SubspaceRecord) -> Result<Subspace> {
        let vs = record
            .basis
            .iter()
            .map(|s| s.parse::<Vector>())
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(d, &vs)
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.rows == other.rows
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.d.hash(state);
        self.rows.hash(state);
    }
}

/// Ordered by dimension, then by the basis bitstrings.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.d
            .cmp(&other.d)
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (k, v) in self.basis().iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(">")
    }
}

/// JSON form of a subspace: canonical basis bitstrings and its intervals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceRecord {
    pub basis: Vec<String>,
    pub alpha: Vec<String>,
}
