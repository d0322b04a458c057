//! The recursively defined family of isotropic subspaces.
//!
//! For `d = 0` the family is `{0}`. For `d >= 1` it is `{0}` together with
//! every preimage `pi_i^{-1}(X')`, where `i` ranges over `[1, 2d]` and `X'`
//! over the family of the quotient model (which is the family for `d - 1`).

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{self, Interval, QuotientModel, Vector};
use crate::subspace::{Subspace, SubspaceRecord};

/// Every member of the family for one `d`, sorted by dimension and then by
/// basis bitstrings.
#[derive(Clone, Debug)]
pub struct Family {
    d: usize,
    members: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
}

impl Family {
    fn from_set(d: usize, set: BTreeSet<Subspace>) -> Self {
        let members: Vec<Subspace> = set.into_iter().collect();
        let index = members
            .iter()
            .enumerate()
            .map(|(k, x)| (x.clone(), k))
            .collect();
        Family { d, members, index }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Subspace) -> bool {
        self.index.contains_key(x)
    }

    /// Position of `x` in [`Family::members`].
    pub fn position(&self, x: &Subspace) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Members containing `e_i`, i.e. the preimages through pivot `i`.
    pub fn through_pivot(&self, i: usize) -> impl Iterator<Item = &Subspace> {
        self.members
            .iter()
            .filter(move |x| x.contains_basis_vector(i))
    }

    pub fn to_export(&self) -> FamilyExport {
        FamilyExport {
            d: self.d,
            count: self.members.len(),
            subspaces: self.members.iter().map(Subspace::to_record).collect(),
        }
    }
}

/// JSON export of one enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyExport {
    pub d: usize,
    pub count: usize,
    pub subspaces: Vec<SubspaceRecord>,
}

/// Families for every `d` up to some bound, built bottom-up so that each
/// level is lifted from the one below exactly once.
#[derive(Clone, Debug)]
pub struct FamilyTower {
    levels: Vec<Family>,
}

impl FamilyTower {
    pub fn build(d_max: usize) -> Result<Self> {
        space::check_d(d_max)?;
        let mut levels = vec![Family::from_set(0, BTreeSet::from([Subspace::zero(0)]))];
        for d in 1..=d_max {
            let next = lift_level(&levels[d - 1], d);
            levels.push(next);
        }
        Ok(FamilyTower { levels })
    }

    pub fn d_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, d: usize) -> Option<&Family> {
        self.levels.get(d)
    }

    pub fn levels(&self) -> &[Family] {
        &self.levels
    }
}

fn lift_level(below: &Family, d: usize) -> Family {
    let lifted: Vec<BTreeSet<Subspace>> = QuotientModel::all(d)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|q| {
            below
                .members
                .iter()
                .map(|child| Subspace::lift(child, &q).expect("child model has d - 1"))
                .collect()
        })
        .collect();
    let mut set = BTreeSet::from([Subspace::zero(d)]);
    for part in lifted {
        set.extend(part);
    }
    Family::from_set(d, set)
}

pub fn enumerate_family(d: usize) -> Result<Family> {
    let mut tower = FamilyTower::build(d)?;
    Ok(tower.levels.pop().expect("tower has level d"))
}

/// Odd intervals whose interval vector lies in `x`.
pub fn alpha(x: &Subspace) -> Vec<Interval> {
    x.alpha().to_vec()
}

pub fn is_in_family(x: &Subspace, d: usize) -> Result<bool> {
    if x.d() != d {
        return Err(Error::DimensionMismatch {
            left: x.d(),
            right: d,
        });
    }
    if x.is_zero() {
        return Ok(true);
    }
    Ok(enumerate_family(d)?.contains(x))
}

/// `pi_i(X)` in the standard model for `d - 1`; requires `e_i` in `X`.
pub fn project_member(x: &Subspace, i: usize) -> Result<Subspace> {
    let q = QuotientModel::new(x.d(), i)?;
    if !x.contains_basis_vector(i) {
        return Err(Error::PivotNotInSubspace { pivot: i });
    }
    x.project(&q)
}

/// A member of dimension `d` containing `x`.
///
/// Follows the recursion through the smallest `i` with `e_i` in `x`; the
/// zero subspace extends to the span of the odd-indexed basis vectors.
pub fn extend_to_lagrangian(x: &Subspace) -> Result<Subspace> {
    let d = x.d();
    if d == 0 {
        return Ok(x.clone());
    }
    if x.is_zero() {
        let odd: Vec<usize> = (1..=2 * d).step_by(2).collect();
        return Subspace::coordinate(d, &odd);
    }
    let i = *x
        .basis_vectors_contained()
        .first()
        .ok_or(Error::NotInFamily { d })?;
    let q = QuotientModel::new(d, i)?;
    let child = x.project(&q)?;
    let extended = extend_to_lagrangian(&child)?;
    Subspace::lift(&extended, &q)
}

/// Mask of the coordinates `e_i` with `i = parity (mod 2)`.
pub fn parity_mask(d: usize, parity: u8) -> u64 {
    // e_1 sits at bit 0, so odd indices are the even bit positions.
    let all = space::full_mask(d);
    let odd_indices = 0x5555_5555_5555_5555u64 & all;
    if parity % 2 == 1 {
        odd_indices
    } else {
        all & !odd_indices
    }
}

/// `(X ∩ V^0, X ∩ V^1)` where `V^δ` is spanned by the `e_i` with `i ≡ δ mod 2`.
pub fn parity_split(x: &Subspace) -> (Subspace, Subspace) {
    let d = x.d();
    (
        x.intersect_coordinate(parity_mask(d, 0)),
        x.intersect_coordinate(parity_mask(d, 1)),
    )
}

/// `{ v in V^δ : (v, y) = 0 for all y in other }`.
pub fn perp_in_parity(other: &Subspace, parity: u8) -> Subspace {
    let d = other.d();
    let functionals: Vec<u64> = other
        .raw_rows()
        .iter()
        .map(|&r| space::pairing_functional(r, d))
        .collect();
    let rows = crate::gf2::nullspace(&functionals, parity_mask(d, parity));
    Subspace::span(
        d,
        &rows
            .iter()
            .map(|&b| Vector::from_bits_unchecked(d, b))
            .collect::<Vec<_>>(),
    )
    .expect("nullspace rows live in V_d")
}
