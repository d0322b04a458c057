//! Interval counts, the parity map `Phi`, and the union `Ṽ` of the family.
//!
//! For a member `X`, `f_X(j)` counts the intervals of `alpha(X)` containing
//! `j`, and `phi_X(j) = f_X(j)(f_X(j)+1)/2 mod 2`. `Phi(X)` is the vector
//! with coordinates `phi_X`. `Phi` is a bijection from the family onto `Ṽ`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{enumerate_family, Family};
use crate::space::{self, Vector};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub d: usize,
    /// `f[j - 1]` is the number of intervals of `alpha(X)` containing `j`.
    pub f: Vec<u32>,
    pub phi: Vec<bool>,
}

/// `n(n+1)/2 mod 2`, i.e. 1 iff `n ≡ 1, 2 (mod 4)`.
pub fn triangular_parity(n: u32) -> bool {
    matches!(n % 4, 1 | 2)
}

pub fn profile(x: &Subspace) -> Profile {
    let d = x.d();
    let mut f = vec![0u32; 2 * d];
    for interval in x.alpha() {
        for j in interval.start()..=interval.end() {
            f[j - 1] += 1;
        }
    }
    let phi = f.iter().map(|&n| triangular_parity(n)).collect();
    Profile { d, f, phi }
}

pub fn phi(x: &Subspace) -> Vector {
    let p = profile(x);
    let bits = p
        .phi
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0u64, |acc, (k, _)| acc | 1 << k);
    Vector::from_bits_unchecked(x.d(), bits)
}

/// The union of all members of the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeV {
    pub d: usize,
    pub elements: BTreeSet<Vector>,
}

impl TildeV {
    pub fn from_family(family: &Family) -> Self {
        let elements = family
            .members()
            .iter()
            .flat_map(Subspace::elements)
            .collect();
        TildeV {
            d: family.d(),
            elements,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.elements.contains(v)
    }
}

pub fn tilde_v(d: usize) -> Result<TildeV> {
    Ok(TildeV::from_family(&enumerate_family(d)?))
}

/// Breadth-first closure of `{0}` under the moves `x -> x + e_j` with
/// `(e_j, x) = 0`.
#[derive(Clone, Debug)]
pub struct Reachability {
    pub d: usize,
    /// Minimal number of moves from each reachable vector to 0.
    pub distance: BTreeMap<Vector, usize>,
    /// For each nonzero reachable `x`, a neighbour `x + e_j` one step closer
    /// to 0, together with `j`.
    pub parent: BTreeMap<Vector, (Vector, usize)>,
}

impl Reachability {
    pub fn set(&self) -> BTreeSet<Vector> {
        self.distance.keys().copied().collect()
    }

    pub fn distance_to_zero(&self, x: &Vector) -> Option<usize> {
        self.distance.get(x).copied()
    }
}

pub fn reachable_set(d: usize) -> Result<Reachability> {
    space::check_d(d)?;
    let zero = Vector::zero(d);
    let mut distance = BTreeMap::from([(zero, 0usize)]);
    let mut parent = BTreeMap::new();
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        let n = distance[&x];
        for j in 1..=2 * d {
            let ej = 1u64 << (j - 1);
            if space::pair_bits(ej, x.bits()) {
                continue;
            }
            let y = Vector::from_bits_unchecked(d, x.bits() ^ ej);
            if let Entry::Vacant(slot) = distance.entry(y) {
                slot.insert(n + 1);
                parent.insert(y, (x, j));
                queue.push_back(y);
            }
        }
    }
    Ok(Reachability {
        d,
        distance,
        parent,
    })
}

/// `Phi` tabulated over a whole family, with its inverse.
#[derive(Clone, Debug)]
pub struct PhiTable {
    pub d: usize,
    /// `images[k] = Phi(family.members()[k])`.
    pub images: Vec<Vector>,
    inverse: HashMap<Vector, usize>,
    members: Vec<Subspace>,
}

impl PhiTable {
    pub fn new(family: &Family) -> Self {
        let images: Vec<Vector> = family.members().iter().map(phi).collect();
        let mut inverse = HashMap::with_capacity(images.len());
        for (k, v) in images.iter().enumerate() {
            inverse.entry(*v).or_insert(k);
        }
        PhiTable {
            d: family.d(),
            images,
            inverse,
            members: family.members().to_vec(),
        }
    }

    /// Pairs of members with the same image.
    pub fn collisions(&self) -> Vec<(usize, usize)> {
        self.images
            .iter()
            .enumerate()
            .filter_map(|(k, v)| {
                let first = self.inverse[v];
                (first != k).then_some((first, k))
            })
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        self.inverse.len() == self.images.len()
    }

    pub fn image(&self) -> BTreeSet<Vector> {
        self.inverse.keys().copied().collect()
    }

    pub fn inverse(&self, v: &Vector) -> Result<&Subspace> {
        self.inverse
            .get(v)
            .map(|&k| &self.members[k])
            .ok_or_else(|| Error::NotInRange {
                vector: v.to_bitstring(),
            })
    }

    pub fn to_export(&self, tilde_v_size: usize) -> PhiExport {
        PhiExport {
            d: self.d,
            pairs: self
                .members
                .iter()
                .zip(&self.images)
                .map(|(x, v)| PhiPair {
                    subspace: x.basis().iter().map(Vector::to_bitstring).collect(),
                    phi: v.to_bitstring(),
                })
                .collect(),
            tilde_v_size,
        }
    }
}

/// The unique member `X` with `Phi(X) = v`.
pub fn phi_inverse(v: &Vector, d: usize) -> Result<Subspace> {
    if v.d() != d {
        return Err(Error::DimensionMismatch {
            left: v.d(),
            right: d,
        });
    }
    let family = enumerate_family(d)?;
    PhiTable::new(&family).inverse(v).cloned()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiPair {
    pub subspace: Vec<String>,
    pub phi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiExport {
    pub d: usize,
    pub pairs: Vec<PhiPair>,
    pub tilde_v_size: usize,
}
