//! The based symplectic space `V = F2^{2d}`.
//!
//! A [`Vector`] is stored as a bitmask: bit `k` holds the coefficient of the
//! basis vector `e_{k+1}`. The form pairs `e_i` and `e_j` to 1 exactly when
//! `|i - j| = 1`, which makes it nonsingular on every `V`.
//!
//! A [`QuotientModel`] describes `e_i^perp / F2 e_i` re-expressed in the
//! standard model of dimension `2(d-1)`: the induced basis is
//!
//! * `e'_k = [e_k]` for `k <= i - 2`,
//! * `e'_{i-1} = [e_{i-1} + e_{i+1}]` when `1 < i < 2d`,
//! * `e'_k = [e_{k+2}]` for `k >= i`.
//!
//! With this basis the induced form is again the adjacency form, so every
//! recursion in the crate works on a single kind of space.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported `d`; vectors of `V` must fit in a `u64`.
pub const MAX_D: usize = 31;

pub(crate) fn full_mask(d: usize) -> u64 {
    if d == 0 {
        0
    } else {
        (1u64 << (2 * d)) - 1
    }
}

/// Symplectic pairing of two raw coordinate masks.
#[inline]
pub(crate) fn pair_bits(x: u64, y: u64) -> bool {
    ((x & ((y >> 1) ^ (y << 1))).count_ones() & 1) == 1
}

/// The linear functional `x -> (x, y)` as a mask to be and-ed with `x`.
#[inline]
pub(crate) fn pairing_functional(y: u64, d: usize) -> u64 {
    ((y >> 1) ^ (y << 1)) & full_mask(d)
}

pub(crate) fn check_d(d: usize) -> Result<()> {
    if d > MAX_D {
        Err(Error::DimensionTooLarge { d, max: MAX_D })
    } else {
        Ok(())
    }
}

/// An element of `V = F2^{2d}` written in the distinguished basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vector {
    bits: u64,
    d: usize,
}

impl Vector {
    pub fn zero(d: usize) -> Self {
        Vector { bits: 0, d }
    }

    /// The basis vector `e_i`, `i` in `1..=2d`.
    pub fn basis(d: usize, i: usize) -> Result<Self> {
        check_d(d)?;
        if i == 0 || i > 2 * d {
            return Err(Error::IndexOutOfRange { index: i, d });
        }
        Ok(Vector {
            bits: 1 << (i - 1),
            d,
        })
    }

    /// Sum of the basis vectors with the given (1-based) indices.
    pub fn from_indices(d: usize, indices: &[usize]) -> Result<Self> {
        let mut v = Vector::zero(d);
        for &i in indices {
            v += Vector::basis(d, i)?;
        }
        Ok(v)
    }

    pub fn from_bits(d: usize, bits: u64) -> Result<Self> {
        check_d(d)?;
        if bits & !full_mask(d) != 0 {
            return Err(Error::BitsOutOfRange { bits, d });
        }
        Ok(Vector { bits, d })
    }

    pub(crate) fn from_bits_unchecked(d: usize, bits: u64) -> Self {
        debug_assert_eq!(bits & !full_mask(d), 0);
        Vector { bits, d }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Coefficient of `e_i`.
    pub fn coord(&self, i: usize) -> bool {
        i >= 1 && i <= 2 * self.d && (self.bits >> (i - 1)) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Indices `i` with a nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=2 * self.d).filter(move |&i| self.coord(i))
    }

    pub fn pairing(&self, other: &Vector) -> Result<bool> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                left: self.d,
                right: other.d,
            });
        }
        Ok(pair_bits(self.bits, other.bits))
    }

    /// Bitstring of length `2d`; character `i - 1` is the coefficient of `e_i`.
    pub fn to_bitstring(&self) -> String {
        (1..=2 * self.d)
            .map(|i| if self.coord(i) { '1' } else { '0' })
            .collect()
    }

    /// Key whose natural order is the lexicographic order of bitstrings.
    pub(crate) fn lex_key(&self) -> u64 {
        lex_key(self.bits, self.d)
    }
}

pub(crate) fn lex_key(bits: u64, d: usize) -> u64 {
    if d == 0 {
        0
    } else {
        bits.reverse_bits() >> (64 - 2 * d)
    }
}

impl Ord for Vector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.d
            .cmp(&other.d)
            .then_with(|| self.lex_key().cmp(&other.lex_key()))
    }
}

impl PartialOrd for Vector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Vector {
    type Output = Vector;

    fn add(self, rhs: Vector) -> Vector {
        assert_eq!(self.d, rhs.d, "adding vectors of different spaces");
        Vector {
            bits: self.bits ^ rhs.bits,
            d: self.d,
        }
    }
}

impl AddAssign for Vector {
    fn add_assign(&mut self, rhs: Vector) {
        *self = *self + rhs;
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector({})", self.to_bitstring())
    }
}

impl FromStr for Vector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.len().is_multiple_of(2) {
            return Err(Error::Parse(format!("bitstring {s:?} has odd length")));
        }
        let d = s.len() / 2;
        check_d(d)?;
        let mut bits = 0u64;
        for (k, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << k,
                _ => return Err(Error::Parse(format!("bad character {c:?} in bitstring"))),
            }
        }
        Ok(Vector { bits, d })
    }
}

/// An interval `[a, b]` of odd cardinality inside `[1, 2d]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    a: usize,
    b: usize,
}

impl Interval {
    pub fn new(a: usize, b: usize, d: usize) -> Result<Self> {
        if a == 0 || a > b || b > 2 * d || (b - a) % 2 == 1 {
            return Err(Error::InvalidInterval { a, b, d });
        }
        Ok(Interval { a, b })
    }

    pub fn start(&self) -> usize {
        self.a
    }

    pub fn end(&self) -> usize {
        self.b
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.b - self.a + 1
    }

    pub fn contains(&self, j: usize) -> bool {
        self.a <= j && j <= self.b
    }

    pub(crate) fn mask(&self) -> u64 {
        let width = self.b - self.a + 1;
        let ones = if width == 64 {
            u64::MAX
        } else {
            (1u64 << width) - 1
        };
        ones << (self.a - 1)
    }

    /// The interval vector `e_a + e_{a+1} + ... + e_b` of `V_d`.
    pub fn vector(&self, d: usize) -> Result<Vector> {
        if self.b > 2 * d {
            return Err(Error::InvalidInterval {
                a: self.a,
                b: self.b,
                d,
            });
        }
        Ok(Vector::from_bits_unchecked(d, self.mask()))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Interval {
    type Err = Error;

    /// Parses `"[a,b]"`. Parity and range are checked by [`Interval::new`]
    /// once `d` is known; here only `a <= b` with odd length is enforced.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("interval {s:?} is not of the form [a,b]")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("interval {s:?} is missing a comma")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("interval endpoint {t:?}: {e}")))
        };
        let (a, b) = (parse(a)?, parse(b)?);
        Interval::new(a, b, b.div_ceil(2))
    }
}

/// Every odd interval of `[1, 2d]`, ordered by `(a, b)`.
pub fn intervals(d: usize) -> impl Iterator<Item = Interval> {
    (1..=2 * d).flat_map(move |a| (a..=2 * d).step_by(2).map(move |b| Interval { a, b }))
}

pub fn interval_vector(interval: Interval, d: usize) -> Result<Vector> {
    interval.vector(d)
}

/// `e_i^perp / F2 e_i` expressed in the standard model of dimension `2(d-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuotientModel {
    parent_d: usize,
    pivot: usize,
}

impl QuotientModel {
    pub fn new(parent_d: usize, pivot: usize) -> Result<Self> {
        check_d(parent_d)?;
        if parent_d == 0 || pivot == 0 || pivot > 2 * parent_d {
            return Err(Error::IndexOutOfRange {
                index: pivot,
                d: parent_d,
            });
        }
        Ok(QuotientModel { parent_d, pivot })
    }

    /// All `2d` quotient models of `V_d`.
    pub fn all(parent_d: usize) -> impl Iterator<Item = QuotientModel> {
        (1..=2 * parent_d).map(move |pivot| QuotientModel { parent_d, pivot })
    }

    pub fn parent_d(&self) -> usize {
        self.parent_d
    }

    pub fn child_d(&self) -> usize {
        self.parent_d - 1
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    /// The kernel generator `e_i`.
    pub fn kernel(&self) -> Vector {
        Vector::from_bits_unchecked(self.parent_d, 1 << (self.pivot - 1))
    }

    pub fn is_perpendicular(&self, x: &Vector) -> bool {
        !pair_bits(x.bits, 1 << (self.pivot - 1))
    }

    fn check_parent(&self, x: &Vector) -> Result<()> {
        if x.d != self.parent_d {
            return Err(Error::DimensionMismatch {
                left: x.d,
                right: self.parent_d,
            });
        }
        Ok(())
    }

    fn check_child(&self, y: &Vector) -> Result<()> {
        if y.d != self.child_d() {
            return Err(Error::DimensionMismatch {
                left: y.d,
                right: self.child_d(),
            });
        }
        Ok(())
    }

    /// Raw projection; `x` must already be perpendicular to `e_i`.
    pub(crate) fn project_bits(&self, x: u64) -> u64 {
        let i = self.pivot;
        // Coordinates j <= i-1 keep their position (for j = i-1 the perp
        // condition forces x_{i-1} = x_{i+1}, which is the coefficient of the
        // merged basis vector); j >= i+2 shift down by two; e_i is dropped.
        let low = x & ((1u64 << (i - 1)) - 1);
        let high = if i + 1 >= 64 {
            0
        } else {
            (x >> (i + 1)) << (i - 1)
        };
        (low | high) & full_mask(self.child_d())
    }

    /// Canonical preimage of a child vector: the one with zero `e_i` coefficient.
    pub(crate) fn lift_bits(&self, y: u64) -> u64 {
        let i = self.pivot;
        let mut x = 0u64;
        let mut rest = y;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            x ^= if k + 2 <= i {
                1 << (k - 1)
            } else if k + 1 == i {
                (1 << (i - 2)) | (1 << i)
            } else {
                1 << (k + 1)
            };
        }
        x
    }

    /// `pi_i(x)` in the induced basis.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        self.check_parent(x)?;
        if !self.is_perpendicular(x) {
            return Err(Error::NotPerpendicular {
                pivot: self.pivot,
                vector: x.to_bitstring(),
            });
        }
        Ok(Vector::from_bits_unchecked(
            self.child_d(),
            self.project_bits(x.bits),
        ))
    }

    /// The preimage of `y` with zero coefficient on `e_i`; the full fiber is
    /// this vector and its sum with `e_i`.
    pub fn lift(&self, y: &Vector) -> Result<Vector> {
        self.check_child(y)?;
        Ok(Vector::from_bits_unchecked(
            self.parent_d,
            self.lift_bits(y.bits),
        ))
    }

    /// The induced basis vector `e'_k`, as its canonical representative in `V`.
    pub fn induced_basis(&self, k: usize) -> Result<Vector> {
        let y = Vector::basis(self.child_d(), k)?;
        self.lift(&y)
    }

    /// Fiber of `pi_i` over the child interval vector of `child`. The first
    /// element of the pair is the interval vector in the fiber.
    pub fn lift_interval(&self, child: Interval) -> Result<(Vector, Vector)> {
        let dc = self.child_d();
        let (a, b) = (child.start(), child.end());
        if b > 2 * dc {
            return Err(Error::InvalidInterval { a, b, d: dc });
        }
        let i = self.pivot;
        let parent = if a < i && i < b + 2 {
            Interval { a, b: b + 2 }
        } else if i <= a {
            Interval { a: a + 2, b: b + 2 }
        } else {
            Interval { a, b }
        };
        let v = parent.vector(self.parent_d)?;
        Ok((v, v + self.kernel()))
    }

    /// Image of a perpendicular interval vector, by the four-case rule.
    pub fn project_interval(&self, interval: Interval) -> Result<Vector> {
        let (a, b) = (interval.start(), interval.end());
        let v = interval.vector(self.parent_d)?;
        if !self.is_perpendicular(&v) {
            return Err(Error::NotPerpendicular {
                pivot: self.pivot,
                vector: v.to_bitstring(),
            });
        }
        let dc = self.child_d();
        let i = self.pivot;
        let image = if a == b && a == i {
            return Ok(Vector::zero(dc));
        } else if a < i && i < b {
            Interval { a, b: b - 2 }
        } else if i + 1 < a {
            Interval { a: a - 2, b: b - 2 }
        } else {
            // i > b + 1
            Interval { a, b }
        };
        image.vector(dc)
    }
}

/// Gram matrix of the basis, as row masks.
pub fn gram_rows(d: usize) -> Vec<u64> {
    (0..2 * d).map(|k| pairing_functional(1 << k, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2;
    use proptest::prelude::*;

    fn e(d: usize, i: usize) -> Vector {
        Vector::basis(d, i).unwrap()
    }

    fn v(d: usize, idx: &[usize]) -> Vector {
        Vector::from_indices(d, idx).unwrap()
    }

    fn iv(a: usize, b: usize, d: usize) -> Interval {
        Interval::new(a, b, d).unwrap()
    }

    #[test]
    fn pairing_examples() {
        assert!(e(2, 1).pairing(&e(2, 2)).unwrap());
        assert!(!e(2, 1).pairing(&e(2, 3)).unwrap());
        for bits in 0..16 {
            let x = Vector::from_bits(2, bits).unwrap();
            assert!(!x.pairing(&x).unwrap());
        }
        assert!(matches!(
            e(2, 1).pairing(&e(1, 1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gram_matrix_is_nonsingular() {
        for d in 0..=8 {
            assert_eq!(gf2::rank(&gram_rows(d)), 2 * d, "d = {d}");
        }
    }

    #[test]
    fn interval_vectors() {
        assert_eq!(iv(1, 3, 2).vector(2).unwrap(), v(2, &[1, 2, 3]));
        assert_eq!(iv(2, 2, 2).vector(2).unwrap(), e(2, 2));
        assert!(matches!(
            Interval::new(1, 2, 2),
            Err(Error::InvalidInterval { .. })
        ));
        assert!(Interval::new(3, 5, 2).is_err());
        assert!(Interval::new(0, 0, 2).is_err());
        assert_eq!(intervals(2).count(), 6);
        assert_eq!(intervals(0).count(), 0);
    }

    #[test]
    fn interval_parsing() {
        let i: Interval = "[2,4]".parse().unwrap();
        assert_eq!(i, iv(2, 4, 2));
        assert_eq!(i.to_string(), "[2,4]");
        assert!("[1,2]".parse::<Interval>().is_err());
        assert!("1,3".parse::<Interval>().is_err());
    }

    #[test]
    fn bitstrings() {
        let x = v(2, &[1, 3]);
        assert_eq!(x.to_bitstring(), "1010");
        assert_eq!("1010".parse::<Vector>().unwrap(), x);
        assert!("101".parse::<Vector>().is_err());
        assert_eq!("".parse::<Vector>().unwrap(), Vector::zero(0));
    }

    #[test]
    fn project_examples() {
        let q2 = QuotientModel::new(2, 2).unwrap();
        assert_eq!(q2.project(&e(2, 4)).unwrap(), e(1, 2));
        assert_eq!(q2.project(&v(2, &[1, 3])).unwrap(), e(1, 1));
        let q1 = QuotientModel::new(2, 1).unwrap();
        assert_eq!(q1.project(&e(2, 3)).unwrap(), e(1, 1));
        assert!(matches!(
            q1.project(&e(2, 2)),
            Err(Error::NotPerpendicular { .. })
        ));
    }

    #[test]
    fn lift_interval_examples() {
        let i11 = iv(1, 1, 1);
        let q = |i| QuotientModel::new(2, i).unwrap();
        assert_eq!(
            q(2).lift_interval(i11).unwrap(),
            (v(2, &[1, 2, 3]), v(2, &[1, 3]))
        );
        assert_eq!(q(1).lift_interval(i11).unwrap(), (e(2, 3), v(2, &[1, 3])));
        assert_eq!(q(3).lift_interval(i11).unwrap(), (e(2, 1), v(2, &[1, 3])));
    }

    #[test]
    fn project_interval_examples() {
        let q = |i| QuotientModel::new(2, i).unwrap();
        assert_eq!(q(2).project_interval(iv(1, 3, 2)).unwrap(), e(1, 1));
        assert_eq!(q(4).project_interval(iv(1, 1, 2)).unwrap(), e(1, 1));
        assert_eq!(q(2).project_interval(iv(2, 2, 2)).unwrap(), Vector::zero(1));
        assert!(q(2).project_interval(iv(1, 1, 2)).is_err());
    }

    #[test]
    fn induced_basis_is_standard_model() {
        for d in 1..=6 {
            for q in QuotientModel::all(d) {
                let n = 2 * (d - 1);
                for k in 1..=n {
                    let ek = q.induced_basis(k).unwrap();
                    assert!(q.is_perpendicular(&ek));
                    assert_eq!(q.project(&ek).unwrap(), e(d - 1, k));
                    for l in 1..=n {
                        let el = q.induced_basis(l).unwrap();
                        let expect = k.abs_diff(l) == 1;
                        assert_eq!(ek.pairing(&el).unwrap(), expect, "{q:?} {k} {l}");
                    }
                }
            }
        }
    }

    #[test]
    fn interval_fibers_round_trip() {
        for d in 2..=6 {
            for q in QuotientModel::all(d) {
                for child in intervals(d - 1) {
                    let target = child.vector(d - 1).unwrap();
                    let (first, second) = q.lift_interval(child).unwrap();
                    // exactly one of the two is an interval vector
                    let is_interval = |x: &Vector| intervals(d).any(|i| i.vector(d).unwrap() == *x);
                    assert!(is_interval(&first));
                    assert!(!is_interval(&second));
                    for x in [first, second] {
                        assert_eq!(q.project(&x).unwrap(), target);
                    }
                    let parent = intervals(d)
                        .find(|i| i.vector(d).unwrap() == first)
                        .unwrap();
                    assert_eq!(q.project_interval(parent).unwrap(), target);
                }
            }
        }
    }

    #[test]
    fn project_interval_agrees_with_project() {
        for d in 1..=6 {
            for q in QuotientModel::all(d) {
                for i in intervals(d) {
                    let x = i.vector(d).unwrap();
                    match q.project_interval(i) {
                        Ok(y) => assert_eq!(q.project(&x).unwrap(), y),
                        Err(_) => assert!(!q.is_perpendicular(&x)),
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn pairing_is_bilinear_and_alternating(d in 1usize..=8, x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
            let m = full_mask(d);
            let (x, y, z) = (
                Vector::from_bits(d, x & m).unwrap(),
                Vector::from_bits(d, y & m).unwrap(),
                Vector::from_bits(d, z & m).unwrap(),
            );
            prop_assert!(!x.pairing(&x).unwrap());
            prop_assert_eq!(x.pairing(&y).unwrap(), y.pairing(&x).unwrap());
            prop_assert_eq!(
                (x + y).pairing(&z).unwrap(),
                x.pairing(&z).unwrap() ^ y.pairing(&z).unwrap()
            );
        }

        #[test]
        fn projection_preserves_pairing(d in 1usize..=8, pivot in 1usize..=16, x in any::<u64>(), y in any::<u64>()) {
            prop_assume!(pivot <= 2 * d);
            let q = QuotientModel::new(d, pivot).unwrap();
            let m = full_mask(d);
            let mut x = Vector::from_bits(d, x & m).unwrap();
            let mut y = Vector::from_bits(d, y & m).unwrap();
            // push into e_i^perp by adding a neighbour of e_i when needed
            let fix = if pivot > 1 { e(d, pivot - 1) } else { e(d, pivot + 1) };
            if !q.is_perpendicular(&x) { x += fix; }
            if !q.is_perpendicular(&y) { y += fix; }
            let (px, py) = (q.project(&x).unwrap(), q.project(&y).unwrap());
            prop_assert_eq!(px.pairing(&py).unwrap(), x.pairing(&y).unwrap());
            prop_assert_eq!(q.project(&(x + q.kernel())).unwrap(), px);
            prop_assert_eq!(q.project(&q.lift(&px).unwrap()).unwrap(), px);
        }
    }
}
