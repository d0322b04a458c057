//! Isotropic subspace families in a based symplectic F2-space.
//!
//! `V = F2^{2d}` carries the basis `e_1, ..., e_{2d}` and the alternating form
//! with `(e_i, e_j) = 1` exactly when `|i - j| = 1`. This crate enumerates the
//! recursively defined family of isotropic subspaces of `V`, computes the
//! parity map `Phi` from the family onto the union of its members, and
//! certifies that the characteristic functions of the members form a
//! Z-basis of the integer functions on that union. A second part handles the
//! symmetric-group and exceptional-family data: Kostka numbers, the
//! multiplicity-one matching between irreducibles and Young permutation
//! modules, and the unitriangular family matrices of exceptional Weyl
//! groups.
//!
//! ```
//! use isobasis::family::enumerate_family;
//! use isobasis::phimap::phi;
//!
//! let fam = enumerate_family(2)?;
//! assert_eq!(fam.len(), 10);
//! for x in fam.members() {
//!     assert!(x.contains(&phi(x)));
//! }
//! # Ok::<(), isobasis::Error>(())
//! ```

pub mod error;
pub mod excdata;
pub mod family;
pub mod gf2;
pub mod intmat;
pub mod phimap;
pub mod space;
pub mod subspace;
pub mod symfam;
pub mod verify;
pub mod zbasis;

pub use error::{Error, Result};
pub use family::{enumerate_family, Family, FamilyTower};
pub use space::{Interval, QuotientModel, Vector};
pub use subspace::Subspace;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/symplectic-space.md")]
    mod symplectic_space {}
    #[doc = include_str!("../../../book/src/family.md")]
    mod family {}
    #[doc = include_str!("../../../book/src/phi.md")]
    mod phi {}
    #[doc = include_str!("../../../book/src/z-basis.md")]
    mod z_basis {}
    #[doc = include_str!("../../../book/src/young.md")]
    mod young {}
    #[doc = include_str!("../../../book/src/exceptional.md")]
    mod exceptional {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
