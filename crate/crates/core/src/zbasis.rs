//! Characteristic functions of family members as a Z-basis.
//!
//! Rows of the certificate matrix are the members `X` (ordered by dimension,
//! then basis bitstrings), columns are the elements of `Ṽ` (ordered by
//! bitstring), and entry `(X, v)` is 1 iff `v ∈ X`. The members form a
//! Z-basis of the integer functions on `Ṽ` exactly when this matrix is
//! square with determinant ±1.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{enumerate_family, Family};
use crate::intmat::IntegerMatrix;
use crate::phimap::TildeV;
use crate::space::Vector;
use crate::subspace::Subspace;

/// Default upper bound on `d` for exact certificates.
pub const DEFAULT_D_MAX: usize = 5;

/// An integer-valued function on `Ṽ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionOnTildeV {
    pub d: usize,
    pub values: BTreeMap<Vector, i64>,
}

impl FunctionOnTildeV {
    pub fn new(tilde_v: &TildeV, mut value: impl FnMut(&Vector) -> i64) -> Self {
        FunctionOnTildeV {
            d: tilde_v.d,
            values: tilde_v.elements.iter().map(|v| (*v, value(v))).collect(),
        }
    }

    /// Characteristic function of a subset of `Ṽ`.
    pub fn indicator(tilde_v: &TildeV, member: impl Fn(&Vector) -> bool) -> Self {
        Self::new(tilde_v, |v| i64::from(member(v)))
    }

    pub fn get(&self, v: &Vector) -> Option<i64> {
        self.values.get(v).copied()
    }
}

#[derive(Clone, Debug)]
pub struct BasisCertificate {
    pub d: usize,
    pub matrix: IntegerMatrix,
    pub determinant: BigInt,
    pub row_order: Vec<Subspace>,
    pub column_order: Vec<Vector>,
}

impl BasisCertificate {
    pub fn is_unimodular(&self) -> bool {
        self.determinant.abs().is_one()
    }

    pub fn to_export(&self) -> CertificateExport {
        CertificateExport {
            d: self.d,
            size: self.matrix.nrows(),
            determinant: self.determinant.to_string(),
            matrix: self.matrix.row_strings(),
            row_order: self
                .row_order
                .iter()
                .map(|x| x.basis().iter().map(Vector::to_bitstring).collect())
                .collect(),
            column_order: self.column_order.iter().map(Vector::to_bitstring).collect(),
        }
    }

    /// Matrix as CSV with the column bitstrings as header.
    pub fn to_csv(&self) -> String {
        let header: Vec<String> = self.column_order.iter().map(Vector::to_bitstring).collect();
        self.matrix.to_csv(Some(&header))
    }
}

/// JSON form of a certificate; the determinant is a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateExport {
    pub d: usize,
    pub size: usize,
    pub determinant: String,
    pub matrix: Vec<String>,
    pub row_order: Vec<Vec<String>>,
    pub column_order: Vec<String>,
}

/// The 0/1 membership matrix without the determinant.
pub fn characteristic_matrix(family: &Family, tilde_v: &TildeV) -> IntegerMatrix {
    let columns: Vec<Vector> = tilde_v.elements.iter().copied().collect();
    let rows: Vec<Vec<i64>> = family
        .members()
        .par_iter()
        .map(|x| columns.iter().map(|v| i64::from(x.contains(v))).collect())
        .collect();
    if rows.is_empty() {
        IntegerMatrix::zeros(0, columns.len())
    } else {
        IntegerMatrix::from_rows(&rows)
    }
}

pub fn certificate_for(family: &Family) -> Result<BasisCertificate> {
    let d = family.d();
    let tilde_v = TildeV::from_family(family);
    let matrix = characteristic_matrix(family, &tilde_v);
    if !matrix.is_square() {
        return Err(Error::NotSquare {
            d,
            rows: matrix.nrows(),
            cols: matrix.ncols(),
        });
    }
    let determinant = matrix.determinant();
    let cert = BasisCertificate {
        d,
        matrix,
        determinant,
        row_order: family.members().to_vec(),
        column_order: tilde_v.elements.into_iter().collect(),
    };
    if !cert.is_unimodular() {
        return Err(Error::NotUnimodular {
            d,
            det: cert.determinant.to_string(),
        });
    }
    Ok(cert)
}

pub fn basis_matrix(d: usize) -> Result<BasisCertificate> {
    certificate_for(&enumerate_family(d)?)
}

/// Exact decomposition of functions on `Ṽ` into characteristic functions.
#[derive(Clone, Debug)]
pub struct Decomposer {
    certificate: BasisCertificate,
    /// Inverse of the transposed membership matrix.
    solve: IntegerMatrix,
}

impl Decomposer {
    pub fn new(certificate: BasisCertificate) -> Result<Self> {
        let solve = certificate
            .matrix
            .transpose()
            .unimodular_inverse()
            .ok_or_else(|| Error::NotUnimodular {
                d: certificate.d,
                det: certificate.determinant.to_string(),
            })?;
        Ok(Decomposer { certificate, solve })
    }

    pub fn certificate(&self) -> &BasisCertificate {
        &self.certificate
    }

    /// Coefficients `c_X` with `f = Σ c_X Ψ_X`, one per member in row order.
    pub fn coefficients(&self, f: &FunctionOnTildeV) -> Result<Vec<i64>> {
        let cert = &self.certificate;
        if f.d != cert.d
            || f.values.len() != cert.column_order.len()
            || cert.column_order.iter().any(|v| !f.values.contains_key(v))
        {
            return Err(Error::DomainMismatch { d: cert.d });
        }
        let rhs: Vec<i64> = cert.column_order.iter().map(|v| f.values[v]).collect();
        Ok(self
            .solve
            .mul_vec(&rhs)
            .into_iter()
            .map(|x| {
                x.to_i64()
                    .expect("coefficients of i64 data fit in i64 for desk-scale d")
            })
            .collect())
    }

    /// Nonzero coefficients keyed by member.
    pub fn decompose(&self, f: &FunctionOnTildeV) -> Result<BTreeMap<Subspace, i64>> {
        let coeffs = self.coefficients(f)?;
        Ok(self
            .certificate
            .row_order
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| *c != 0)
            .map(|(x, c)| (x.clone(), c))
            .collect())
    }

    /// `Σ c_X Ψ_X` evaluated on `Ṽ`.
    pub fn recompose(&self, coefficients: &BTreeMap<Subspace, i64>) -> FunctionOnTildeV {
        let cert = &self.certificate;
        let values = cert
            .column_order
            .iter()
            .map(|v| {
                let total = coefficients
                    .iter()
                    .filter(|(x, _)| x.contains(v))
                    .map(|(_, c)| *c)
                    .sum();
                (*v, total)
            })
            .collect();
        FunctionOnTildeV { d: cert.d, values }
    }
}

pub fn decompose(f: &FunctionOnTildeV) -> Result<BTreeMap<Subspace, i64>> {
    Decomposer::new(basis_matrix(f.d)?)?.decompose(f)
}
