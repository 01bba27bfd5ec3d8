//! Monomials and finite series supports.
//!
//! A formal power series enters the computation only through its support:
//! the set of exponent vectors with nonzero coefficient. Coefficients are
//! never stored; every quantity we compute depends on the support alone.
//! Genericity of coefficients is asserted by flags at the presentation level.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CtError;

/// An exponent vector. Length is the ambient dimension (3, 4 or 5).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of monomials = componentwise sum of exponents.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.dim(), other.dim());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &Monomial) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["x", "y", "z", "u", "t"];
        if self.is_constant() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let v = names.get(i).copied().unwrap_or("w");
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// How much of the underlying formal series the listed terms cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Completeness {
    /// The series is the listed polynomial; no unlisted terms exist.
    #[default]
    Exact,
    /// Every monomial of the series with total degree `<= d` is listed.
    /// Unlisted terms all have total degree `> d`.
    UpTo(u32),
}

/// Finite support of a (possibly truncated) formal power series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesSupport {
    pub dim: usize,
    /// Distinct exponent vectors, kept in lexicographic order.
    pub terms: BTreeSet<Monomial>,
    /// `null` (or absent) means the listed terms are the whole series.
    #[serde(rename = "complete_up_to", default)]
    pub completeness: Completeness,
}

impl SeriesSupport {
    /// An exact polynomial support (no unlisted tail).
    pub fn polynomial(dim: usize, terms: Vec<Vec<u32>>) -> Self {
        Self::build(dim, terms, Completeness::Exact)
    }

    /// A truncation: all series terms of total degree `<= complete_up_to`
    /// are among `terms`; heavier unlisted terms may exist.
    pub fn truncated(dim: usize, terms: Vec<Vec<u32>>, complete_up_to: u32) -> Self {
        Self::build(dim, terms, Completeness::UpTo(complete_up_to))
    }

    fn build(dim: usize, terms: Vec<Vec<u32>>, completeness: Completeness) -> Self {
        let terms: BTreeSet<Monomial> = terms
            .into_iter()
            .map(|e| {
                assert_eq!(e.len(), dim, "exponent vector length != dim");
                Monomial(e)
            })
            .collect();
        SeriesSupport {
            dim,
            terms,
            completeness,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn check_dim(&self, expected: usize) -> Result<(), CtError> {
        if self.dim != expected {
            return Err(CtError::DimensionMismatch {
                expected,
                got: self.dim,
            });
        }
        Ok(())
    }

    /// Support with every exponent vector scaled by `k` (the support of `f^k`).
    pub fn power(&self, k: u32) -> SeriesSupport {
        SeriesSupport {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|m| Monomial(m.0.iter().map(|e| e * k).collect()))
                .collect(),
            completeness: match self.completeness {
                Completeness::Exact => Completeness::Exact,
                Completeness::UpTo(d) => Completeness::UpTo(d * k),
            },
        }
    }

    /// Support translated by a fixed monomial (the support of `m * f`).
    pub fn shifted(&self, by: &Monomial) -> SeriesSupport {
        SeriesSupport {
            dim: self.dim,
            terms: self.terms.iter().map(|m| m.mul(by)).collect(),
            completeness: match self.completeness {
                Completeness::Exact => Completeness::Exact,
                Completeness::UpTo(d) => Completeness::UpTo(d + by.total_degree()),
            },
        }
    }
}
