use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Generators of the frequency module, in rad/time.
///
/// The generators are *declared* rationally independent by the caller. That
/// property cannot be checked in floating point, so it is taken on trust; every
/// exact statement about frequency modules is relative to this declaration.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyBasis {
    generators: Vec<f64>,
}

impl FrequencyBasis {
    pub fn new(generators: Vec<f64>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidBasis("basis must have at least one generator".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if !g.is_finite() || *g <= 0.0 {
                return Err(Error::InvalidBasis(format!(
                    "generator {i} must be a finite positive number, got {g}"
                )));
            }
            if generators[..i].contains(g) {
                return Err(Error::InvalidBasis(format!("duplicate generator {g}")));
            }
        }
        Ok(Self { generators })
    }

    /// The single-generator basis `(1)`, convenient for periodic problems.
    pub fn unit() -> Self {
        Self { generators: vec![1.0] }
    }

    pub fn generators(&self) -> &[f64] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Frequency with integer coordinates, folded to the canonical sign.
    pub fn frequency(&self, coords: &[i64]) -> Result<Frequency> {
        let coords = coords
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        Frequency::canonical(coords, self).map(|(f, _)| f)
    }
}

/// A point of the frequency module: exact rational coordinates against a
/// [`FrequencyBasis`], plus its cached real value.
///
/// Coordinates are stored for the canonical representative, whose first
/// nonzero coordinate is positive. Equality and ordering only look at the
/// coordinates.
#[derive(Debug, Clone)]
pub struct Frequency {
    coords: Vec<BigRational>,
    value: f64,
}

impl Frequency {
    /// Folds `coords` to the canonical sign. The returned flag is `true` when
    /// the coordinates were negated, in which case sine coefficients attached
    /// to them must be negated too.
    pub fn canonical(mut coords: Vec<BigRational>, basis: &FrequencyBasis) -> Result<(Self, bool)> {
        if coords.len() != basis.len() {
            return Err(Error::InvalidArgument(format!(
                "frequency has {} coordinates but the basis has {} generators",
                coords.len(),
                basis.len()
            )));
        }
        let flipped = coords
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        if flipped {
            for c in coords.iter_mut() {
                *c = -c.clone();
            }
        }
        let value = coords
            .iter()
            .zip(basis.generators())
            .map(|(c, g)| c.to_f64().unwrap_or(f64::NAN) * g)
            .sum();
        Ok((Self { coords, value }, flipped))
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Real value `Σ coords·generators`. May be negative for mixed-sign
    /// coordinates; `cos`/`sin` are evaluated with this signed value.
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl PartialEq for Frequency {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for Frequency {}

impl Hash for Frequency {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for Frequency {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frequency {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
