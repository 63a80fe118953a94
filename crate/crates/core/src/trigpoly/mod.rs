//! Real trigonometric polynomials over a declared frequency basis.
//!
//! A [`TrigPoly`] is `Σ A·cos(λt) + B·sin(λt)` over finitely many frequencies
//! `λ` from the module generated by a [`FrequencyBasis`]. Frequencies carry
//! exact rational coordinates, so products, reflections and module
//! comparisons never lose track of which frequencies are present.

mod frequency;
pub mod lattice;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use frequency::{Frequency, FrequencyBasis};

use crate::error::{Error, Result};

/// Cosine and sine coefficients of a single frequency.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Coeffs {
    pub cos: f64,
    pub sin: f64,
}

impl Coeffs {
    pub fn new(cos: f64, sin: f64) -> Self {
        Self { cos, sin }
    }

    pub fn amplitude(&self) -> f64 {
        self.cos.hypot(self.sin)
    }

    fn is_zero(&self) -> bool {
        self.cos == 0.0 && self.sin == 0.0
    }
}

/// Inclusion relation between the frequency modules of two polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleRelation {
    Equal,
    PSubsetOfQ,
    QSubsetOfP,
    Incomparable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    basis: FrequencyBasis,
    terms: BTreeMap<Frequency, Coeffs>,
}

impl TrigPoly {
    pub fn zero(basis: FrequencyBasis) -> Self {
        Self {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// Single term `cos_coeff·cos(λt) + sin_coeff·sin(λt)` with integer
    /// coordinates.
    pub fn term(basis: &FrequencyBasis, coords: &[i64], cos_coeff: f64, sin_coeff: f64) -> Result<Self> {
        let mut p = Self::zero(basis.clone());
        let coords = coords
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        p.add_term(coords, cos_coeff, sin_coeff)?;
        Ok(p)
    }

    /// Builder form of [`TrigPoly::add_term`] with integer coordinates.
    pub fn with_term(mut self, coords: &[i64], cos_coeff: f64, sin_coeff: f64) -> Result<Self> {
        let coords = coords
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        self.add_term(coords, cos_coeff, sin_coeff)?;
        Ok(self)
    }

    /// Adds a term at the given rational coordinates. Coordinates are folded
    /// to the canonical sign (negating the sine coefficient), a sine at the
    /// zero frequency is dropped, and a term that cancels to zero is removed.
    pub fn add_term(&mut self, coords: Vec<BigRational>, cos_coeff: f64, sin_coeff: f64) -> Result<()> {
        if !cos_coeff.is_finite() || !sin_coeff.is_finite() {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        let (freq, flipped) = Frequency::canonical(coords, &self.basis)?;
        let sin_coeff = if flipped { -sin_coeff } else { sin_coeff };
        self.accumulate(freq, Coeffs::new(cos_coeff, sin_coeff));
        Ok(())
    }

    fn accumulate(&mut self, freq: Frequency, c: Coeffs) {
        let sin = if freq.is_zero() { 0.0 } else { c.sin };
        let entry = self.terms.entry(freq.clone()).or_default();
        entry.cos += c.cos;
        entry.sin += sin;
        if entry.is_zero() {
            self.terms.remove(&freq);
        }
    }

    fn from_map(basis: FrequencyBasis, terms: BTreeMap<Frequency, Coeffs>) -> Self {
        let terms = terms
            .into_iter()
            .map(|(f, c)| {
                let sin = if f.is_zero() { 0.0 } else { c.sin };
                (f, Coeffs::new(c.cos, sin))
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self { basis, terms }
    }

    pub fn basis(&self) -> &FrequencyBasis {
        &self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Frequency, &Coeffs)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, freq: &Frequency) -> Coeffs {
        self.terms.get(freq).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`TrigPoly::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Largest `|λ|` present, or 0 for a constant/zero polynomial.
    pub fn max_abs_frequency(&self) -> f64 {
        self.terms.keys().map(|f| f.value().abs()).fold(0.0, f64::max)
    }

    fn ensure_same_basis(&self, other: &Self) -> Result<()> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(f, c)| {
                let (s, co) = (f.value() * t).sin_cos();
                c.cos * co + c.sin * s
            })
            .fold(0.0, |acc, v| acc + v)
    }

    /// `t ↦ p(−t)`: cosines are kept, sines change sign.
    pub fn reflect(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(f, c)| (f.clone(), Coeffs::new(c.cos, -c.sin)))
            .collect();
        Self::from_map(self.basis.clone(), terms)
    }

    /// Even part (all cosine terms) and odd part (all sine terms).
    pub fn parity_split(&self) -> (Self, Self) {
        let even = self
            .terms
            .iter()
            .map(|(f, c)| (f.clone(), Coeffs::new(c.cos, 0.0)))
            .collect();
        let odd = self
            .terms
            .iter()
            .map(|(f, c)| (f.clone(), Coeffs::new(0.0, c.sin)))
            .collect();
        (
            Self::from_map(self.basis.clone(), even),
            Self::from_map(self.basis.clone(), odd),
        )
    }

    pub fn derivative(&self, order: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(f, c)| {
                let lambda = f.value();
                let mut d = *c;
                for _ in 0..order {
                    d = Coeffs::new(lambda * d.sin, -lambda * d.cos);
                }
                (f.clone(), d)
            })
            .collect();
        Self::from_map(self.basis.clone(), terms)
    }

    /// Zero-mean antiderivative. Every frequency must satisfy
    /// `|λ| ≥ zero_margin`, otherwise the primitive can pick up a secular term
    /// and stop being almost periodic.
    pub fn antiderivative(&self, zero_margin: f64) -> Result<Self> {
        if !(zero_margin > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "zero_margin must be positive, got {zero_margin}"
            )));
        }
        let mut terms = BTreeMap::new();
        for (f, c) in &self.terms {
            let lambda = f.value();
            if lambda.abs() < zero_margin {
                return Err(Error::FrequencyNearZero {
                    lambda,
                    margin: zero_margin,
                });
            }
            terms.insert(f.clone(), Coeffs::new(-c.sin / lambda, c.cos / lambda));
        }
        Ok(Self::from_map(self.basis.clone(), terms))
    }

    pub fn scale(&self, k: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(f, c)| (f.clone(), Coeffs::new(k * c.cos, k * c.sin)))
            .collect();
        Self::from_map(self.basis.clone(), terms)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ensure_same_basis(other)?;
        let mut terms = self.terms.clone();
        for (f, c) in &other.terms {
            let e = terms.entry(f.clone()).or_default();
            e.cos += c.cos;
            e.sin += c.sin;
        }
        Ok(Self::from_map(self.basis.clone(), terms))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(-1.0))
    }

    /// Product via product-to-sum identities; frequency coordinates are
    /// added and subtracted exactly.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.ensure_same_basis(other)?;
        let mut out = Self::zero(self.basis.clone());
        for (f1, c1) in &self.terms {
            for (f2, c2) in &other.terms {
                let sum: Vec<BigRational> = f1.coords().iter().zip(f2.coords()).map(|(x, y)| x + y).collect();
                let diff: Vec<BigRational> = f1.coords().iter().zip(f2.coords()).map(|(x, y)| x - y).collect();
                // cos·cos = ½[cos(Δ) + cos(Σ)],  sin·sin = ½[cos(Δ) − cos(Σ)]
                // sin·cos = ½[sin(Σ) + sin(Δ)],  cos·sin = ½[sin(Σ) − sin(Δ)]
                let cos_sum = 0.5 * (c1.cos * c2.cos - c1.sin * c2.sin);
                let cos_diff = 0.5 * (c1.cos * c2.cos + c1.sin * c2.sin);
                let sin_sum = 0.5 * (c1.sin * c2.cos + c1.cos * c2.sin);
                let sin_diff = 0.5 * (c1.sin * c2.cos - c1.cos * c2.sin);
                out.add_term(sum, cos_sum, sin_sum)?;
                out.add_term(diff, cos_diff, sin_diff)?;
            }
        }
        Ok(out)
    }

    /// Coefficient-sum bound `Σ √(A²+B²)`, an upper bound for `sup |p|`.
    pub fn coefficient_sum(&self) -> f64 {
        self.terms.values().map(Coeffs::amplitude).fold(0.0, |s, v| s + v)
    }

    /// `(lower, upper)` with `lower ≤ sup_t |p(t)| ≤ upper`.
    ///
    /// `upper` is the coefficient sum. `lower` is the largest `|p|` over
    /// `grid_points` samples spaced `π/(32·λ_max)` apart on `[0, ∞)`; for an
    /// almost periodic function the supremum is approached on every half-line,
    /// so longer grids tighten the estimate.
    pub fn sup_norm_bounds(&self, grid_points: usize) -> (f64, f64) {
        if self.is_zero() {
            return (0.0, 0.0);
        }
        let upper = self.coefficient_sum();
        let lmax = self.max_abs_frequency();
        let step = if lmax > 0.0 { PI / (32.0 * lmax) } else { 1.0 };
        let lower = (0..grid_points.max(2))
            .map(|j| self.evaluate(j as f64 * step).abs())
            .fold(0.0, f64::max);
        (lower.min(upper), upper)
    }

    /// Largest coefficient-wise difference over the union of both supports.
    pub fn max_coeff_diff(&self, other: &Self) -> Result<f64> {
        self.ensure_same_basis(other)?;
        let mut worst: f64 = 0.0;
        for (f, c) in &self.terms {
            let o = other.coefficient(f);
            worst = worst.max((c.cos - o.cos).abs()).max((c.sin - o.sin).abs());
        }
        for (f, c) in &other.terms {
            if !self.terms.contains_key(f) {
                worst = worst.max(c.cos.abs()).max(c.sin.abs());
            }
        }
        Ok(worst)
    }

    /// Compares the additive groups generated by the two frequency sets.
    pub fn module_compare(&self, other: &Self) -> Result<ModuleRelation> {
        self.ensure_same_basis(other)?;
        let n = self.basis.len();
        let mut denom = BigInt::one();
        for f in self.terms.keys().chain(other.terms.keys()) {
            for c in f.coords() {
                denom = denom.lcm(c.denom());
            }
        }
        let to_rows = |p: &Self| -> Vec<Vec<BigInt>> {
            p.terms
                .keys()
                .map(|f| {
                    f.coords()
                        .iter()
                        .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
                        .collect()
                })
                .collect()
        };
        let rows_p = to_rows(self);
        let rows_q = to_rows(other);
        let p_in_q = lattice::is_sublattice(&rows_p, &rows_q, n);
        let q_in_p = lattice::is_sublattice(&rows_q, &rows_p, n);
        Ok(match (p_in_q, q_in_p) {
            (true, true) => ModuleRelation::Equal,
            (true, false) => ModuleRelation::PSubsetOfQ,
            (false, true) => ModuleRelation::QSubsetOfP,
            (false, false) => ModuleRelation::Incomparable,
        })
    }

    /// `true` when every frequency is an integer multiple of `coords`
    /// (the frequency `ω₀`), i.e. the polynomial is `2π/ω₀`-periodic.
    pub fn is_harmonic_of(&self, fundamental: &Frequency) -> bool {
        if fundamental.is_zero() {
            return self.terms.keys().all(Frequency::is_zero);
        }
        self.terms.keys().all(|f| {
            let mut ratio: Option<BigRational> = None;
            for (c, w) in f.coords().iter().zip(fundamental.coords()) {
                if w.is_zero() {
                    if !c.is_zero() {
                        return false;
                    }
                    continue;
                }
                let r = c / w;
                match &ratio {
                    None => ratio = Some(r),
                    Some(prev) if *prev != r => return false,
                    _ => {}
                }
            }
            ratio.is_none_or(|r| r.is_integer())
        })
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(fr, c)| format!("[{} cos + {} sin]@{}", c.cos, c.sin, fr))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit() -> FrequencyBasis {
        FrequencyBasis::unit()
    }

    fn root2() -> FrequencyBasis {
        FrequencyBasis::new(vec![1.0, 2f64.sqrt()]).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let p = TrigPoly::term(&unit(), &[2], 1.0, 0.0).unwrap();
        assert_eq!(p.evaluate(0.0), 1.0);
        let p = TrigPoly::term(&unit(), &[2], 0.5, 0.0).unwrap();
        assert!(p.evaluate(PI / 4.0).abs() < 1e-16);
        let p = TrigPoly::term(&root2(), &[1, 0], 1.0, 0.0)
            .unwrap()
            .with_term(&[0, 1], 0.0, 1.0)
            .unwrap();
        let direct = 1f64.cos() + 2f64.sqrt().sin();
        assert!((p.evaluate(1.0) - direct).abs() < 1e-15);
    }

    #[test]
    fn zero_frequency_drops_sine_and_cancelled_terms_vanish() {
        let p = TrigPoly::term(&unit(), &[0], 2.0, 5.0).unwrap();
        assert_eq!(p.coefficient(&unit().frequency(&[0]).unwrap()), Coeffs::new(2.0, 0.0));
        let q = p.clone().with_term(&[0], -2.0, 0.0).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn negative_coordinates_fold_with_sine_sign() {
        // sin(−t) = −sin t
        let p = TrigPoly::term(&unit(), &[-1], 0.0, 1.0).unwrap();
        let q = TrigPoly::term(&unit(), &[1], 0.0, -1.0).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn reflect_examples() {
        let c2 = TrigPoly::term(&unit(), &[2], 1.0, 0.0).unwrap();
        assert_eq!(c2.reflect(), c2);
        let s3 = TrigPoly::term(&unit(), &[3], 0.0, 1.0).unwrap();
        assert_eq!(s3.reflect(), s3.scale(-1.0));
        let p = TrigPoly::term(&root2(), &[1, 0], 1.0, 0.0)
            .unwrap()
            .with_term(&[0, 1], 0.0, 0.5)
            .unwrap();
        let r = p.reflect();
        for k in -20..=20 {
            let t = 0.37 * k as f64;
            assert!((r.evaluate(t) - p.evaluate(-t)).abs() < 1e-14);
        }
    }

    #[test]
    fn parity_split_examples() {
        let p = TrigPoly::term(&unit(), &[1], 1.0, 0.0).unwrap().with_term(&[3], 0.0, 1.0).unwrap();
        let (e, o) = p.parity_split();
        assert_eq!(e, TrigPoly::term(&unit(), &[1], 1.0, 0.0).unwrap());
        assert_eq!(o, TrigPoly::term(&unit(), &[3], 0.0, 1.0).unwrap());

        let s = TrigPoly::term(&unit(), &[1], 0.0, 1.0).unwrap();
        let (e, o) = s.parity_split();
        assert!(e.is_zero());
        assert_eq!(o, s);

        let p = TrigPoly::term(&root2(), &[0, 1], 2.0, -0.3).unwrap();
        let (e, o) = p.parity_split();
        for k in 0..50 {
            let t = 0.21 * k as f64;
            assert!((e.evaluate(-t) - e.evaluate(t)).abs() < 1e-12);
            assert!((o.evaluate(-t) + o.evaluate(t)).abs() < 1e-12);
        }
        assert_eq!(e.try_add(&o).unwrap(), p);
    }

    #[test]
    fn derivative_examples() {
        let c2 = TrigPoly::term(&unit(), &[2], 1.0, 0.0).unwrap();
        assert_eq!(c2.derivative(2), c2.scale(-4.0));
        let s = TrigPoly::term(&root2(), &[0, 1], 0.0, 1.0).unwrap();
        let ds = s.derivative(1);
        let c = ds.coefficient(&root2().frequency(&[0, 1]).unwrap());
        assert!((c.cos - 2f64.sqrt()).abs() < 1e-15 && c.sin == 0.0);

        // (cos t)/2 against ẍ + 2x + x(−t) = cos t
        let x = TrigPoly::term(&unit(), &[1], 0.5, 0.0).unwrap();
        let lhs = x.derivative(2).try_add(&x.scale(2.0)).unwrap().try_add(&x.reflect()).unwrap();
        assert_eq!(lhs, TrigPoly::term(&unit(), &[1], 1.0, 0.0).unwrap());
    }

    #[test]
    fn antiderivative_examples() {
        let s3 = TrigPoly::term(&unit(), &[3], 0.0, 1.0).unwrap();
        let expect = TrigPoly::term(&unit(), &[3], -1.0 / 3.0, 0.0).unwrap();
        assert!(s3.antiderivative(0.1).unwrap().max_coeff_diff(&expect).unwrap() < 1e-16);

        let p = TrigPoly::term(&root2(), &[1, 0], 1.0, 0.0).unwrap().with_term(&[0, 1], 1.0, 0.0).unwrap();
        let ap = p.antiderivative(0.5).unwrap();
        assert!(ap.derivative(1).max_coeff_diff(&p).unwrap() < 1e-15);
        let c = ap.coefficient(&root2().frequency(&[0, 1]).unwrap());
        assert!((c.sin - 1.0 / 2f64.sqrt()).abs() < 1e-15);

        let one = TrigPoly::term(&unit(), &[0], 1.0, 0.0).unwrap();
        assert!(matches!(one.antiderivative(0.1), Err(Error::FrequencyNearZero { .. })));
        assert!(matches!(s3.antiderivative(0.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn antiderivative_uses_signed_value_for_mixed_coordinates() {
        // λ = 1 − √2 < 0
        let p = TrigPoly::term(&root2(), &[1, -1], 0.7, -0.2).unwrap();
        let ap = p.antiderivative(0.1).unwrap();
        assert!(ap.derivative(1).max_coeff_diff(&p).unwrap() < 1e-14);
    }

    #[test]
    fn multiply_examples() {
        let c = TrigPoly::term(&unit(), &[1], 1.0, 0.0).unwrap();
        let s = TrigPoly::term(&unit(), &[1], 0.0, 1.0).unwrap();
        let cc = c.multiply(&c).unwrap();
        let expect = TrigPoly::term(&unit(), &[0], 0.5, 0.0).unwrap().with_term(&[2], 0.5, 0.0).unwrap();
        assert_eq!(cc, expect);
        let cs = c.multiply(&s).unwrap();
        assert_eq!(cs, TrigPoly::term(&unit(), &[2], 0.0, 0.5).unwrap());

        let p = TrigPoly::term(&root2(), &[1, 0], 1.0, 0.0).unwrap().with_term(&[0, 1], 0.0, 1.0).unwrap();
        let sq = p.multiply(&p).unwrap();
        let mut values: Vec<f64> = sq.terms().map(|(f, _)| f.value().abs()).collect();
        values.sort_by(f64::total_cmp);
        let r2 = 2f64.sqrt();
        let mut expect = vec![0.0, 2.0, 2.0 * r2, r2 - 1.0, r2 + 1.0];
        expect.sort_by(f64::total_cmp);
        assert_eq!(values.len(), expect.len());
        for (v, e) in values.iter().zip(&expect) {
            assert!((v - e).abs() < 1e-14);
        }
        for k in 0..100 {
            let t = -10.0 + 0.2 * k as f64;
            assert!((sq.evaluate(t) - p.evaluate(t).powi(2)).abs() < 1e-12);
        }
        assert!(matches!(c.multiply(&p), Err(Error::BasisMismatch)));
    }

    #[test]
    fn sup_norm_examples() {
        let c2 = TrigPoly::term(&unit(), &[2], 1.0, 0.0).unwrap();
        let (lo, hi) = c2.sup_norm_bounds(64);
        assert_eq!(hi, 1.0);
        assert!((lo - 1.0).abs() < 1e-12);

        let p = TrigPoly::term(&root2(), &[1, 0], 1.0, 0.0).unwrap().with_term(&[0, 1], 1.0, 0.0).unwrap();
        let (lo, hi) = p.sup_norm_bounds(8192);
        assert!((hi - 2.0).abs() < 1e-15);
        assert!(lo >= 1.9 && lo <= 2.0, "lower {lo}");

        assert_eq!(TrigPoly::zero(unit()).sup_norm_bounds(10), (0.0, 0.0));
    }

    #[test]
    fn module_compare_examples() {
        let c = TrigPoly::term(&unit(), &[1], 1.0, 0.0).unwrap();
        let s = TrigPoly::term(&unit(), &[1], 0.0, 1.0).unwrap();
        assert_eq!(c.module_compare(&s).unwrap(), ModuleRelation::Equal);
        let c2 = TrigPoly::term(&unit(), &[2], 1.0, 0.0).unwrap();
        assert_eq!(c2.module_compare(&c).unwrap(), ModuleRelation::PSubsetOfQ);
        assert_eq!(c.module_compare(&c2).unwrap(), ModuleRelation::QSubsetOfP);

        let b = root2();
        let p = TrigPoly::term(&b, &[1, 0], 1.0, 0.0).unwrap();
        let q = TrigPoly::term(&b, &[0, 1], 1.0, 0.0).unwrap();
        assert_eq!(p.module_compare(&q).unwrap(), ModuleRelation::Incomparable);
        assert!(matches!(p.module_compare(&c), Err(Error::BasisMismatch)));
    }

    #[test]
    fn module_compare_with_rational_coordinates() {
        let b = unit();
        let mut half = TrigPoly::zero(b.clone());
        half.add_term(vec![BigRational::new(1.into(), 2.into())], 1.0, 0.0).unwrap();
        let mut third = TrigPoly::zero(b.clone());
        third.add_term(vec![BigRational::new(1.into(), 3.into())], 1.0, 0.0).unwrap();
        // ½ℤ and ⅓ℤ are incomparable; ½ℤ + ⅓ℤ = ⅙ℤ contains both.
        assert_eq!(half.module_compare(&third).unwrap(), ModuleRelation::Incomparable);
        let both = half.try_add(&third).unwrap();
        assert_eq!(half.module_compare(&both).unwrap(), ModuleRelation::PSubsetOfQ);
        let mut sixth = TrigPoly::zero(b);
        sixth.add_term(vec![BigRational::new(1.into(), 6.into())], 1.0, 0.0).unwrap();
        assert_eq!(both.module_compare(&sixth).unwrap(), ModuleRelation::Equal);
    }

    #[test]
    fn harmonic_detection() {
        let b = root2();
        let w = b.frequency(&[1, 0]).unwrap();
        let p = TrigPoly::term(&b, &[2, 0], 1.0, 0.0).unwrap().with_term(&[0, 0], 1.0, 0.0).unwrap();
        assert!(p.is_harmonic_of(&w));
        let q = p.clone().with_term(&[0, 1], 1.0, 0.0).unwrap();
        assert!(!q.is_harmonic_of(&w));
        assert!(p.is_harmonic_of(&b.frequency(&[2, 0]).unwrap()));
        assert!(!p.is_harmonic_of(&b.frequency(&[4, 0]).unwrap()));
    }

    fn arb_poly() -> impl Strategy<Value = TrigPoly> {
        prop::collection::vec((-3i64..=3, -3i64..=3, -2.0f64..2.0, -2.0f64..2.0), 0..5).prop_map(|terms| {
            let mut p = TrigPoly::zero(FrequencyBasis::new(vec![1.0, 2f64.sqrt()]).unwrap());
            for (i, j, a, b) in terms {
                p = p.with_term(&[i, j], a, b).unwrap();
            }
            p
        })
    }

    proptest! {
        #[test]
        fn reflect_is_an_involution(p in arb_poly()) {
            prop_assert_eq!(p.reflect().reflect(), p);
        }

        #[test]
        fn parity_parts_sum_back(p in arb_poly(), t in -20.0f64..20.0) {
            let (e, o) = p.parity_split();
            prop_assert!((e.evaluate(-t) - e.evaluate(t)).abs() <= 1e-12);
            prop_assert!((o.evaluate(-t) + o.evaluate(t)).abs() <= 1e-12);
            prop_assert_eq!(e.try_add(&o).unwrap(), p);
        }

        #[test]
        fn antiderivative_inverts_derivative(p in arb_poly()) {
            if let Ok(ap) = p.antiderivative(1e-3) {
                prop_assert!(ap.derivative(1).max_coeff_diff(&p).unwrap() <= 1e-12);
            }
        }

        #[test]
        fn reflection_preserves_module(p in arb_poly()) {
            prop_assert_eq!(p.module_compare(&p.reflect()).unwrap(), ModuleRelation::Equal);
        }

        #[test]
        fn multiply_commutes_and_matches_pointwise(p in arb_poly(), q in arb_poly(), t in -15.0f64..15.0) {
            let pq = p.multiply(&q).unwrap();
            let qp = q.multiply(&p).unwrap();
            prop_assert!(pq.max_coeff_diff(&qp).unwrap() <= 1e-14);
            prop_assert!((pq.evaluate(t) - p.evaluate(t) * q.evaluate(t)).abs() <= 1e-10);
        }

        #[test]
        fn sup_bounds_bracket_samples(p in arb_poly(), t in -50.0f64..50.0) {
            let (lo, hi) = p.sup_norm_bounds(256);
            prop_assert!(lo <= hi);
            prop_assert!(p.evaluate(t).abs() <= hi + 1e-12);
        }
    }
}
