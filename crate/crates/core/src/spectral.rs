//! Closed-form solutions of `ẍ(t) + a·x(t) + b·x(−t) = g(t)` for
//! trigonometric-polynomial forcing.
//!
//! Writing `x = xₑ + xₒ` (even and odd parts) turns the reflection equation
//! into two classical scalar equations:
//!
//! ```text
//! ẍₑ + (a+b)·xₑ = gₑ        ẍₒ + (a−b)·xₒ = gₒ
//! ```
//!
//! A cosine term of frequency `λ` is therefore divided by `(a+b) − λ²` and a
//! sine term by `(a−b) − λ²`. In the hyperbolic regime both divisors are
//! negative for every `λ`; in the oscillatory regime they vanish at `λ = ν`
//! (even channel) and `λ = μ` (odd channel).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::trigpoly::{Coeffs, Frequency, TrigPoly};

pub const DEFAULT_RESONANCE_TOL: f64 = 1e-9;

/// Margins below this are solved but flagged as near-resonant.
pub const NEAR_RESONANCE_WARNING: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquationParams {
    pub a: f64,
    pub b: f64,
}

impl EquationParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParams("a and b must be finite".into()));
        }
        if b == 0.0 {
            return Err(Error::InvalidParams("b must be nonzero".into()));
        }
        Ok(Self { a, b })
    }

    /// Coefficient of the even channel, `a + b`.
    pub fn even_stiffness(&self) -> f64 {
        self.a + self.b
    }

    /// Coefficient of the odd channel, `a − b`.
    pub fn odd_stiffness(&self) -> f64 {
        self.a - self.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralData {
    /// `a < b < −a`: α = √(b−a) drives the odd channel, β = √(−a−b) the even one.
    Hyperbolic { alpha: f64, beta: f64 },
    /// `−a < b < a`: μ = √(a−b) (odd channel), ν = √(a+b) (even channel).
    Oscillatory { mu: f64, nu: f64 },
    /// One channel hyperbolic, the other oscillatory.
    Mixed { real_rate: f64, imag_rate: f64 },
    /// `a = b` or `a = −b`.
    Degenerate,
}

impl SpectralData {
    pub fn name(&self) -> &'static str {
        match self {
            SpectralData::Hyperbolic { .. } => "Hyperbolic",
            SpectralData::Oscillatory { .. } => "Oscillatory",
            SpectralData::Mixed { .. } => "Mixed",
            SpectralData::Degenerate => "Degenerate",
        }
    }
}

pub fn classify(params: &EquationParams) -> SpectralData {
    let odd = params.odd_stiffness();
    let even = params.even_stiffness();
    if odd == 0.0 || even == 0.0 {
        return SpectralData::Degenerate;
    }
    match (odd < 0.0, even < 0.0) {
        (true, true) => SpectralData::Hyperbolic {
            alpha: (-odd).sqrt(),
            beta: (-even).sqrt(),
        },
        (false, false) => SpectralData::Oscillatory {
            mu: odd.sqrt(),
            nu: even.sqrt(),
        },
        (true, false) => SpectralData::Mixed {
            real_rate: (-odd).sqrt(),
            imag_rate: even.sqrt(),
        },
        (false, true) => SpectralData::Mixed {
            real_rate: (-even).sqrt(),
            imag_rate: odd.sqrt(),
        },
    }
}

/// Hyperbolic rates `(α, β)`, or `UnsupportedCase`.
pub fn hyperbolic_rates(params: &EquationParams) -> Result<(f64, f64)> {
    match classify(params) {
        SpectralData::Hyperbolic { alpha, beta } => Ok((alpha, beta)),
        other => Err(Error::UnsupportedCase(format!(
            "{} regime (a = {}, b = {}); this operation needs a < b < -a",
            other.name(),
            params.a,
            params.b
        ))),
    }
}

/// Oscillatory rates `(μ, ν)`, or `UnsupportedCase`.
pub fn oscillatory_rates(params: &EquationParams) -> Result<(f64, f64)> {
    match classify(params) {
        SpectralData::Oscillatory { mu, nu } => Ok((mu, nu)),
        other => Err(Error::UnsupportedCase(format!(
            "{} regime (a = {}, b = {}); this operation needs -a < b < a",
            other.name(),
            params.a,
            params.b
        ))),
    }
}

/// Response `x = p·e^{iλt} + q·e^{−iλt}` to unit forcing `e^{iλt}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicResponse {
    pub p_coeff: Complex64,
    pub q_coeff: Complex64,
}

impl HarmonicResponse {
    /// Multiplier applied to `cos(λt)` forcing (`p + q`).
    pub fn cos_gain(&self) -> f64 {
        (self.p_coeff + self.q_coeff).re
    }

    /// Multiplier applied to `sin(λt)` forcing (`p − q`).
    pub fn sin_gain(&self) -> f64 {
        (self.p_coeff - self.q_coeff).re
    }
}

/// Determinant `D(λ) = (a−λ²)² − b²` of the 2×2 harmonic system.
pub fn harmonic_determinant(params: &EquationParams, lambda: f64) -> f64 {
    let d = params.a - lambda * lambda;
    d * d - params.b * params.b
}

pub fn harmonic_response(params: &EquationParams, lambda: &Frequency, resonance_tol: f64) -> Result<HarmonicResponse> {
    let l = lambda.value();
    let diag = params.a - l * l;
    let det = harmonic_determinant(params, l);
    let scale = 1f64.max(diag * diag).max(params.b * params.b);
    if det.abs() < resonance_tol * scale {
        return Err(Error::Resonance { lambda: l });
    }
    Ok(HarmonicResponse {
        p_coeff: Complex64::new(diag / det, 0.0),
        q_coeff: Complex64::new(-params.b / det, 0.0),
    })
}

/// Channel divisor check: `stiffness − λ²`, rejected when it is below
/// `resonance_tol` relative to the size of its terms.
fn channel_gain(stiffness: f64, lambda: f64, resonance_tol: f64) -> Result<f64> {
    let lambda_sq = lambda * lambda;
    let d = stiffness - lambda_sq;
    let scale = 1f64.max(stiffness.abs()).max(lambda_sq);
    if d.abs() < resonance_tol * scale {
        return Err(Error::Resonance { lambda });
    }
    Ok(1.0 / d)
}

/// Unique bounded (hyperbolic) or almost periodic without free homogeneous
/// component (oscillatory) solution.
///
/// In the oscillatory regime a harmonic is only rejected when it hits the
/// natural rate of a channel *and* carries forcing in that channel, so a
/// cosine at `λ = μ` is fine while a sine at `λ = μ` is a resonance.
pub fn bounded_solution(params: &EquationParams, g: &TrigPoly, resonance_tol: f64) -> Result<TrigPoly> {
    match classify(params) {
        SpectralData::Hyperbolic { .. } | SpectralData::Oscillatory { .. } => {}
        other => {
            return Err(Error::UnsupportedCase(format!(
                "{} regime (a = {}, b = {})",
                other.name(),
                params.a,
                params.b
            )))
        }
    }
    let mut x = TrigPoly::zero(g.basis().clone());
    for (freq, c) in g.terms() {
        let lambda = freq.value();
        let cos = if c.cos != 0.0 {
            c.cos * channel_gain(params.even_stiffness(), lambda, resonance_tol)?
        } else {
            0.0
        };
        let sin = if c.sin != 0.0 {
            c.sin * channel_gain(params.odd_stiffness(), lambda, resonance_tol)?
        } else {
            0.0
        };
        x.add_term(freq.coords().to_vec(), cos, sin)?;
    }
    Ok(x)
}

/// Coefficients of the hyperbolic homogeneous family
/// `k₁(e^{αt} − e^{−αt}) + k₂(e^{βt} + e^{−βt})`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HomogeneousPart {
    pub k1: f64,
    pub k2: f64,
}

pub fn case1_homogeneous(params: &EquationParams, k: HomogeneousPart, t: f64) -> Result<f64> {
    let (alpha, beta) = hyperbolic_rates(params)?;
    Ok(k.k1 * ((alpha * t).exp() - (-alpha * t).exp()) + k.k2 * ((beta * t).exp() + (-beta * t).exp()))
}

/// Growth test over a geometric time sequence: `true` when the homogeneous
/// part exceeds `1e10·(|k₁|+|k₂|)` somewhere on `±t_n` with `t_n` doubling up
/// to `60/min(α, β)`.
pub fn case1_homogeneous_unbounded(params: &EquationParams, k: HomogeneousPart) -> Result<bool> {
    let (alpha, beta) = hyperbolic_rates(params)?;
    let size = k.k1.abs() + k.k2.abs();
    if size == 0.0 {
        return Ok(false);
    }
    let t_max = 60.0 / alpha.min(beta);
    let mut t = 1.0 / alpha.max(beta);
    let mut peak: f64 = 0.0;
    while t <= t_max {
        let v = case1_homogeneous(params, k, t)?
            .abs()
            .max(case1_homogeneous(params, k, -t)?.abs());
        peak = peak.max(v);
        t *= 2.0;
    }
    Ok(peak > 1e10 * size)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginReport {
    /// `min |μ ± λ|` over every forcing frequency.
    pub theorem_margin_mu: f64,
    /// `min |ν ± λ|` over every forcing frequency.
    pub theorem_margin_nu: f64,
    /// `min |μ ± λ|` over frequencies with a sine (odd) coefficient.
    pub sharp_margin_odd: f64,
    /// `min |ν ± λ|` over frequencies with a cosine (even) coefficient.
    pub sharp_margin_even: f64,
}

impl MarginReport {
    pub fn near_resonant(&self) -> bool {
        self.sharp_margin_odd < NEAR_RESONANCE_WARNING || self.sharp_margin_even < NEAR_RESONANCE_WARNING
    }
}

pub fn margins(params: &EquationParams, g: &TrigPoly) -> Result<MarginReport> {
    let (mu, nu) = oscillatory_rates(params)?;
    let dist = |rate: f64, lambda: f64| (rate - lambda.abs()).abs().min(rate + lambda.abs());
    let mut report = MarginReport {
        theorem_margin_mu: f64::INFINITY,
        theorem_margin_nu: f64::INFINITY,
        sharp_margin_odd: f64::INFINITY,
        sharp_margin_even: f64::INFINITY,
    };
    for (freq, c) in g.terms() {
        let l = freq.value();
        report.theorem_margin_mu = report.theorem_margin_mu.min(dist(mu, l));
        report.theorem_margin_nu = report.theorem_margin_nu.min(dist(nu, l));
        if c.sin != 0.0 {
            report.sharp_margin_odd = report.sharp_margin_odd.min(dist(mu, l));
        }
        if c.cos != 0.0 {
            report.sharp_margin_even = report.sharp_margin_even.min(dist(nu, l));
        }
    }
    Ok(report)
}

/// Full oscillatory solution `particular(t) + A·sin(μt) + B·cos(νt)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Case2Solution {
    pub particular: TrigPoly,
    pub sin_mu: f64,
    pub cos_nu: f64,
    pub mu: f64,
    pub nu: f64,
}

impl Case2Solution {
    pub fn evaluate(&self, t: f64) -> f64 {
        self.particular.evaluate(t) + self.sin_mu * (self.mu * t).sin() + self.cos_nu * (self.nu * t).cos()
    }

    pub fn derivative_at(&self, t: f64) -> f64 {
        self.particular.derivative(1).evaluate(t) + self.sin_mu * self.mu * (self.mu * t).cos()
            - self.cos_nu * self.nu * (self.nu * t).sin()
    }

    pub fn second_derivative_at(&self, t: f64) -> f64 {
        self.particular.derivative(2).evaluate(t)
            - self.sin_mu * self.mu * self.mu * (self.mu * t).sin()
            - self.cos_nu * self.nu * self.nu * (self.nu * t).cos()
    }

    pub fn homogeneous(&self) -> Coeffs {
        Coeffs::new(self.cos_nu, self.sin_mu)
    }
}

/// Oscillatory initial-value solution. The homogeneous coefficients are fitted
/// to the initial data after subtracting the particular solution's own value
/// and slope at 0.
pub fn case2_ivp(params: &EquationParams, g: &TrigPoly, x0: f64, xdot0: f64, resonance_tol: f64) -> Result<Case2Solution> {
    let (mu, nu) = oscillatory_rates(params)?;
    let particular = bounded_solution(params, g, resonance_tol)?;
    let cos_nu = x0 - particular.evaluate(0.0);
    let sin_mu = (xdot0 - particular.derivative(1).evaluate(0.0)) / mu;
    Ok(Case2Solution {
        particular,
        sin_mu,
        cos_nu,
        mu,
        nu,
    })
}
