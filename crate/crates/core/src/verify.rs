//! Independent checks on computed solutions.
//!
//! Three routes, none of which reuses the parity-channel divisors of
//! [`crate::spectral`]:
//!
//! * coefficient algebra: the residual `ẍ + a·x + b·x(−t) − g` formed
//!   exactly in coefficient space;
//! * harmonic balance: the operator applied to every cos/sin basis function
//!   of the forcing's frequencies, assembled into a dense system and solved
//!   by elimination;
//! * time integration: classical RK4 on the first-order system in
//!   `(x(t), x(−t), ẋ(t), ẋ(−t))`, run forward and backward from `t = 0`.

use crate::error::{Error, Result};
use crate::grid::{half_count, GridFunction};
use crate::linalg::solve_dense;
use crate::spectral::{hyperbolic_rates, EquationParams};
use crate::trigpoly::{Frequency, TrigPoly};

/// Coefficient-sum bound of `ẍ + a·x + b·x(−t) − g`; zero iff `x` solves the
/// equation exactly in floating point.
pub fn residual_spectral(params: &EquationParams, x: &TrigPoly, g: &TrigPoly) -> Result<f64> {
    let r = residual_poly(params, x, g)?;
    Ok(r.coefficient_sum())
}

/// `ẍ + a·x + b·x(−t) − g` as a trigonometric polynomial.
pub fn residual_poly(params: &EquationParams, x: &TrigPoly, g: &TrigPoly) -> Result<TrigPoly> {
    x.derivative(2)
        .try_add(&x.scale(params.a))?
        .try_add(&x.reflect().scale(params.b))?
        .try_sub(g)
}

fn apply_operator(params: &EquationParams, u: &TrigPoly) -> Result<TrigPoly> {
    let zero = TrigPoly::zero(u.basis().clone());
    residual_poly(params, u, &zero)
}

/// Relative pivot tolerance of the dense harmonic-balance solve.
pub const HARMONIC_BALANCE_TOL: f64 = 1e-12;

/// Solves the equation by dense harmonic balance over the cos/sin basis of
/// `g`'s frequencies. Rank-deficient systems are accepted when the deficient
/// rows are unforced; their unknowns are set to zero.
pub fn harmonic_balance_oracle(params: &EquationParams, g: &TrigPoly) -> Result<TrigPoly> {
    let basis = g.basis().clone();
    // Unknowns: (frequency, is_sine).
    let mut unknowns: Vec<(Frequency, bool)> = Vec::new();
    for (f, _) in g.terms() {
        unknowns.push((f.clone(), false));
        if !f.is_zero() {
            unknowns.push((f.clone(), true));
        }
    }
    let n = unknowns.len();
    if n == 0 {
        return Ok(TrigPoly::zero(basis));
    }
    let read = |p: &TrigPoly, (f, sine): &(Frequency, bool)| {
        let c = p.coefficient(f);
        if *sine {
            c.sin
        } else {
            c.cos
        }
    };
    let mut matrix = vec![vec![0.0; n]; n];
    for (col, u) in unknowns.iter().enumerate() {
        let mut basis_fn = TrigPoly::zero(basis.clone());
        let (c, s) = if u.1 { (0.0, 1.0) } else { (1.0, 0.0) };
        basis_fn.add_term(u.0.coords().to_vec(), c, s)?;
        let image = apply_operator(params, &basis_fn)?;
        for (row, v) in unknowns.iter().enumerate() {
            matrix[row][col] = read(&image, v);
        }
    }
    let rhs: Vec<f64> = unknowns.iter().map(|u| read(g, u)).collect();
    let sol = solve_dense(matrix, rhs, HARMONIC_BALANCE_TOL)?;
    let mut x = TrigPoly::zero(basis);
    for (u, v) in unknowns.iter().zip(&sol.x) {
        let (c, s) = if u.1 { (0.0, *v) } else { (*v, 0.0) };
        x.add_term(u.0.coords().to_vec(), c, s)?;
    }
    Ok(x)
}

/// `(x(t), x(−t), ẋ(t), ẋ(−t))`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SystemState {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

impl SystemState {
    pub fn consistent(x: f64, xdot: f64) -> Self {
        Self {
            x1: x,
            x2: x,
            x3: xdot,
            x4: xdot,
        }
    }

    fn as_array(&self) -> [f64; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    fn from_array(v: [f64; 4]) -> Self {
        Self {
            x1: v[0],
            x2: v[1],
            x3: v[2],
            x4: v[3],
        }
    }
}

/// Matrix of the first-order system `ẋ = A·x + (0, 0, g(t), −g(−t))`.
pub fn system_matrix(params: &EquationParams) -> [[f64; 4]; 4] {
    let (a, b) = (params.a, params.b);
    [
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [-a, -b, 0.0, 0.0],
        [b, a, 0.0, 0.0],
    ]
}

/// Eigenvector matrix for eigenvalues `(α, −α, β, −β)` in the hyperbolic
/// regime (columns are the eigenvectors).
pub fn transformation_matrix(alpha: f64, beta: f64) -> [[f64; 4]; 4] {
    [
        [1.0, -1.0, -1.0, 1.0],
        [-1.0, 1.0, -1.0, 1.0],
        [alpha, alpha, -beta, -beta],
        [alpha, alpha, beta, beta],
    ]
}

/// Coordinates `c` with `P·c = state`. For a state of the form
/// `(u, u, v, v)` these satisfy `c₁ = c₂` and `c₃ = −c₄`.
pub fn eigen_coordinates(params: &EquationParams, state: &SystemState) -> Result<[f64; 4]> {
    let (alpha, beta) = hyperbolic_rates(params)?;
    let p = transformation_matrix(alpha, beta);
    let sol = solve_dense(p.iter().map(|r| r.to_vec()).collect(), state.as_array().to_vec(), 1e-14)?;
    Ok([sol.x[0], sol.x[1], sol.x[2], sol.x[3]])
}

pub fn satisfies_reflection_constraint(c: &[f64; 4], tol: f64) -> bool {
    (c[0] - c[1]).abs() <= tol && (c[2] + c[3]).abs() <= tol
}

fn rhs(a: &[[f64; 4]; 4], g: &TrigPoly, t: f64, s: [f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (o, row) in out.iter_mut().zip(a) {
        *o = row.iter().zip(&s).map(|(m, v)| m * v).sum();
    }
    out[2] += g.evaluate(t);
    out[3] -= g.evaluate(-t);
    out
}

fn rk4_step(a: &[[f64; 4]; 4], g: &TrigPoly, t: f64, s: [f64; 4], h: f64) -> [f64; 4] {
    let add = |s: [f64; 4], k: [f64; 4], w: f64| {
        let mut o = s;
        for i in 0..4 {
            o[i] += w * k[i];
        }
        o
    };
    let k1 = rhs(a, g, t, s);
    let k2 = rhs(a, g, t + 0.5 * h, add(s, k1, 0.5 * h));
    let k3 = rhs(a, g, t + 0.5 * h, add(s, k2, 0.5 * h));
    let k4 = rhs(a, g, t + h, add(s, k3, h));
    let mut o = s;
    for i in 0..4 {
        o[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    o
}

/// Forward (`t = j·h`) and backward (`t = −j·h`) RK4 sweeps from `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemTrajectory {
    pub halfwidth: f64,
    pub step: f64,
    pub forward: Vec<SystemState>,
    pub backward: Vec<SystemState>,
}

impl SystemTrajectory {
    fn assemble(&self, pick: impl Fn(&SystemState) -> f64) -> Result<GridFunction> {
        let n = self.forward.len() - 1;
        let samples = (0..=2 * n)
            .map(|j| {
                if j < n {
                    pick(&self.backward[n - j])
                } else {
                    pick(&self.forward[j - n])
                }
            })
            .collect();
        GridFunction::new(self.halfwidth, self.step, samples)
    }

    /// `x(t)` over `[−T, T]`.
    pub fn x_grid(&self) -> Result<GridFunction> {
        self.assemble(|s| s.x1)
    }

    /// `ẋ(t)` over `[−T, T]`.
    pub fn xdot_grid(&self) -> Result<GridFunction> {
        self.assemble(|s| s.x3)
    }

    /// Largest disagreement between the reflected components carried by one
    /// sweep and the direct components of the other.
    pub fn reflection_defect(&self) -> f64 {
        self.forward
            .iter()
            .zip(&self.backward)
            .map(|(f, b)| {
                (f.x2 - b.x1)
                    .abs()
                    .max((f.x4 - b.x3).abs())
                    .max((b.x2 - f.x1).abs())
                    .max((b.x4 - f.x3).abs())
            })
            .fold(0.0, f64::max)
    }
}

pub fn integrate_system(
    params: &EquationParams,
    g: &TrigPoly,
    x_at_0: f64,
    xdot_at_0: f64,
    halfwidth: f64,
    step: f64,
) -> Result<SystemTrajectory> {
    let n = half_count(halfwidth, step)?;
    let a = system_matrix(params);
    let start = SystemState::consistent(x_at_0, xdot_at_0).as_array();
    let sweep = |h: f64| -> Vec<SystemState> {
        let mut out = Vec::with_capacity(n + 1);
        let mut s = start;
        out.push(SystemState::from_array(s));
        for j in 0..n {
            s = rk4_step(&a, g, j as f64 * h, s, h);
            out.push(SystemState::from_array(s));
        }
        out
    };
    Ok(SystemTrajectory {
        halfwidth,
        step,
        forward: sweep(step),
        backward: sweep(-step),
    })
}

/// Least-squares slope of `ln|v|` against `t`.
pub fn fit_exponential_rate(points: &[(f64, f64)]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, v)| *v != 0.0 && v.is_finite())
        .map(|&(t, v)| (t, v.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::InvalidArgument("need at least two nonzero samples".into()));
    }
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("samples share a single time".into()));
    }
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    /// Upper bound of `sup|x|` over a lower estimate of `sup|g|`.
    pub ratio: f64,
    /// Lower estimate of `sup|x|` over the upper bound of `sup|g|`; a constant
    /// below this is certainly violated.
    pub certified_ratio: f64,
    /// `1/α² + 1/β²`
    pub derived_constant: f64,
    /// `2/α + 1`
    pub classical_constant: f64,
    pub derived_holds: bool,
    pub classical_holds: bool,
}

/// Sample count used for the sup-norm estimates in [`bound_report`].
pub const BOUND_GRID_POINTS: usize = 4096;

pub fn bound_report(params: &EquationParams, g: &TrigPoly, x: &TrigPoly) -> Result<BoundReport> {
    let (alpha, beta) = hyperbolic_rates(params)?;
    let (x_lo, x_hi) = x.sup_norm_bounds(BOUND_GRID_POINTS);
    let (g_lo, g_hi) = g.sup_norm_bounds(BOUND_GRID_POINTS);
    let ratio = if x_hi == 0.0 {
        0.0
    } else if g_lo == 0.0 {
        f64::INFINITY
    } else {
        x_hi / g_lo
    };
    let certified_ratio = if x_lo == 0.0 {
        0.0
    } else if g_hi == 0.0 {
        f64::INFINITY
    } else {
        x_lo / g_hi
    };
    let derived_constant = 1.0 / (alpha * alpha) + 1.0 / (beta * beta);
    let classical_constant = 2.0 / alpha + 1.0;
    Ok(BoundReport {
        ratio,
        certified_ratio,
        derived_constant,
        classical_constant,
        derived_holds: certified_ratio <= derived_constant,
        classical_holds: certified_ratio <= classical_constant,
    })
}

/// One line of the findings file: a constant tested on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    pub a: f64,
    pub b: f64,
    pub forcing_digest: String,
    pub constant: String,
    pub constant_value: f64,
    pub ratio: f64,
    pub verdict: String,
}
