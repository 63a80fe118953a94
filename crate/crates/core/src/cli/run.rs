//! Solve, verify, and assemble artifacts for one problem.

use crate::cli::findings::forcing_digest;
use crate::cli::problem::{parse_problem, ProblemSpec, SolverMode};
use crate::cli::report::{render_csv, Report};
use crate::error::{Error, Result};
use crate::grid::{green_apply, quadrature_floor, residual_grid, residual_profile, sample, GridFunction, KernelSpec, DEFAULT_TAIL_CUT};
use crate::nonlinear::{picard_solve, picard_solve_from, Criterion, PicardConfig};
use crate::spectral::{bounded_solution, case2_ivp, classify, margins, EquationParams, SpectralData};
use crate::trigpoly::TrigPoly;
use crate::verify::{bound_report, harmonic_balance_oracle, integrate_system, residual_poly, Finding, BOUND_GRID_POINTS};

/// Coefficient-wise agreement required between the closed form and the
/// harmonic-balance solve, relative to `max(1, largest amplitude)`.
pub const HARMONIC_BALANCE_AGREEMENT: f64 = 1e-10;
/// Relative sup-node agreement required from RK4.
pub const RK4_AGREEMENT: f64 = 1e-6;
/// Relative interior agreement required between grid and closed form.
pub const GRID_AGREEMENT: f64 = 1e-4;
/// Relative coefficient-sum bound on the spectral residual.
pub const SPECTRAL_RESIDUAL_AGREEMENT: f64 = 1e-12;

pub const EXIT_OK: u8 = 0;
pub const EXIT_RESONANCE: u8 = 2;
pub const EXIT_NON_CONTRACTIVE: u8 = 3;
pub const EXIT_UNSUPPORTED: u8 = 4;
pub const EXIT_INPUT: u8 = 5;
pub const EXIT_VERIFICATION: u8 = 6;
/// I/O failures writing artifacts.
pub const EXIT_IO: u8 = 1;

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Resonance { .. } => EXIT_RESONANCE,
        Error::NonContractive { .. } | Error::RadiusExceeded { .. } | Error::MaxIterations { .. } => EXIT_NON_CONTRACTIVE,
        Error::UnsupportedCase(_) => EXIT_UNSUPPORTED,
        Error::Verification(_) | Error::SingularSystem(_) => EXIT_VERIFICATION,
        Error::Io(_) => EXIT_IO,
        Error::Parse { .. }
        | Error::Semantic(_)
        | Error::InvalidParams(_)
        | Error::InvalidBasis(_)
        | Error::InvalidArgument(_)
        | Error::InvalidGrid(_)
        | Error::FrequencyNearZero { .. }
        | Error::BasisMismatch => EXIT_INPUT,
    }
}

/// Short status word written to reports for a failed run.
pub fn status_name(err: &Error) -> &'static str {
    match exit_code(err) {
        EXIT_RESONANCE => "resonance",
        EXIT_NON_CONTRACTIVE => "non_contractive",
        EXIT_UNSUPPORTED => "unsupported",
        EXIT_VERIFICATION => "verification_mismatch",
        EXIT_IO => "io_error",
        _ => "input_error",
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub tail_cut: f64,
    pub csv: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            tail_cut: DEFAULT_TAIL_CUT,
            csv: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub report: Report,
    pub csv: Option<String>,
    pub findings: Vec<Finding>,
    /// Every oracle agreed within its tolerance.
    pub verified: bool,
}

impl RunOutcome {
    pub fn exit_code(&self) -> u8 {
        if self.verified {
            EXIT_OK
        } else {
            EXIT_VERIFICATION
        }
    }
}

/// Regime, rates, and forcing identity.
pub fn classification_report(spec: &ProblemSpec) -> Report {
    let mut r = Report::new();
    r.real("a", spec.params.a);
    r.real("b", spec.params.b);
    let regime = classify(&spec.params);
    r.text("regime", regime.name());
    match regime {
        SpectralData::Hyperbolic { alpha, beta } => {
            r.real("rate.alpha", alpha);
            r.real("rate.beta", beta);
        }
        SpectralData::Oscillatory { mu, nu } => {
            r.real("rate.mu", mu);
            r.real("rate.nu", nu);
            if let Ok(m) = margins(&spec.params, &spec.forcing) {
                r.real("margin.theorem_mu", m.theorem_margin_mu);
                r.real("margin.theorem_nu", m.theorem_margin_nu);
                r.real("margin.sharp_odd", m.sharp_margin_odd);
                r.real("margin.sharp_even", m.sharp_margin_even);
                if m.near_resonant() {
                    r.text("warning", "a forced channel is within 1e-3 of its natural rate");
                }
            }
        }
        SpectralData::Mixed { real_rate, imag_rate } => {
            r.real("rate.real", real_rate);
            r.real("rate.imag", imag_rate);
        }
        SpectralData::Degenerate => {}
    }
    r.text("forcing.digest", forcing_digest(&spec.forcing));
    r.text("forcing.terms", spec.forcing.len().to_string());
    r
}

pub fn run(spec: &ProblemSpec, opts: &RunOptions) -> Result<RunOutcome> {
    let mut report = Report::new();
    report.text("mode", spec.solver.mode.name());
    for (k, v) in classification_report(spec).entries() {
        report.text(k, v.clone());
    }
    let mut ctx = Ctx {
        spec,
        report,
        findings: Vec::new(),
        verified: true,
    };
    let csv = match spec.solver.mode {
        SolverMode::Spectral => ctx.spectral(opts)?,
        SolverMode::Grid => ctx.grid(opts)?,
        SolverMode::Picard => ctx.picard(opts)?,
    };
    let Ctx {
        mut report,
        findings,
        verified,
        ..
    } = ctx;
    report.text("findings", findings.len().to_string());
    report.text("verification", if verified { "pass" } else { "fail" });
    report.text("status", if verified { "ok" } else { "verification_mismatch" });
    Ok(RunOutcome {
        report,
        csv,
        findings,
        verified,
    })
}

struct Ctx<'a> {
    spec: &'a ProblemSpec,
    report: Report,
    findings: Vec<Finding>,
    verified: bool,
}

/// RK4 window and step: at most `[−10, 10]`, shortened in the hyperbolic
/// regime so that round-off growth `e^{γt}` stays below `e^{12}`, with
/// `h ≤ min(10⁻³, 0.01/ω)` for the fastest frequency `ω` in play.
fn rk4_window(params: &EquationParams, g: &TrigPoly, halfwidth: f64) -> (f64, f64) {
    let mut t = halfwidth.min(10.0);
    let mut omega = g.max_abs_frequency();
    match classify(params) {
        SpectralData::Hyperbolic { alpha, beta } => {
            t = t.min(12.0 / alpha.max(beta));
            omega = omega.max(alpha).max(beta);
        }
        SpectralData::Oscillatory { mu, nu } => omega = omega.max(mu).max(nu),
        _ => {}
    }
    let h_max = if omega > 0.0 { 1e-3f64.min(0.01 / omega) } else { 1e-3 };
    let n = (t / h_max).ceil().max(1.0);
    (t, t / n)
}

impl Ctx<'_> {
    fn check(&mut self, key: &str, value: f64, limit: f64) {
        self.report.real(key, value);
        let ok = value <= limit;
        self.report.text(&format!("{key}.within"), if ok { "true" } else { "false" });
        self.verified &= ok;
    }

    fn spectral(&mut self, opts: &RunOptions) -> Result<Option<String>> {
        let spec = self.spec;
        let (p, g) = (&spec.params, &spec.forcing);
        let x = bounded_solution(p, g, spec.solver.resonance_tol)?;
        self.report.poly("solution", &x);

        let ivp = match spec.ivp {
            Some(ivp) => {
                let sol = case2_ivp(p, g, ivp.x0, ivp.xdot0, spec.solver.resonance_tol)?;
                self.report.real("homogeneous.sin_mu", sol.sin_mu);
                self.report.real("homogeneous.cos_nu", sol.cos_nu);
                Some(sol)
            }
            None => None,
        };

        // Oracle 1: exact coefficient residual.
        let residual = residual_poly(p, &x, g)?;
        let lmax = g.max_abs_frequency();
        let scale = 1f64
            .max(g.coefficient_sum())
            .max(x.coefficient_sum() * (lmax * lmax + p.a.abs() + p.b.abs()));
        self.check("residual.spectral", residual.coefficient_sum(), SPECTRAL_RESIDUAL_AGREEMENT * scale);

        // Oracle 2: dense harmonic balance.
        let amp = x.terms().map(|(_, c)| c.amplitude()).fold(1.0, f64::max);
        match harmonic_balance_oracle(p, g) {
            Ok(hb) => {
                let diff = x.max_coeff_diff(&hb)?;
                self.check("oracle.harmonic_balance", diff, HARMONIC_BALANCE_AGREEMENT * amp);
            }
            Err(Error::SingularSystem(m)) => {
                self.report.text("oracle.harmonic_balance", format!("singular ({m})"));
                self.verified = false;
            }
            Err(e) => return Err(e),
        }

        // Oracle 3: RK4 on the first-order system.
        let (t_rk, h_rk) = rk4_window(p, g, spec.solver.halfwidth);
        let dx = x.derivative(1);
        let (x0, v0) = match &ivp {
            Some(s) => (s.evaluate(0.0), s.derivative_at(0.0)),
            None => (x.evaluate(0.0), dx.evaluate(0.0)),
        };
        let traj = integrate_system(p, g, x0, v0, t_rk, h_rk)?;
        let exact = match &ivp {
            Some(s) => GridFunction::from_fn(t_rk, h_rk, |t| s.evaluate(t))?,
            None => sample(&x, t_rk, h_rk)?,
        };
        let diff = traj.x_grid()?.max_diff_within(&exact, t_rk)?;
        let size = 1f64.max(exact.sup_norm());
        self.report.real("oracle.rk4_window", t_rk);
        self.report.real("oracle.rk4_step", h_rk);
        self.check("oracle.rk4", diff, RK4_AGREEMENT * size);
        self.check("oracle.rk4_reflection_defect", traj.reflection_defect(), RK4_AGREEMENT * size);

        self.bound_and_hypotheses(&x)?;

        if !opts.csv {
            return Ok(None);
        }
        let (t, h) = (spec.solver.halfwidth, spec.solver.step);
        let n = crate::grid::half_count(t, h)?;
        let rows = (0..=2 * n).map(|j| {
            let tj = (j as f64 - n as f64) * h;
            match &ivp {
                Some(s) => (tj, s.evaluate(tj), s.derivative_at(tj), residual.evaluate(tj)),
                None => (tj, x.evaluate(tj), dx.evaluate(tj), residual.evaluate(tj)),
            }
        });
        Ok(Some(render_csv(rows)))
    }

    fn finding(&mut self, constant: &str, value: f64, ratio: f64, verdict: &str) {
        let spec = self.spec;
        self.findings.push(Finding {
            a: spec.params.a,
            b: spec.params.b,
            forcing_digest: forcing_digest(&spec.forcing),
            constant: constant.to_string(),
            constant_value: value,
            ratio,
            verdict: verdict.to_string(),
        });
    }

    /// Sup-norm constants in the hyperbolic regime; the non-resonance
    /// hypothesis against the sharp, parity-aware condition in the
    /// oscillatory regime.
    fn bound_and_hypotheses(&mut self, x: &TrigPoly) -> Result<()> {
        let spec = self.spec;
        let (p, g) = (&spec.params, &spec.forcing);
        match classify(p) {
            SpectralData::Hyperbolic { .. } => {
                let b = bound_report(p, g, x)?;
                self.report.real("bound.ratio", b.ratio);
                self.report.real("bound.certified_ratio", b.certified_ratio);
                self.report.real("bound.derived_constant", b.derived_constant);
                self.report.real("bound.classical_constant", b.classical_constant);
                self.report.flag("bound.derived_holds", b.derived_holds);
                self.report.flag("bound.classical_holds", b.classical_holds);
                if !b.classical_holds {
                    self.finding("classical_constant", b.classical_constant, b.ratio, "violated");
                    self.report.text(
                        "note",
                        "sup|x| exceeds (2/alpha + 1)·sup|g|; the kernel bound 1/alpha^2 + 1/beta^2 is the one that holds",
                    );
                }
                if !b.derived_holds {
                    self.finding("derived_constant", b.derived_constant, b.ratio, "violated");
                    self.verified = false;
                }
            }
            SpectralData::Oscillatory { .. } => {
                let tol = spec.solver.resonance_tol;
                let hits = |stiffness: f64| {
                    g.terms().any(|(f, _)| {
                        let l2 = f.value() * f.value();
                        (stiffness - l2).abs() < tol * 1f64.max(stiffness.abs()).max(l2)
                    })
                };
                if hits(p.odd_stiffness()) || hits(p.even_stiffness()) {
                    let m = margins(p, g)?;
                    let (x_hi, g_lo) = (x.sup_norm_bounds(BOUND_GRID_POINTS).1, g.sup_norm_bounds(BOUND_GRID_POINTS).0);
                    let ratio = if g_lo > 0.0 { x_hi / g_lo } else { f64::INFINITY };
                    self.finding(
                        "nonresonance_margin",
                        m.theorem_margin_mu.min(m.theorem_margin_nu),
                        ratio,
                        "hypothesis_violated_solution_bounded",
                    );
                    self.report.text(
                        "note",
                        "a forcing frequency equals a natural rate, but only in the channel that carries no forcing at it; \
                         the solution is bounded and almost periodic, contrary to the unboundedness usually inferred from \
                         the rate coincidence",
                    );
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn grid(&mut self, opts: &RunOptions) -> Result<Option<String>> {
        let spec = self.spec;
        let (p, g) = (&spec.params, &spec.forcing);
        let kernel = KernelSpec::new(p, opts.tail_cut).map_err(|e| match e {
            Error::InvalidArgument(m) => Error::Semantic(m),
            other => other,
        })?;
        let (t, h) = (spec.solver.halfwidth, spec.solver.step);
        let gs = sample(g, t, h)?;
        let sol = green_apply(&kernel, &gs)?;
        if sol.interior_halfwidth <= 0.0 {
            return Err(Error::Semantic(format!(
                "T = {t} leaves no interior: the edge layer for tail_cut {} is {}",
                opts.tail_cut,
                kernel.edge_layer()
            )));
        }
        self.report.real("tail_cut", opts.tail_cut);
        self.report.real("grid.interior_halfwidth", sol.interior_halfwidth);
        self.report.real("grid.tail_bound", sol.tail_bound);
        self.report.real("grid.sup_norm", sol.x.sup_norm());
        self.report.real("residual.grid", residual_grid(p, &sol.x, &gs)?);
        self.report.real("residual.quadrature_floor", quadrature_floor(&kernel, &sol.x, &gs));

        let x = bounded_solution(p, g, spec.solver.resonance_tol)?;
        let exact = sample(&x, t, h)?;
        let diff = sol.x.max_diff_within(&exact, sol.interior_halfwidth)?;
        self.check("oracle.spectral_interior", diff, GRID_AGREEMENT * 1f64.max(exact.sup_norm()));
        self.bound_and_hypotheses(&x)?;

        if !opts.csv {
            return Ok(None);
        }
        Ok(Some(grid_csv(p, &sol.x, &gs)?))
    }

    fn picard(&mut self, opts: &RunOptions) -> Result<Option<String>> {
        let spec = self.spec;
        let p = &spec.params;
        let Some(nl) = &spec.nonlinearity else {
            return Err(Error::Semantic("mode = picard requires a [nonlinearity] section".into()));
        };
        let cfg = PicardConfig {
            tol: spec.solver.tol,
            max_iter: spec.solver.max_iter,
            halfwidth: spec.solver.halfwidth,
            step: spec.solver.step,
            tail_cut: opts.tail_cut,
        };
        let (x, rep) = picard_solve(p, nl, &cfg)?;
        let r = &mut self.report;
        r.real("tail_cut", opts.tail_cut);
        r.real("picard.lipschitz", rep.lipschitz);
        r.real("picard.radius", nl.radius);
        r.real("picard.classical_threshold", rep.check.classical_threshold);
        r.real("picard.derived_threshold", rep.check.derived_threshold);
        r.flag("picard.classical_ok", rep.check.classical_ok);
        r.flag("picard.derived_ok", rep.check.derived_ok);
        r.text(
            "picard.governing",
            match rep.governing {
                Criterion::Derived => "derived",
                Criterion::Classical => "classical",
            },
        );
        r.real("picard.governing_rate", rep.governing_rate);
        r.text("picard.iterations", rep.iterations.to_string());
        r.real("picard.final_increment", rep.final_increment);
        r.real("picard.interior_halfwidth", rep.interior_halfwidth);
        r.real("picard.sup_norm", rep.sup_norm);
        r.real("residual.quadrature_floor", rep.residual_floor);

        self.check("residual.grid", rep.residual, (10.0 * cfg.tol).max(rep.residual_floor));
        self.check("picard.measured_rate", rep.measured_rate, rep.governing_rate + 0.05);

        // Second start: the fixed point halved, still inside the ball.
        let q = rep.governing_rate;
        let (x2, _) = picard_solve_from(p, nl, &cfg, &x.map(|v| 0.5 * v))?;
        let restart_limit = 2.0 * cfg.tol * 1f64.max(q / (1.0 - q));
        self.check("oracle.restart", x2.max_diff_within(&x, f64::INFINITY)?, restart_limit);

        if let Some((c, d)) = nl.linear_part() {
            let shifted = EquationParams::new(p.a - c, p.b - d);
            let closed = shifted.and_then(|s| bounded_solution(&s, &nl.forcing, spec.solver.resonance_tol).map(|x| (s, x)));
            match closed {
                Ok((s, cx)) if matches!(classify(&s), SpectralData::Hyperbolic { .. }) => {
                    let exact = sample(&cx, cfg.halfwidth, cfg.step)?;
                    let diff = x.max_diff_within(&exact, rep.interior_halfwidth)?;
                    self.report.poly("picard.closed_form", &cx);
                    self.check("oracle.closed_form_interior", diff, GRID_AGREEMENT * 1f64.max(exact.sup_norm()));
                }
                _ => self.report.text("oracle.closed_form_interior", "n/a"),
            }
        }

        if !opts.csv {
            return Ok(None);
        }
        let g_eff = nl.effective_forcing(&x)?;
        Ok(Some(grid_csv(p, &x, &g_eff)?))
    }
}

fn grid_csv(p: &EquationParams, x: &GridFunction, g: &GridFunction) -> Result<String> {
    let dx = x.derivative();
    let res = residual_profile(p, x, g)?;
    Ok(render_csv(
        x.nodes()
            .zip(x.samples())
            .zip(dx.samples())
            .zip(res)
            .map(|(((t, v), d), r)| (t, *v, *d, r)),
    ))
}

/// A bundled demonstration problem.
pub struct DemoCase {
    pub name: &'static str,
    pub problem: &'static str,
}

pub const DEMO_CASES: [DemoCase; 3] = [
    DemoCase {
        name: "example-1",
        problem: "# both channels oscillatory, forcing away from both rates\n\
                  [equation]\na = 4\nb = 2\n\n[basis]\ngenerators = 1\n\n[forcing]\nterm = 1, 0 @ 2\n",
    },
    DemoCase {
        name: "example-2",
        problem: "# forcing frequency equals mu = 1, but cos t only drives the even channel\n\
                  [equation]\na = 2\nb = 1\n\n[basis]\ngenerators = 1\n\n[forcing]\nterm = 1, 0 @ 1\n",
    },
    DemoCase {
        name: "bound-probe",
        problem: "# alpha = 0.1, beta = 1: slow odd channel\n\
                  [equation]\na = -0.505\nb = -0.495\n\n[basis]\ngenerators = 1\n\n[forcing]\nterm = 0, 1 @ 1/20\n",
    },
];

pub struct DemoResult {
    pub name: &'static str,
    pub spec: ProblemSpec,
    pub outcome: RunOutcome,
}

pub fn run_demo(opts: &RunOptions) -> Result<Vec<DemoResult>> {
    DEMO_CASES
        .iter()
        .map(|case| {
            let spec = parse_problem(case.problem)?;
            let outcome = run(&spec, opts)?;
            Ok(DemoResult {
                name: case.name,
                spec,
                outcome,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(text: &str) -> ProblemSpec {
        parse_problem(text).unwrap()
    }

    #[test]
    fn example_one_report() {
        let s = spec(DEMO_CASES[0].problem);
        let out = run(&s, &RunOptions { csv: false, ..Default::default() }).unwrap();
        let r = &out.report;
        assert_eq!(r.get("regime"), Some("Oscillatory"));
        assert_eq!(r.get("residual.spectral"), Some("0.0000000000000000e0"));
        assert_eq!(
            r.get("solution"),
            Some("5.0000000000000000e-1, 0.0000000000000000e0 @ 2")
        );
        let hb: f64 = r.get("oracle.harmonic_balance").unwrap().parse().unwrap();
        assert!(hb <= 1e-12);
        let rk: f64 = r.get("oracle.rk4").unwrap().parse().unwrap();
        assert!(rk <= 1e-6);
        assert!(out.verified && out.findings.is_empty());
        let m_mu: f64 = r.get("margin.theorem_mu").unwrap().parse().unwrap();
        assert!((m_mu - (2.0 - 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn example_two_attaches_finding() {
        let out = run(&spec(DEMO_CASES[1].problem), &RunOptions::default()).unwrap();
        assert_eq!(out.exit_code(), EXIT_OK);
        assert_eq!(out.findings.len(), 1);
        assert_eq!(out.findings[0].constant, "nonresonance_margin");
        assert_eq!(out.findings[0].constant_value, 0.0);
        assert!(out.report.get("note").is_some());
        assert_eq!(out.report.get("margin.theorem_mu"), Some("0.0000000000000000e0"));
    }

    #[test]
    fn bound_probe_records_violation() {
        let out = run(&spec(DEMO_CASES[2].problem), &RunOptions { csv: false, ..Default::default() }).unwrap();
        assert!(out.verified);
        assert_eq!(out.report.get("bound.classical_holds"), Some("false"));
        assert_eq!(out.report.get("bound.derived_holds"), Some("true"));
        let f = &out.findings[0];
        assert_eq!(f.constant, "classical_constant");
        assert!((f.ratio - 80.0).abs() < 1e-6);
        assert!((f.constant_value - 21.0).abs() < 1e-9);
    }

    #[test]
    fn runs_are_deterministic() {
        let s = spec(DEMO_CASES[0].problem);
        let a = run(&s, &RunOptions::default()).unwrap();
        let b = run(&s, &RunOptions::default()).unwrap();
        assert_eq!(a.report.render(), b.report.render());
        assert_eq!(a.csv, b.csv);
        assert_eq!(a.csv.unwrap().lines().count(), 16002);
    }

    #[test]
    fn grid_mode_verifies_against_closed_form() {
        let text = "[equation]\na = -3\nb = 1\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0.5 @ 1\n[solver]\nmode = grid\nT = 30\nh = 0.01\n";
        let out = run(&spec(text), &RunOptions::default()).unwrap();
        assert!(out.verified, "{}", out.report.render());
        let csv = out.csv.unwrap();
        assert!(csv.lines().nth(1).unwrap().ends_with(",nan"));
    }

    #[test]
    fn picard_mode_report() {
        let text = "[equation]\na = -3\nb = 1\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0 @ 1\n[nonlinearity]\nmono = 0.1, 1, 0\nradius = 1\n[solver]\nmode = picard\nT = 30\nh = 0.01\n";
        let out = run(&spec(text), &RunOptions { csv: false, ..Default::default() }).unwrap();
        assert!(out.verified, "{}", out.report.render());
        assert_eq!(out.report.get("picard.governing"), Some("derived"));
        let d: f64 = out.report.get("oracle.closed_form_interior").unwrap().parse().unwrap();
        assert!(d <= 1e-4);
    }

    #[test]
    fn errors_map_to_exit_codes() {
        let resonant = "[equation]\na = 4\nb = 2\n[basis]\ngenerators = 1.4142135623730951\n[forcing]\nterm = 0, 1 @ 1\n";
        let e = run(&spec(resonant), &RunOptions::default()).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_RESONANCE);

        let mixed = "[equation]\na = 1\nb = 3\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0 @ 1\n";
        let e = run(&spec(mixed), &RunOptions::default()).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_UNSUPPORTED);

        let steep = "[equation]\na = -3\nb = 1\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0 @ 1\n[nonlinearity]\nmono = 2, 1, 0\nradius = 1\n[solver]\nmode = picard\nT = 20\nh = 0.01\n";
        let e = run(&spec(steep), &RunOptions::default()).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_NON_CONTRACTIVE);

        let grid_osc = "[equation]\na = 4\nb = 2\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0 @ 2\n[solver]\nmode = grid\n";
        let e = run(&spec(grid_osc), &RunOptions::default()).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_UNSUPPORTED);
    }

    #[test]
    fn ivp_solution_matches_initial_data() {
        let text = "[equation]\na = 4\nb = 2\n[basis]\ngenerators = 1\n[forcing]\nterm = 1, 0 @ 2\n[solver]\nT = 10\nh = 0.01\n[ivp]\nx0 = 1\nxdot0 = 0.3\n";
        let out = run(&spec(text), &RunOptions::default()).unwrap();
        assert!(out.verified, "{}", out.report.render());
        let csv = out.csv.unwrap();
        let mid: Vec<f64> = csv.lines().nth(1001).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(mid[0], 0.0);
        assert!((mid[1] - 1.0).abs() < 1e-14 && (mid[2] - 0.3).abs() < 1e-14);
    }
}
