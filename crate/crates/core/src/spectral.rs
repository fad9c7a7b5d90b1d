//! Desk-scale numerical checks: finite-difference spectra of polarized
//! second-order operators, and quadrature probes for the norm questions.
//!
//! Exact coefficients are converted to double precision here and nowhere
//! else. The eigensolver is bisection on Sturm sequence counts for the
//! symmetric tridiagonal matrix produced by the central-difference stencil.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::builtins::harmonic_oscillator;
use crate::context::PhaseContext;
use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::expr::{real_value_at, PhaseFunction};
use crate::quantize::{q_tt2, MapKind, QuantizationConfig};

/// Uniform grid on `[-L, L]` with `N` points and pinned (zero) boundary
/// values just outside the retained nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    pub half_width: f64,
    pub points: usize,
    pub dirichlet: bool,
}

impl Grid1D {
    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if points < 3 {
            return Err(Error::InvalidGrid("need at least 3 points".into()));
        }
        if !(half_width > 0.0) {
            return Err(Error::InvalidGrid("half-width must be positive".into()));
        }
        Ok(Grid1D { half_width, points, dirichlet: true })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points as f64 - 1.0)
    }

    pub fn node(&self, k: usize) -> f64 {
        -self.half_width + self.spacing() * k as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(move |k| self.node(k))
    }
}

/// Numeric values for the context parameters, by name.
pub type ParamValues = BTreeMap<String, f64>;

/// Coefficients `(c0, c1, c2)` of `c0 + c1 d/dq + c2 d^2/dq^2` after
/// restriction to the polarized sector. Requires `n = 1`, a
/// polarization-preserving operator, and order at most 2.
pub fn polarized_coefficients(a: &DiffOperator) -> Result<[PhaseFunction; 3]> {
    let ctx = a.context().clone();
    if ctx.n() != 1 {
        return Err(Error::NotOneDimensional(ctx.n()));
    }
    if !a.preserves_polarization() {
        return Err(Error::NotPolarizationPreserving);
    }
    let restricted = a.restrict_to_polarized();
    let order = restricted.order();
    if order > 2 {
        return Err(Error::OrderTooHigh(order as usize));
    }
    let mut out = [
        PhaseFunction::zero(&ctx),
        PhaseFunction::zero(&ctx),
        PhaseFunction::zero(&ctx),
    ];
    for (idx, c) in restricted.terms() {
        out[idx.dq[0] as usize] = c.clone();
    }
    Ok(out)
}

/// Real symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }
}

fn param_point(ctx: &PhaseContext, params: &ParamValues) -> Result<Vec<f64>> {
    let mut values = vec![0.0; ctx.nvars()];
    for v in ctx.param_vars() {
        let name = ctx.name(v);
        match params.get(&name) {
            Some(&x) => values[match ctx.kind(v) {
                crate::context::VarKind::Parameter(_) => v,
                _ => unreachable!(),
            }
            .0] = x,
            None => return Err(Error::UnboundVariable(name)),
        }
    }
    Ok(values)
}

/// Central-difference discretization of the self-adjoint case `c1 = 0`,
/// `c2` a negative real constant: diagonal `c0(q_k) - 2 c2/h^2`,
/// off-diagonal `c2/h^2`.
pub fn discretize(
    coeffs: &[PhaseFunction; 3],
    grid: &Grid1D,
    params: &ParamValues,
) -> Result<Tridiagonal> {
    let ctx = coeffs[0].context().clone();
    if ctx.n() != 1 {
        return Err(Error::NotOneDimensional(ctx.n()));
    }
    if !grid.dirichlet {
        return Err(Error::InvalidGrid("only pinned (Dirichlet) boundaries are supported".into()));
    }
    if !coeffs[1].is_zero() {
        return Err(Error::NonSymmetricCase(
            "first-order coefficient must vanish identically".into(),
        ));
    }
    if !coeffs[2].is_parameter_only() {
        return Err(Error::NonSymmetricCase(
            "second-order coefficient must be a constant".into(),
        ));
    }
    let mut values = param_point(&ctx, params)?;
    let c2 = real_value_at(&coeffs[2], &values)?;
    if !(c2 < 0.0) {
        return Err(Error::NonSymmetricCase(format!(
            "second-order coefficient must be negative, got {c2}"
        )));
    }
    let h = grid.spacing();
    let kin = c2 / (h * h);
    let qslot = ctx.q(0).0;
    let mut diag = Vec::with_capacity(grid.points);
    for q in grid.nodes() {
        values[qslot] = q;
        let c0 = real_value_at(&coeffs[0], &values)?;
        diag.push(c0 - 2.0 * kin);
    }
    Ok(Tridiagonal { diag, off: vec![kin; grid.points - 1] })
}

/// Number of eigenvalues strictly below `x`, by the Sturm sequence signs.
fn count_below(t: &Tridiagonal, x: f64) -> usize {
    let tiny = f64::MIN_POSITIVE;
    let mut count = 0;
    let mut d = 1.0_f64;
    for k in 0..t.dim() {
        let off2 = if k == 0 { 0.0 } else { t.off[k - 1] * t.off[k - 1] };
        d = t.diag[k] - x - off2 / d;
        if d == 0.0 {
            d = tiny;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

const BISECTION_CAP: usize = 200;

/// The `k` smallest eigenvalues, ascending, each within `1e-10` of the
/// true matrix eigenvalue.
pub fn eigen_spectrum(t: &Tridiagonal, k: usize) -> Result<Vec<f64>> {
    assert!(k <= t.dim(), "requested more eigenvalues than the dimension");
    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..t.dim() {
        let r = (if i > 0 { t.off[i - 1].abs() } else { 0.0 })
            + (if i + 1 < t.dim() { t.off[i].abs() } else { 0.0 });
        lo = lo.min(t.diag[i] - r);
        hi = hi.max(t.diag[i] + r);
    }
    let scale = hi.abs().max(lo.abs()).max(1.0);
    let tol = 1e-13 * scale;
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let mut a = lo;
        let mut b = hi;
        let mut iters = 0;
        while b - a > tol {
            let mid = 0.5 * (a + b);
            if count_below(t, mid) > j {
                b = mid;
            } else {
                a = mid;
            }
            iters += 1;
            if iters > BISECTION_CAP {
                return Err(Error::ConvergenceFailure(BISECTION_CAP));
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Eigenvector for an isolated eigenvalue by inverse iteration with a
/// partially pivoted banded solve; normalized in the plain 2-norm.
pub fn eigenvector(t: &Tridiagonal, lambda: f64) -> Result<Vec<f64>> {
    let n = t.dim();
    let scale = t.diag.iter().fold(1.0_f64, |acc, d| acc.max(d.abs()));
    let shift = lambda + 1e-11 * scale;
    let mut v: Vec<f64> = (0..n)
        .map(|i| if i % 2 == 0 { 1.0 } else { -0.5 })
        .collect();
    for _ in 0..3 {
        v = solve_shifted(t, shift, &v)?;
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::ConvergenceFailure(3));
        }
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    Ok(v)
}

/// Solve `(T - shift I) x = b` with partial pivoting on the three bands.
fn solve_shifted(t: &Tridiagonal, shift: f64, b: &[f64]) -> Result<Vec<f64>> {
    let n = t.dim();
    // Row i holds (main, sup1, sup2) at columns (i, i+1, i+2); sub[i] is the
    // entry at row i+1, column i. sup2 is fill-in created by pivoting.
    let mut main: Vec<f64> = t.diag.iter().map(|d| d - shift).collect();
    let mut sub: Vec<f64> = t.off.clone();
    let mut sup1: Vec<f64> = t.off.clone();
    let mut sup2: Vec<f64> = vec![0.0; n.saturating_sub(2)];
    let mut rhs = b.to_vec();
    for i in 0..n - 1 {
        // Pivot between rows i and i+1 on column i.
        if sub[i].abs() > main[i].abs() {
            rhs.swap(i, i + 1);
            let wide = i + 2 < n;
            let row_i = (main[i], sup1[i], if wide { sup2[i] } else { 0.0 });
            let row_j = (sub[i], main[i + 1], if wide { sup1[i + 1] } else { 0.0 });
            main[i] = row_j.0;
            sup1[i] = row_j.1;
            sub[i] = row_i.0;
            main[i + 1] = row_i.1;
            if wide {
                sup2[i] = row_j.2;
                sup1[i + 1] = row_i.2;
            }
        }
        if main[i] == 0.0 {
            main[i] = f64::MIN_POSITIVE;
        }
        let factor = sub[i] / main[i];
        main[i + 1] -= factor * sup1[i];
        if i + 2 < n {
            sup1[i + 1] -= factor * sup2[i];
        }
        rhs[i + 1] -= factor * rhs[i];
    }
    if main[n - 1] == 0.0 {
        main[n - 1] = f64::MIN_POSITIVE;
    }
    // Back substitution.
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        if i + 1 < n {
            acc -= sup1[i] * x[i + 1];
        }
        if i + 2 < n {
            acc -= sup2[i] * x[i + 2];
        }
        x[i] = acc / main[i];
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// Norm probes.
// ---------------------------------------------------------------------------

/// Wave function sampled on the grid: either an exact rational function of
/// `q1` (parameters bound numerically) or the standard Gaussian
/// `exp(-q^2/2)`, which lies outside the rational class.
pub enum WaveFunction<'a> {
    Rational(&'a PhaseFunction, ParamValues),
    GaussianStd,
}

impl WaveFunction<'_> {
    fn sample(&self, q: f64) -> Result<f64> {
        match self {
            WaveFunction::GaussianStd => Ok((-q * q / 2.0).exp()),
            WaveFunction::Rational(f, params) => {
                let ctx = f.context();
                if !f.is_p_free() {
                    return Err(Error::NotPolarizationPreserving);
                }
                let mut values = param_point(ctx, params)?;
                values[ctx.q(0).0] = q;
                real_value_at(f, &values)
            }
        }
    }
}

fn trapezoid(values: &[f64], h: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let inner: f64 = values[1..values.len() - 1].iter().sum();
    h * (0.5 * values[0] + inner + 0.5 * values[values.len() - 1])
}

/// Squared norm over the base: `integral |psi(q)|^2 dq` by the trapezoid
/// rule on the grid.
pub fn q_norm_squared(psi: &WaveFunction<'_>, grid: &Grid1D) -> Result<f64> {
    let mut values = Vec::with_capacity(grid.points);
    for q in grid.nodes() {
        let s = psi.sample(q)?;
        values.push(s * s);
    }
    Ok(trapezoid(&values, grid.spacing()))
}

/// One entry of the phase-space-volume probe.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VolumeProbePoint {
    pub momentum_half_width: f64,
    pub norm_squared: f64,
}

/// Norm of a polarized state against the full phase-space volume, over a
/// momentum box `[-Lp, Lp]`, for each requested half-width. The integrand
/// is constant along `p`, so the result grows linearly in `Lp`: the
/// infinite-volume norm diverges.
pub fn vol_p_probe(
    psi: &WaveFunction<'_>,
    grid: &Grid1D,
    momentum_half_widths: &[f64],
) -> Result<Vec<VolumeProbePoint>> {
    let base = q_norm_squared(psi, grid)?;
    let p_points = 64usize;
    let mut out = Vec::with_capacity(momentum_half_widths.len());
    for &lp in momentum_half_widths {
        let hp = 2.0 * lp / (p_points as f64 - 1.0);
        // The p-slice values are all equal to `base`.
        let values = vec![base; p_points];
        out.push(VolumeProbePoint { momentum_half_width: lp, norm_squared: trapezoid(&values, hp) });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Harmonic-oscillator spectrum report.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GridJson {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub analytic: Vec<f64>,
    pub rel_errors: Vec<f64>,
    pub grid: GridJson,
}

/// Discretized spectrum of the polarized second tuned map applied to the
/// harmonic oscillator, against the analytic levels `(k + 1/2) hbar omega`.
pub fn sho_spectrum_report(grid: &Grid1D, params: &ParamValues, count: usize) -> Result<SpectrumReport> {
    let ctx = PhaseContext::new(1)?;
    let h = harmonic_oscillator(&ctx)?;
    let op = q_tt2(&h, &QuantizationConfig::new(MapKind::TT2))?;
    let coeffs = polarized_coefficients(&op)?;
    let matrix = discretize(&coeffs, grid, params)?;
    let eigenvalues = eigen_spectrum(&matrix, count)?;
    let hbar = *params.get("hbar").ok_or_else(|| Error::UnboundVariable("hbar".into()))?;
    let omega = *params.get("omega").ok_or_else(|| Error::UnboundVariable("omega".into()))?;
    let analytic: Vec<f64> = (0..count).map(|k| (k as f64 + 0.5) * hbar * omega).collect();
    let rel_errors = eigenvalues
        .iter()
        .zip(&analytic)
        .map(|(e, a)| ((e - a) / a).abs())
        .collect();
    Ok(SpectrumReport {
        eigenvalues,
        analytic,
        rel_errors,
        grid: GridJson { n: grid.points, l: grid.half_width },
    })
}

pub fn unit_params() -> ParamValues {
    [("hbar".to_string(), 1.0), ("m".to_string(), 1.0), ("omega".to_string(), 1.0)]
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantize::q_ks;

    fn pf(ctx: &PhaseContext, s: &str) -> PhaseFunction {
        PhaseFunction::parse(s, ctx).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(Grid1D::new(10.0, 2).is_err());
        assert!(Grid1D::new(0.0, 10).is_err());
        let g = Grid1D::new(2.0, 5).unwrap();
        assert_eq!(g.spacing(), 1.0);
        assert_eq!(g.node(0), -2.0);
        assert_eq!(g.node(4), 2.0);
    }

    #[test]
    fn polarized_coefficients_of_the_tuned_oscillator() {
        let ctx = PhaseContext::new(1).unwrap();
        let h = harmonic_oscillator(&ctx).unwrap();
        let op = q_tt2(&h, &QuantizationConfig::new(MapKind::TT2)).unwrap();
        let coeffs = polarized_coefficients(&op).unwrap();
        assert_eq!(coeffs[0], pf(&ctx, "(m*omega^2*q1^2)/2"));
        assert!(coeffs[1].is_zero());
        assert_eq!(coeffs[2], pf(&ctx, "-hbar^2/(2*m)"));

        // Multiplication operator keeps only c0.
        let mul = DiffOperator::from_function(&pf(&ctx, "q1"));
        let coeffs = polarized_coefficients(&mul).unwrap();
        assert_eq!(coeffs[0], pf(&ctx, "q1"));
        assert!(coeffs[1].is_zero() && coeffs[2].is_zero());

        // The tuned momentum operator is first order: (0, -i hbar, 0).
        let p_op = q_tt2(&pf(&ctx, "p1"), &QuantizationConfig::new(MapKind::TT2)).unwrap();
        let coeffs = polarized_coefficients(&p_op).unwrap();
        assert_eq!(coeffs[1], pf(&ctx, "-i*hbar"));

        // Rejections.
        assert_eq!(
            polarized_coefficients(&DiffOperator::from_function(&pf(&ctx, "p1"))),
            Err(Error::NotPolarizationPreserving)
        );
        let ctx2 = PhaseContext::new(2).unwrap();
        let any = DiffOperator::identity(&ctx2);
        assert_eq!(polarized_coefficients(&any), Err(Error::NotOneDimensional(2)));
        // Prequantization of q1^3 is fine, but cubic derivatives are not:
        // build d^3/dq^3 by composing the momentum operator three times.
        let d = q_ks(&pf(&ctx, "p1")).unwrap();
        let d3 = d.compose(&d).unwrap().compose(&d).unwrap();
        assert_eq!(polarized_coefficients(&d3), Err(Error::OrderTooHigh(3)));
    }

    #[test]
    fn discretize_matches_hand_stencil() {
        let ctx = PhaseContext::new(1).unwrap();
        let h = harmonic_oscillator(&ctx).unwrap();
        let op = q_tt2(&h, &QuantizationConfig::new(MapKind::TT2)).unwrap();
        let coeffs = polarized_coefficients(&op).unwrap();
        let grid = Grid1D::new(2.0, 5).unwrap();
        let t = discretize(&coeffs, &grid, &unit_params()).unwrap();
        assert_eq!(t.dim(), 5);
        // Diagonal q_k^2/2 + 1/h^2 with h = 1.
        let expected: Vec<f64> = [-2.0_f64, -1.0, 0.0, 1.0, 2.0]
            .iter()
            .map(|q| q * q / 2.0 + 1.0)
            .collect();
        for (a, b) in t.diag.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-14);
        }
        for o in &t.off {
            assert!((o + 0.5).abs() < 1e-14);
        }

        // Zero potential gives the free stencil.
        let zero = [
            PhaseFunction::zero(&ctx),
            PhaseFunction::zero(&ctx),
            pf(&ctx, "-hbar^2/(2*m)"),
        ];
        let t = discretize(&zero, &grid, &unit_params()).unwrap();
        assert!(t.diag.iter().all(|d| (d - 1.0).abs() < 1e-14));

        // First-order term is rejected.
        let bad = [
            PhaseFunction::zero(&ctx),
            PhaseFunction::one(&ctx),
            pf(&ctx, "-hbar^2/(2*m)"),
        ];
        assert!(matches!(
            discretize(&bad, &grid, &unit_params()),
            Err(Error::NonSymmetricCase(_))
        ));
        // Positive second-order coefficient is rejected.
        let wrong_sign = [
            PhaseFunction::zero(&ctx),
            PhaseFunction::zero(&ctx),
            pf(&ctx, "hbar^2/(2*m)"),
        ];
        assert!(matches!(
            discretize(&wrong_sign, &grid, &unit_params()),
            Err(Error::NonSymmetricCase(_))
        ));
    }

    #[test]
    fn banded_solver_against_residual() {
        // Mildly indefinite matrix forcing pivot swaps.
        let t = Tridiagonal {
            diag: vec![0.1, -2.0, 0.05, 3.0, -0.2, 1.0],
            off: vec![1.5, -0.7, 2.2, 0.9, -1.1],
        };
        let b: Vec<f64> = (0..6).map(|k| (k as f64) - 2.5).collect();
        let shift = 0.013;
        let x = solve_shifted(&t, shift, &b).unwrap();
        for i in 0..6 {
            let mut acc = (t.diag[i] - shift) * x[i];
            if i > 0 {
                acc += t.off[i - 1] * x[i - 1];
            }
            if i + 1 < 6 {
                acc += t.off[i] * x[i + 1];
            }
            assert!((acc - b[i]).abs() < 1e-9, "residual at {i}: {}", acc - b[i]);
        }
    }

    #[test]
    fn eigen_small_cases() {
        let t = Tridiagonal { diag: vec![1.0, 2.0, 3.0], off: vec![0.0, 0.0] };
        let ev = eigen_spectrum(&t, 3).unwrap();
        for (a, b) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-10);
        }
        let t = Tridiagonal { diag: vec![0.0, 0.0], off: vec![1.0] };
        let ev = eigen_spectrum(&t, 2).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-10);
        assert!((ev[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sho_spectrum_levels() {
        let grid = Grid1D::new(10.0, 600).unwrap();
        let report = sho_spectrum_report(&grid, &unit_params(), 6).unwrap();
        for (k, err) in report.rel_errors.iter().enumerate() {
            assert!(*err < 1e-3, "level {k} off by {err}");
        }
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"N\":600"));
        assert!(json.contains("\"eigenvalues\""));
    }

    #[test]
    fn eigenvectors_are_orthogonal_under_trapezoid_weights() {
        let grid = Grid1D::new(10.0, 400).unwrap();
        let ctx = PhaseContext::new(1).unwrap();
        let h = harmonic_oscillator(&ctx).unwrap();
        let op = q_tt2(&h, &QuantizationConfig::new(MapKind::TT2)).unwrap();
        let coeffs = polarized_coefficients(&op).unwrap();
        let t = discretize(&coeffs, &grid, &unit_params()).unwrap();
        let ev = eigen_spectrum(&t, 4).unwrap();
        let vecs: Vec<Vec<f64>> = ev.iter().map(|&l| eigenvector(&t, l).unwrap()).collect();
        let hstep = grid.spacing();
        for i in 0..4 {
            for j in 0..4 {
                let mut products: Vec<f64> =
                    vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).collect();
                // Trapezoid inner product over the grid.
                let first = products[0];
                let last = *products.last().unwrap();
                let sum: f64 = products.drain(..).sum();
                let ip = hstep * (sum - 0.5 * first - 0.5 * last);
                if i == j {
                    assert!(ip > 0.0);
                } else {
                    let scale = hstep; // vectors are 2-norm normalized
                    assert!(ip.abs() < 1e-8 * scale.max(1.0), "({i},{j}) -> {ip}");
                }
            }
        }
    }

    #[test]
    fn gaussian_norm_and_volume_probe() {
        let grid = Grid1D::new(10.0, 2000).unwrap();
        let norm = q_norm_squared(&WaveFunction::GaussianStd, &grid).unwrap();
        let pi_sqrt = std::f64::consts::PI.sqrt();
        assert!((norm - pi_sqrt).abs() < 1e-6, "got {norm}");

        let ctx = PhaseContext::new(1).unwrap();
        let zero = PhaseFunction::zero(&ctx);
        let z = q_norm_squared(&WaveFunction::Rational(&zero, unit_params()), &grid).unwrap();
        assert_eq!(z, 0.0);

        let probe = vol_p_probe(&WaveFunction::GaussianStd, &grid, &[5.0, 10.0, 20.0]).unwrap();
        let r1 = probe[1].norm_squared / probe[0].norm_squared;
        let r2 = probe[2].norm_squared / probe[1].norm_squared;
        assert!((r1 - 2.0).abs() < 1e-6);
        assert!((r2 - 2.0).abs() < 1e-6);
    }

    #[test]
    fn convergence_is_second_order() {
        let params = unit_params();
        let mut errors = Vec::new();
        for n in [250usize, 500, 1000] {
            let grid = Grid1D::new(10.0, n).unwrap();
            let report = sho_spectrum_report(&grid, &params, 1).unwrap();
            errors.push((report.eigenvalues[0] - 0.5).abs());
        }
        let r1 = errors[0] / errors[1];
        let r2 = errors[1] / errors[2];
        assert!((3.5..=4.5).contains(&r1), "ratio {r1}");
        assert!((3.5..=4.5).contains(&r2), "ratio {r2}");
    }
}
