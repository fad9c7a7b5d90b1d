//! The four quantization maps.
//!
//! - `q_c`: the chart-dependent canonical substitution `p_i -> -i hbar d/dq^i`
//!   with coefficients placed left of all derivatives.
//! - `q_ks`: the prequantization map
//!   `f - p_i (df/dp_i) + i hbar (df/dq^i) d/dp_i - i hbar (df/dp_i) d/dq^i`.
//! - `q_tt1`: prequantization gated by the fiber-scaling indicator, so
//!   functions with `X_theta f = 0` quantize to plain multiplication.
//! - `q_tt2`: adds a second gated contribution `-(hbar^2/m) Laplacian` that
//!   repairs the quadratic Hamiltonians.
//!
//! The limit factor `lim g/(g + eps)` is read globally: it is 0 when `g`
//! vanishes identically and 1 otherwise. `tuning_warnings` reports the
//! inputs where that global reading papers over a genuinely mixed case.

use crate::context::PhaseContext;
use crate::diffop::{DerivIndex, DiffOperator};
use crate::error::{Error, Result};
use crate::expr::PhaseFunction;
use crate::number::{c_i, c_rat};
use crate::poly::Poly;
use crate::symplectic::{hamiltonian_vf, laplace_beltrami, tautological_vf, Metric, MetricBase};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapKind {
    /// Chart-dependent canonical substitution.
    C,
    /// Prequantization (Kostant-Souriau).
    KS,
    /// First tuned map.
    TT1,
    /// Second tuned map, with the Laplacian correction.
    TT2,
}

impl MapKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c" | "qc" => Some(MapKind::C),
            "ks" | "qks" => Some(MapKind::KS),
            "tt1" | "qtt1" => Some(MapKind::TT1),
            "tt2" | "qtt2" => Some(MapKind::TT2),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            MapKind::C => "C",
            MapKind::KS => "KS",
            MapKind::TT1 => "TT1",
            MapKind::TT2 => "TT2",
        }
    }
}

/// Configuration shared by the maps. Only `TT2` consumes the metric and the
/// mass symbol; the others ignore them.
#[derive(Clone, Debug)]
pub struct QuantizationConfig {
    pub kind: MapKind,
    /// Metric feeding the Laplacian; defaults to the flat identity on
    /// phase space.
    pub metric: Option<Metric>,
    /// Parameter dividing `hbar^2` in the Laplacian term.
    pub mass_symbol: String,
    pub hbar_symbol: String,
    /// Emit `tuning_warnings` alongside results in front ends.
    pub strict: bool,
}

impl QuantizationConfig {
    pub fn new(kind: MapKind) -> Self {
        QuantizationConfig {
            kind,
            metric: None,
            mass_symbol: "m".into(),
            hbar_symbol: "hbar".into(),
            strict: false,
        }
    }
}

/// Global reading of `lim g/(g + eps)`: 0 iff `g` vanishes identically.
pub fn tuning_indicator(g: &PhaseFunction) -> u8 {
    if g.is_identically_zero() {
        0
    } else {
        1
    }
}

/// A tuning factor whose global and pointwise readings can disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct TuningWarning {
    pub factor: &'static str,
    pub message: String,
}

fn factor_warning(name: &'static str, g: &PhaseFunction) -> Option<TuningWarning> {
    // "Nowhere zero" for our rational class: no phase-variable dependence in
    // the (canonical, nonzero) numerator. Anything phase-dependent vanishes
    // somewhere, so the pointwise limit differs from the global reading on
    // that locus.
    if g.is_identically_zero() || g.is_parameter_only() {
        return None;
    }
    Some(TuningWarning {
        factor: name,
        message: format!(
            "indicator argument {g} vanishes on part of phase space; the global reading (1) \
             and the pointwise limit disagree there"
        ),
    })
}

fn hbar_fn(ctx: &PhaseContext, symbol: &str) -> Result<PhaseFunction> {
    Ok(PhaseFunction::var(ctx, ctx.param(symbol)?))
}

fn i_hbar(ctx: &PhaseContext, symbol: &str) -> Result<PhaseFunction> {
    Ok(hbar_fn(ctx, symbol)?.scale(&c_i()))
}

/// Prequantization with the default `hbar` symbol.
pub fn q_ks(f: &PhaseFunction) -> Result<DiffOperator> {
    q_ks_with(f, "hbar")
}

pub fn q_ks_with(f: &PhaseFunction, hbar_symbol: &str) -> Result<DiffOperator> {
    let ctx = f.context();
    let ih = i_hbar(ctx, hbar_symbol)?;
    let x_theta_f = tautological_vf(ctx).apply(f)?;
    let scalar = f.sub(&x_theta_f);
    let field = hamiltonian_vf(f).as_operator().scale(&ih);
    Ok(DiffOperator::from_function(&scalar).add(&field))
}

/// First tuned map: prequantization gated by `X_theta f`.
pub fn q_tt1(f: &PhaseFunction) -> Result<DiffOperator> {
    q_tt1_with(f, "hbar")
}

pub fn q_tt1_with(f: &PhaseFunction, hbar_symbol: &str) -> Result<DiffOperator> {
    let ctx = f.context();
    let g = tautological_vf(ctx).apply(f)?;
    if tuning_indicator(&g) == 0 {
        return Ok(DiffOperator::from_function(f));
    }
    // With the gate open this is exactly prequantization:
    // f + (i hbar X_f - X_theta f).
    q_ks_with(f, hbar_symbol)
}

/// Second tuned map.
pub fn q_tt2(f: &PhaseFunction, cfg: &QuantizationConfig) -> Result<DiffOperator> {
    let ctx = f.context();
    let ih = i_hbar(ctx, &cfg.hbar_symbol)?;
    let hbar = hbar_fn(ctx, &cfg.hbar_symbol)?;
    let mass = PhaseFunction::var(ctx, ctx.param(&cfg.mass_symbol)?);
    let default_metric;
    let metric = match &cfg.metric {
        Some(m) => m,
        None => {
            default_metric = Metric::flat(ctx, MetricBase::PhaseSpace);
            &default_metric
        }
    };

    let x_theta = tautological_vf(ctx);
    let g1x = x_theta.apply(f)?;
    let g2x = x_theta.apply(&g1x)?;
    let first_factor = g1x.add(&g1x).sub(&g2x); // 2 X_theta f - X_theta^2 f
    let second_factor = g2x.sub(&g1x); // X_theta^2 f - X_theta f

    let mut op = DiffOperator::from_function(f);
    if tuning_indicator(&first_factor) == 1 {
        let field = hamiltonian_vf(f).as_operator().scale(&ih);
        op = op.add(&field).sub(&DiffOperator::from_function(&g1x));
    }
    if tuning_indicator(&second_factor) == 1 {
        let lap = laplace_beltrami(metric)?;
        let lap_coeff = hbar.mul(&hbar).div(&mass).scale(&c_rat(-1, 2));
        let half = c_rat(1, 2);
        op = op
            .add(&lap.scale(&lap_coeff))
            .sub(&DiffOperator::from_function(&g2x.scale(&half)))
            .add(&DiffOperator::from_function(&g1x.scale(&half)));
    }
    Ok(op)
}

/// Chart-dependent canonical map: each monomial `c(q) p^a` becomes
/// `c(q) (-i hbar)^{|a|} (d/dq)^a`, coefficients left of derivatives.
pub fn q_c(f: &PhaseFunction) -> Result<DiffOperator> {
    q_c_with(f, "hbar")
}

pub fn q_c_with(f: &PhaseFunction, hbar_symbol: &str) -> Result<DiffOperator> {
    let ctx = f.context();
    let n = ctx.n();
    let nv = ctx.nvars();
    let den_has_momenta = f
        .denominator()
        .support()
        .iter()
        .any(|&i| ctx.is_momentum(crate::context::Var(i)));
    if den_has_momenta {
        return Err(Error::NotPolynomialInMomenta);
    }
    let hbar = hbar_fn(ctx, hbar_symbol)?;
    let minus_ih = hbar.scale(&c_i()).neg();
    let den = PhaseFunction::from_polys(ctx, f.denominator().clone(), Poly::one(nv))?;
    let mut op = DiffOperator::zero(ctx);
    for (m, c) in f.numerator().terms() {
        let mut idx = DerivIndex::identity(n);
        let mut rest = m.clone();
        let mut order = 0u32;
        for i in 0..n {
            let e = m.0[n + i];
            idx.dq[i] = e;
            rest.0[n + i] = 0;
            order += e;
        }
        let coeff_poly = Poly::term(nv, rest, c.clone());
        let mut coeff = PhaseFunction::from_polys(ctx, coeff_poly, Poly::one(nv))?.div(&den);
        if order > 0 {
            coeff = coeff.mul(&minus_ih.pow(order));
        }
        op = op.add(&DiffOperator::from_terms(ctx, [(idx, coeff)]));
    }
    Ok(op)
}

/// Dispatch on the configured map kind.
pub fn quantize(f: &PhaseFunction, cfg: &QuantizationConfig) -> Result<DiffOperator> {
    match cfg.kind {
        MapKind::C => q_c_with(f, &cfg.hbar_symbol),
        MapKind::KS => q_ks_with(f, &cfg.hbar_symbol),
        MapKind::TT1 => q_tt1_with(f, &cfg.hbar_symbol),
        MapKind::TT2 => q_tt2(f, cfg),
    }
}

/// Diagnostics for the indicator factors of the tuned maps.
pub fn tuning_warnings(f: &PhaseFunction, kind: MapKind) -> Vec<TuningWarning> {
    let ctx = f.context();
    let x_theta = tautological_vf(ctx);
    let g1 = match x_theta.apply(f) {
        Ok(g) => g,
        Err(_) => return Vec::new(),
    };
    match kind {
        MapKind::C | MapKind::KS => Vec::new(),
        MapKind::TT1 => factor_warning("X_theta f", &g1).into_iter().collect(),
        MapKind::TT2 => {
            let g2 = x_theta.apply(&g1).expect("same context");
            let first = g1.add(&g1).sub(&g2);
            let second = g2.sub(&g1);
            let mut out = Vec::new();
            if let Some(w) = factor_warning("2 X_theta f - X_theta^2 f", &first) {
                out.push(w);
            }
            if let Some(w) = factor_warning("X_theta^2 f - X_theta f", &second) {
                out.push(w);
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(ctx: &PhaseContext, s: &str) -> PhaseFunction {
        PhaseFunction::parse(s, ctx).unwrap()
    }

    fn op(ctx: &PhaseContext, terms: &[(&str, Vec<u32>, Vec<u32>)]) -> DiffOperator {
        DiffOperator::from_terms(
            ctx,
            terms.iter().map(|(c, dq, dp)| {
                (DerivIndex { dq: dq.clone(), dp: dp.clone() }, pf(ctx, c))
            }),
        )
    }

    #[test]
    fn indicator_examples() {
        let ctx = PhaseContext::new(1).unwrap();
        let xt = tautological_vf(&ctx);
        assert_eq!(tuning_indicator(&xt.apply(&pf(&ctx, "q1")).unwrap()), 0);
        assert_eq!(tuning_indicator(&xt.apply(&pf(&ctx, "p1")).unwrap()), 1);
        // (2 X_theta - X_theta^2) H_SHO = 0: weight 2*2 - 4 on the kinetic
        // part, 0 on the potential.
        let h = pf(&ctx, "p1^2/(2*m) + (m*omega^2*q1^2)/2");
        let g1 = xt.apply(&h).unwrap();
        let g2 = xt.apply(&g1).unwrap();
        assert_eq!(tuning_indicator(&g1.add(&g1).sub(&g2)), 0);
        assert_eq!(tuning_indicator(&g2.sub(&g1)), 1);
    }

    #[test]
    fn ks_on_coordinates() {
        let ctx = PhaseContext::new(2).unwrap();
        assert_eq!(
            q_ks(&pf(&ctx, "q1")).unwrap(),
            op(&ctx, &[("q1", vec![0, 0], vec![0, 0]), ("i*hbar", vec![0, 0], vec![1, 0])])
        );
        assert_eq!(
            q_ks(&pf(&ctx, "p2")).unwrap(),
            op(&ctx, &[("-i*hbar", vec![0, 1], vec![0, 0])])
        );
    }

    #[test]
    fn ks_on_angular_momentum_and_sho() {
        let ctx = PhaseContext::new(3).unwrap();
        let l3 = pf(&ctx, "q1*p2 - q2*p1");
        let expected = op(
            &ctx,
            &[
                ("i*hbar*p2", vec![0, 0, 0], vec![1, 0, 0]),
                ("-i*hbar*p1", vec![0, 0, 0], vec![0, 1, 0]),
                ("i*hbar*q2", vec![1, 0, 0], vec![0, 0, 0]),
                ("-i*hbar*q1", vec![0, 1, 0], vec![0, 0, 0]),
            ],
        );
        assert_eq!(q_ks(&l3).unwrap(), expected);

        let ctx1 = PhaseContext::new(1).unwrap();
        let h = pf(&ctx1, "p1^2/(2*m) + (m*omega^2*q1^2)/2");
        let expected = op(
            &ctx1,
            &[
                ("-p1^2/(2*m) + (m*omega^2*q1^2)/2", vec![0], vec![0]),
                ("-i*hbar*p1/m", vec![1], vec![0]),
                ("i*hbar*m*omega^2*q1", vec![0], vec![1]),
            ],
        );
        assert_eq!(q_ks(&h).unwrap(), expected);
    }

    #[test]
    fn tt1_gates_the_position_map() {
        let ctx = PhaseContext::new(2).unwrap();
        let q1 = pf(&ctx, "q1");
        assert_eq!(q_tt1(&q1).unwrap(), DiffOperator::from_function(&q1));
        assert_eq!(q_tt1(&pf(&ctx, "p1")).unwrap(), q_ks(&pf(&ctx, "p1")).unwrap());
        let l3 = pf(&ctx, "q1*p2 - q2*p1");
        assert_eq!(q_tt1(&l3).unwrap(), q_ks(&l3).unwrap());
        let ctx1 = PhaseContext::new(1).unwrap();
        let h = pf(&ctx1, "p1^2/(2*m) + (m*omega^2*q1^2)/2");
        assert_eq!(q_tt1(&h).unwrap(), q_ks(&h).unwrap());
    }

    #[test]
    fn tt2_on_the_paper_corpus() {
        let cfg = QuantizationConfig::new(MapKind::TT2);
        let ctx = PhaseContext::new(1).unwrap();
        let q1 = pf(&ctx, "q1");
        assert_eq!(q_tt2(&q1, &cfg).unwrap(), DiffOperator::from_function(&q1));
        assert_eq!(
            q_tt2(&pf(&ctx, "p1"), &cfg).unwrap(),
            op(&ctx, &[("-i*hbar", vec![1], vec![0])])
        );
        let h = pf(&ctx, "p1^2/(2*m) + (m*omega^2*q1^2)/2");
        let expected = op(
            &ctx,
            &[
                ("(m*omega^2*q1^2)/2", vec![0], vec![0]),
                ("-hbar^2/(2*m)", vec![2], vec![0]),
                ("-hbar^2/(2*m)", vec![0], vec![2]),
            ],
        );
        assert_eq!(q_tt2(&h, &cfg).unwrap(), expected);
        // Free particle: pure Laplacian term.
        let fp = pf(&ctx, "p1^2/(2*m)");
        let expected_fp = op(
            &ctx,
            &[("-hbar^2/(2*m)", vec![2], vec![0]), ("-hbar^2/(2*m)", vec![0], vec![2])],
        );
        assert_eq!(q_tt2(&fp, &cfg).unwrap(), expected_fp);
    }

    #[test]
    fn qc_substitution_and_ordering() {
        let ctx = PhaseContext::new(2).unwrap();
        assert_eq!(
            q_c(&pf(&ctx, "p1")).unwrap(),
            op(&ctx, &[("-i*hbar", vec![1, 0], vec![0, 0])])
        );
        assert_eq!(
            q_c(&pf(&ctx, "p1^2/(2*m)")).unwrap(),
            op(&ctx, &[("-hbar^2/(2*m)", vec![2, 0], vec![0, 0])])
        );
        // Coefficient-left ordering: q1 p1 -> -i hbar q1 d/dq1, which
        // differs from the p-left ordering by the commutator term.
        let mixed = q_c(&pf(&ctx, "q1*p1")).unwrap();
        assert_eq!(mixed, op(&ctx, &[("-i*hbar*q1", vec![1, 0], vec![0, 0])]));
        let p_left = DiffOperator::derivative(&ctx, ctx.q(0))
            .unwrap()
            .scale(&pf(&ctx, "-i*hbar"))
            .compose(&DiffOperator::from_function(&pf(&ctx, "q1")))
            .unwrap();
        assert_ne!(mixed, p_left);
        assert_eq!(p_left.sub(&mixed), op(&ctx, &[("-i*hbar", vec![0, 0], vec![0, 0])]));
        // Rational q-dependence is allowed; momenta in the denominator are not.
        assert!(q_c(&pf(&ctx, "p1/q1")).is_ok());
        assert_eq!(q_c(&pf(&ctx, "1/p1")), Err(Error::NotPolynomialInMomenta));
    }

    #[test]
    fn strict_mode_reports_mixed_inputs() {
        let ctx = PhaseContext::new(1).unwrap();
        // Pure states of definite fiber weight stay quiet under TT1 gating
        // only when the factor vanishes; p1 itself is flagged because the
        // pointwise limit dies on the zero section.
        assert!(tuning_warnings(&pf(&ctx, "q1"), MapKind::TT1).is_empty());
        assert_eq!(tuning_warnings(&pf(&ctx, "p1"), MapKind::TT1).len(), 1);
        // Mixed homogeneity: p^2 + p opens both TT2 gates.
        let mixed = pf(&ctx, "p1^2 + p1");
        let warnings = tuning_warnings(&mixed, MapKind::TT2);
        assert_eq!(warnings.len(), 2);
        // H_SHO only opens the second gate.
        let h = pf(&ctx, "p1^2/(2*m) + (m*omega^2*q1^2)/2");
        let warnings = tuning_warnings(&h, MapKind::TT2);
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].factor, "X_theta^2 f - X_theta f");
        assert!(tuning_warnings(&h, MapKind::KS).is_empty());
    }

    #[test]
    fn mixed_homogeneity_opens_both_gates() {
        let ctx = PhaseContext::new(1).unwrap();
        let cfg = QuantizationConfig::new(MapKind::TT2);
        let mixed = pf(&ctx, "p1^2 + p1");
        let xt = tautological_vf(&ctx);
        let g1 = xt.apply(&mixed).unwrap();
        let g2 = xt.apply(&g1).unwrap();
        assert_eq!(tuning_indicator(&g1.add(&g1).sub(&g2)), 1);
        assert_eq!(tuning_indicator(&g2.sub(&g1)), 1);
        // Still computes an operator; no claim is made about it.
        assert!(!q_tt2(&mixed, &cfg).unwrap().is_zero());
    }
}
