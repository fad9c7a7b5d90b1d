//! Cotangent-lifted coordinate transformations.
//!
//! A point transformation `Q^i = F^i(q)` with a user-supplied rational
//! inverse lifts to phase space with the momentum rule
//! `P_i = sum_j (dq^j/dQ^i) p_j`, the unique extension preserving the
//! tautological one-form. The new chart reuses the context's variable
//! slots: after a pushforward, `q1` reads as the first new coordinate.
//!
//! Pushforwards rewrite coefficients by substitution and derivatives by the
//! chain rule, so `apply(push(A), push(f)) = push(apply(A, f))` exactly.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::context::PhaseContext;
use crate::diffop::{DerivIndex, DiffOperator};
use crate::error::{Error, Result};
use crate::expr::PhaseFunction;
use crate::number::c_real;

/// Invertible rational transformation of the base manifold.
#[derive(Clone, Debug)]
pub struct PointTransformation {
    ctx: PhaseContext,
    /// `Q^i` as functions of the `q` slots.
    forward: Vec<PhaseFunction>,
    /// `q^j` as functions of the `Q` slots.
    inverse: Vec<PhaseFunction>,
    name: String,
}

impl PointTransformation {
    pub fn new(
        ctx: &PhaseContext,
        name: &str,
        forward: Vec<PhaseFunction>,
        inverse: Vec<PhaseFunction>,
    ) -> Result<Self> {
        let n = ctx.n();
        if forward.len() != n || inverse.len() != n {
            return Err(Error::InvalidTransformation(format!(
                "expected {n} forward and {n} inverse components"
            )));
        }
        for f in forward.iter().chain(&inverse) {
            if f.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            if f.support().iter().any(|v| ctx.is_momentum(*v)) {
                return Err(Error::InvalidTransformation(
                    "point transformations must not involve momenta".into(),
                ));
            }
        }
        let t = PointTransformation {
            ctx: ctx.clone(),
            forward,
            inverse,
            name: name.to_string(),
        };
        // Jacobian must not be identically singular.
        if t.jacobian_det()?.is_zero() {
            return Err(Error::SingularJacobian);
        }
        // Round trips must be the identity exactly.
        for j in 0..n {
            let fwd_then_inv = t.inverse[j].substitute(&t.binding_q(&t.forward))?;
            if fwd_then_inv != PhaseFunction::var(ctx, ctx.q(j)) {
                return Err(Error::InverseMismatch);
            }
            let inv_then_fwd = t.forward[j].substitute(&t.binding_q(&t.inverse))?;
            if inv_then_fwd != PhaseFunction::var(ctx, ctx.q(j)) {
                return Err(Error::InverseMismatch);
            }
        }
        Ok(t)
    }

    fn binding_q(&self, values: &[PhaseFunction]) -> BTreeMap<crate::context::Var, PhaseFunction> {
        values
            .iter()
            .enumerate()
            .map(|(i, v)| (self.ctx.q(i), v.clone()))
            .collect()
    }

    pub fn context(&self) -> &PhaseContext {
        &self.ctx
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn forward(&self) -> &[PhaseFunction] {
        &self.forward
    }

    pub fn inverse(&self) -> &[PhaseFunction] {
        &self.inverse
    }

    fn jacobian_det(&self) -> Result<PhaseFunction> {
        let n = self.ctx.n();
        let mut rows = Vec::with_capacity(n);
        for f in &self.forward {
            let mut row = Vec::with_capacity(n);
            for k in 0..n {
                row.push(f.differentiate(self.ctx.q(k))?);
            }
            rows.push(row);
        }
        Ok(det(&self.ctx, &rows))
    }

    /// The identity map.
    pub fn identity(ctx: &PhaseContext) -> Result<Self> {
        let vars: Vec<_> = (0..ctx.n()).map(|i| PhaseFunction::var(ctx, ctx.q(i))).collect();
        Self::new(ctx, "identity", vars.clone(), vars)
    }

    /// Uniform dilation `Q^i = c q^i` for a nonzero rational `c`.
    pub fn scaling(ctx: &PhaseContext, c: BigRational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidTransformation("scale factor must be nonzero".into()));
        }
        let cf = PhaseFunction::constant(ctx, c_real(c.clone()));
        let inv = PhaseFunction::constant(ctx, c_real(BigRational::new(1.into(), 1.into()) / c));
        let forward: Vec<_> =
            (0..ctx.n()).map(|i| PhaseFunction::var(ctx, ctx.q(i)).mul(&cf)).collect();
        let inverse: Vec<_> =
            (0..ctx.n()).map(|i| PhaseFunction::var(ctx, ctx.q(i)).mul(&inv)).collect();
        Self::new(ctx, "scale", forward, inverse)
    }

    /// Quadratic shear `Q1 = q1, Q2 = q2 + q1^2` (identity beyond the
    /// first two coordinates). Requires `n >= 2`.
    pub fn shear(ctx: &PhaseContext) -> Result<Self> {
        if ctx.n() < 2 {
            return Err(Error::InvalidTransformation("shear needs n >= 2".into()));
        }
        let q1 = PhaseFunction::var(ctx, ctx.q(0));
        let q2 = PhaseFunction::var(ctx, ctx.q(1));
        let sq = q1.mul(&q1);
        let mut forward: Vec<_> = (0..ctx.n()).map(|i| PhaseFunction::var(ctx, ctx.q(i))).collect();
        let mut inverse = forward.clone();
        forward[1] = q2.add(&sq);
        inverse[1] = q2.sub(&sq);
        Self::new(ctx, "shear", forward, inverse)
    }

    /// Rotation of the first two coordinates by an exact rational point on
    /// the unit circle: `(cos, sin)` with `cos^2 + sin^2 = 1`.
    pub fn rotation2d(ctx: &PhaseContext, cos: BigRational, sin: BigRational) -> Result<Self> {
        if ctx.n() < 2 {
            return Err(Error::InvalidTransformation("rotation needs n >= 2".into()));
        }
        if &cos * &cos + &sin * &sin != BigRational::new(1.into(), 1.into()) {
            return Err(Error::InvalidTransformation(
                "rotation entries must satisfy cos^2 + sin^2 = 1".into(),
            ));
        }
        let a = PhaseFunction::constant(ctx, c_real(cos));
        let b = PhaseFunction::constant(ctx, c_real(sin));
        let q1 = PhaseFunction::var(ctx, ctx.q(0));
        let q2 = PhaseFunction::var(ctx, ctx.q(1));
        let mut forward: Vec<_> = (0..ctx.n()).map(|i| PhaseFunction::var(ctx, ctx.q(i))).collect();
        let mut inverse = forward.clone();
        forward[0] = a.mul(&q1).sub(&b.mul(&q2));
        forward[1] = b.mul(&q1).add(&a.mul(&q2));
        inverse[0] = a.mul(&q1).add(&b.mul(&q2));
        inverse[1] = a.mul(&q2).sub(&b.mul(&q1));
        Self::new(ctx, "rotate2d", forward, inverse)
    }
}

/// A point transformation together with its induced momentum rules, stored
/// as substitution bindings in both directions.
#[derive(Clone, Debug)]
pub struct CotangentLift {
    base: PointTransformation,
    /// Every old variable expressed in the new chart.
    push_bindings: BTreeMap<crate::context::Var, PhaseFunction>,
    /// Every new variable expressed in the old chart.
    pull_bindings: BTreeMap<crate::context::Var, PhaseFunction>,
    /// `P_i` in old coordinates (for diagnostics and the one-form check).
    momenta_in_old: Vec<PhaseFunction>,
}

impl CotangentLift {
    pub fn new(base: PointTransformation) -> Result<Self> {
        let ctx = base.context().clone();
        let n = ctx.n();

        // dq^j/dQ^i as functions of the new chart, then moved to the old
        // chart by substituting Q = F(q).
        let to_old = base.binding_q(&base.forward);
        let to_new = base.binding_q(&base.inverse);

        // P_i(q, p) = sum_j (dG^j/dQ^i)(F(q)) p_j.
        let mut momenta_in_old = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = PhaseFunction::zero(&ctx);
            for j in 0..n {
                let d = base.inverse[j].differentiate(ctx.q(i))?;
                let d_old = d.substitute(&to_old)?;
                acc = acc.add(&d_old.mul(&PhaseFunction::var(&ctx, ctx.p(j))));
            }
            momenta_in_old.push(acc);
        }

        // p_k(Q, P) = sum_i (dF^i/dq^k)(G(Q)) P_i.
        let mut old_momenta_in_new = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = PhaseFunction::zero(&ctx);
            for i in 0..n {
                let d = base.forward[i].differentiate(ctx.q(k))?;
                let d_new = d.substitute(&to_new)?;
                acc = acc.add(&d_new.mul(&PhaseFunction::var(&ctx, ctx.p(i))));
            }
            old_momenta_in_new.push(acc);
        }

        let mut push_bindings = BTreeMap::new();
        let mut pull_bindings = BTreeMap::new();
        for j in 0..n {
            push_bindings.insert(ctx.q(j), base.inverse[j].clone());
            push_bindings.insert(ctx.p(j), old_momenta_in_new[j].clone());
            pull_bindings.insert(ctx.q(j), base.forward[j].clone());
            pull_bindings.insert(ctx.p(j), momenta_in_old[j].clone());
        }

        let lift = CotangentLift { base, push_bindings, pull_bindings, momenta_in_old };

        // One-form preservation: sum_i P_i dQ^i = sum_j p_j dq^j, i.e.
        // sum_i P_i(q,p) (dF^i/dq^k) = p_k for every k.
        for k in 0..n {
            let mut acc = PhaseFunction::zero(&ctx);
            for i in 0..n {
                let d = lift.base.forward[i].differentiate(ctx.q(k))?;
                acc = acc.add(&lift.momenta_in_old[i].mul(&d));
            }
            if acc != PhaseFunction::var(&ctx, ctx.p(k)) {
                return Err(Error::OneFormViolation);
            }
        }
        Ok(lift)
    }

    pub fn context(&self) -> &PhaseContext {
        self.base.context()
    }

    pub fn base(&self) -> &PointTransformation {
        &self.base
    }

    /// New momenta written in the old chart.
    pub fn momenta_in_old(&self) -> &[PhaseFunction] {
        &self.momenta_in_old
    }

    /// Bindings substituting every old variable by its new-chart expression.
    pub fn push_bindings(&self) -> &BTreeMap<crate::context::Var, PhaseFunction> {
        &self.push_bindings
    }

    pub fn pull_bindings(&self) -> &BTreeMap<crate::context::Var, PhaseFunction> {
        &self.pull_bindings
    }

    /// Re-express a function in the new chart.
    pub fn pushforward_function(&self, f: &PhaseFunction) -> Result<PhaseFunction> {
        f.substitute(&self.push_bindings)
    }

    /// Re-express a new-chart function in the old chart.
    pub fn pullback_function(&self, f: &PhaseFunction) -> Result<PhaseFunction> {
        f.substitute(&self.pull_bindings)
    }

    /// Chain-rule image of a single base derivative, as a first-order
    /// operator in the new chart.
    fn base_derivative_image(&self, v: crate::context::Var) -> Result<DiffOperator> {
        let ctx = self.context();
        let n = ctx.n();
        let mut terms = Vec::new();
        for i in 0..n {
            // d(Q^i)/dv: forward components only depend on q.
            let dq = self.base.forward[i].differentiate(v)?;
            if !dq.is_zero() {
                let mut idx = DerivIndex::identity(n);
                idx.dq[i] = 1;
                terms.push((idx, self.pushforward_function(&dq)?));
            }
            let dp = self.momenta_in_old[i].differentiate(v)?;
            if !dp.is_zero() {
                let mut idx = DerivIndex::identity(n);
                idx.dp[i] = 1;
                terms.push((idx, self.pushforward_function(&dp)?));
            }
        }
        Ok(DiffOperator::from_terms(ctx, terms))
    }

    /// Conjugate an operator by the lift: coefficients are substituted and
    /// each derivative is expanded by the chain rule, then normal-ordered.
    pub fn pushforward_operator(&self, a: &DiffOperator) -> Result<DiffOperator> {
        let ctx = self.context();
        if a.context() != ctx {
            return Err(Error::ContextMismatch);
        }
        let n = ctx.n();
        let mut images: Vec<Option<DiffOperator>> = vec![None; 2 * n];
        let mut out = DiffOperator::zero(ctx);
        for (idx, coeff) in a.terms() {
            let mut acc = DiffOperator::from_function(&self.pushforward_function(coeff)?);
            let mut fold = |slot: usize, var: crate::context::Var, count: u32, acc: &mut DiffOperator| -> Result<()> {
                if count == 0 {
                    return Ok(());
                }
                if images[slot].is_none() {
                    images[slot] = Some(self.base_derivative_image(var)?);
                }
                let w = images[slot].as_ref().unwrap();
                for _ in 0..count {
                    *acc = acc.compose(w)?;
                }
                Ok(())
            };
            for (i, &e) in idx.dq.iter().enumerate() {
                fold(i, ctx.q(i), e, &mut acc)?;
            }
            for (i, &e) in idx.dp.iter().enumerate() {
                fold(n + i, ctx.p(i), e, &mut acc)?;
            }
            out = out.add(&acc);
        }
        Ok(out)
    }
}

fn det(ctx: &PhaseContext, m: &[Vec<PhaseFunction>]) -> PhaseFunction {
    let d = m.len();
    if d == 0 {
        return PhaseFunction::one(ctx);
    }
    if d == 1 {
        return m[0][0].clone();
    }
    let mut acc = PhaseFunction::zero(ctx);
    for j in 0..d {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<PhaseFunction>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&det(ctx, &sub));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Resolve a transformation by CLI name: `identity`, `shear`, `scale(c)`,
/// `rotate2d(cos,sin)`. Bare `scale` defaults to 2; bare `rotate2d` to
/// the (3/5, 4/5) point.
pub fn builtin_transformation(ctx: &PhaseContext, spec: &str) -> Result<PointTransformation> {
    let spec = spec.trim();
    let (head, args) = match spec.find('(') {
        Some(open) if spec.ends_with(')') => {
            (&spec[..open], Some(&spec[open + 1..spec.len() - 1]))
        }
        _ => (spec, None),
    };
    let parse_rat = |s: &str| -> Result<BigRational> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<num_bigint::BigInt> {
            t.trim().parse().map_err(|_| {
                Error::InvalidTransformation(format!("`{t}` is not an integer"))
            })
        };
        match s.split_once('/') {
            Some((a, b)) => {
                let d = parse_int(b)?;
                if d.is_zero() {
                    return Err(Error::InvalidTransformation("zero denominator".into()));
                }
                Ok(BigRational::new(parse_int(a)?, d))
            }
            None => Ok(BigRational::from_integer(parse_int(s)?)),
        }
    };
    match head {
        "identity" => PointTransformation::identity(ctx),
        "shear" => PointTransformation::shear(ctx),
        "scale" => {
            let c = match args {
                Some(a) if !a.trim().is_empty() => parse_rat(a)?,
                _ => BigRational::from_integer(2.into()),
            };
            PointTransformation::scaling(ctx, c)
        }
        "rotate2d" => {
            let (cos, sin) = match args {
                Some(a) if !a.trim().is_empty() => {
                    let parts: Vec<&str> = a.split(',').collect();
                    if parts.len() != 2 {
                        return Err(Error::InvalidTransformation(
                            "rotate2d takes two rational entries".into(),
                        ));
                    }
                    (parse_rat(parts[0])?, parse_rat(parts[1])?)
                }
                _ => (BigRational::new(3.into(), 5.into()), BigRational::new(4.into(), 5.into())),
            };
            PointTransformation::rotation2d(ctx, cos, sin)
        }
        other => Err(Error::InvalidTransformation(format!("unknown transformation `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::tautological_vf;

    fn pf(ctx: &PhaseContext, s: &str) -> PhaseFunction {
        PhaseFunction::parse(s, ctx).unwrap()
    }

    fn shear_lift(ctx: &PhaseContext) -> CotangentLift {
        CotangentLift::new(PointTransformation::shear(ctx).unwrap()).unwrap()
    }

    #[test]
    fn identity_lift_is_identity() {
        let ctx = PhaseContext::new(2).unwrap();
        let lift = CotangentLift::new(PointTransformation::identity(&ctx).unwrap()).unwrap();
        let f = pf(&ctx, "q1*p2 - q2*p1");
        assert_eq!(lift.pushforward_function(&f).unwrap(), f);
        assert_eq!(lift.momenta_in_old()[0], pf(&ctx, "p1"));
    }

    #[test]
    fn shear_momentum_rule() {
        let ctx = PhaseContext::new(2).unwrap();
        let lift = shear_lift(&ctx);
        // P1 = p1 - 2 q1 p2 (and q1 = Q1), P2 = p2.
        assert_eq!(lift.momenta_in_old()[0], pf(&ctx, "p1 - 2*q1*p2"));
        assert_eq!(lift.momenta_in_old()[1], pf(&ctx, "p2"));
        // Pushforwards of coordinates.
        assert_eq!(lift.pushforward_function(&pf(&ctx, "q1")).unwrap(), pf(&ctx, "q1"));
        assert_eq!(
            lift.pushforward_function(&pf(&ctx, "q2")).unwrap(),
            pf(&ctx, "q2 - q1^2")
        );
        assert_eq!(lift.pushforward_function(&pf(&ctx, "p2")).unwrap(), pf(&ctx, "p2"));
        assert_eq!(
            lift.pushforward_function(&pf(&ctx, "p1")).unwrap(),
            pf(&ctx, "p1 + 2*q1*p2")
        );
    }

    #[test]
    fn rotation_momenta_rotate_the_same_way() {
        let ctx = PhaseContext::new(2).unwrap();
        let t = PointTransformation::rotation2d(
            &ctx,
            BigRational::new(3.into(), 5.into()),
            BigRational::new(4.into(), 5.into()),
        )
        .unwrap();
        let lift = CotangentLift::new(t).unwrap();
        // For orthogonal maps the momenta transform by the same matrix.
        assert_eq!(
            lift.momenta_in_old()[0],
            pf(&ctx, "(3/5)*p1 - (4/5)*p2")
        );
        assert_eq!(
            lift.momenta_in_old()[1],
            pf(&ctx, "(4/5)*p1 + (3/5)*p2")
        );
    }

    #[test]
    fn round_trip_function() {
        let ctx = PhaseContext::new(2).unwrap();
        let lift = shear_lift(&ctx);
        let f = pf(&ctx, "q2^2*p1 + p2^3/q1 - 5");
        let pushed = lift.pushforward_function(&f).unwrap();
        let back = lift.pullback_function(&pushed).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn invalid_transformations_are_rejected() {
        let ctx = PhaseContext::new(2).unwrap();
        // Wrong inverse.
        let bad = PointTransformation::new(
            &ctx,
            "bad",
            vec![pf(&ctx, "q1 + q2"), pf(&ctx, "q2")],
            vec![pf(&ctx, "q1"), pf(&ctx, "q2")],
        );
        assert_eq!(bad.err(), Some(Error::InverseMismatch));
        // Singular Jacobian.
        let sing = PointTransformation::new(
            &ctx,
            "sing",
            vec![pf(&ctx, "q1"), pf(&ctx, "q1")],
            vec![pf(&ctx, "q1"), pf(&ctx, "q2")],
        );
        assert_eq!(sing.err(), Some(Error::SingularJacobian));
        // Momentum dependence.
        let with_p = PointTransformation::new(
            &ctx,
            "with_p",
            vec![pf(&ctx, "q1 + p1"), pf(&ctx, "q2")],
            vec![pf(&ctx, "q1 - p1"), pf(&ctx, "q2")],
        );
        assert!(matches!(with_p.err(), Some(Error::InvalidTransformation(_))));
        // Bad rotation entries.
        assert!(PointTransformation::rotation2d(
            &ctx,
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 2.into())
        )
        .is_err());
    }

    #[test]
    fn euler_field_is_invariant() {
        let ctx = PhaseContext::new(2).unwrap();
        let expected = tautological_vf(&ctx).as_operator();
        for spec in ["identity", "scale(3)", "rotate2d", "shear"] {
            let lift =
                CotangentLift::new(builtin_transformation(&ctx, spec).unwrap()).unwrap();
            let pushed = lift.pushforward_operator(&expected).unwrap();
            assert_eq!(pushed, expected, "Euler field moved under {spec}");
        }
    }

    #[test]
    fn euler_square_is_invariant_under_shear() {
        let ctx = PhaseContext::new(2).unwrap();
        let xt = tautological_vf(&ctx).as_operator();
        let xt2 = xt.compose(&xt).unwrap();
        let lift = shear_lift(&ctx);
        assert_eq!(lift.pushforward_operator(&xt2).unwrap(), xt2);
    }

    #[test]
    fn linear_chain_rule_under_rotation() {
        let ctx = PhaseContext::new(2).unwrap();
        let t = PointTransformation::rotation2d(
            &ctx,
            BigRational::new(3.into(), 5.into()),
            BigRational::new(4.into(), 5.into()),
        )
        .unwrap();
        let lift = CotangentLift::new(t).unwrap();
        let d1 = DiffOperator::derivative(&ctx, ctx.q(0)).unwrap();
        let pushed = lift.pushforward_operator(&d1).unwrap();
        // d/dq1 = R^1_1 d/dQ1 + R^2_1 d/dQ2.
        let expected = DiffOperator::derivative(&ctx, ctx.q(0))
            .unwrap()
            .scale(&pf(&ctx, "3/5"))
            .add(&DiffOperator::derivative(&ctx, ctx.q(1)).unwrap().scale(&pf(&ctx, "4/5")));
        assert_eq!(pushed, expected);
    }

    #[test]
    fn pushforward_is_natural_on_actions() {
        let ctx = PhaseContext::new(2).unwrap();
        let lift = shear_lift(&ctx);
        let a = DiffOperator::derivative(&ctx, ctx.q(0))
            .unwrap()
            .scale(&pf(&ctx, "p1*q2"))
            .add(&DiffOperator::derivative(&ctx, ctx.p(1)).unwrap().scale(&pf(&ctx, "q1^2")));
        let f = pf(&ctx, "q1*q2 + p2^2");
        let lhs = lift
            .pushforward_operator(&a)
            .unwrap()
            .apply(&lift.pushforward_function(&f).unwrap())
            .unwrap();
        let rhs = lift.pushforward_function(&a.apply(&f).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn builtin_lookup() {
        let ctx = PhaseContext::new(2).unwrap();
        assert!(builtin_transformation(&ctx, "identity").is_ok());
        assert!(builtin_transformation(&ctx, "scale(1/2)").is_ok());
        assert!(builtin_transformation(&ctx, "rotate2d(3/5, 4/5)").is_ok());
        assert!(builtin_transformation(&ctx, "polar").is_err());
        assert!(builtin_transformation(&ctx, "scale(0)").is_err());
    }
}
