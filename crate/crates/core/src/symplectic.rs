//! Symplectic structures in canonical coordinates: Hamiltonian vector
//! fields, the Poisson bracket, the tautological one-form pairing, the
//! fiber-scaling (Euler) vector field, and the Laplace-Beltrami operator.
//!
//! Sign conventions follow the coordinate formulas
//! `X_f = -(df/dp_i) d/dq^i + (df/dq^i) d/dp_i` and
//! `{f, g} = sum_i (df/dq^i)(dg/dp_i) - (df/dp_i)(dg/dq^i)`,
//! under which `X_f(g) = {f, g}` and `{q^i, p_i} = 1`.

use serde::Deserialize;

use crate::context::{PhaseContext, Var};
use crate::diffop::{DerivIndex, DiffOperator};
use crate::error::{Error, Result};
use crate::expr::PhaseFunction;

/// A first-order operator with no order-zero part, stored by components.
#[derive(Clone, PartialEq, Debug)]
pub struct VectorField {
    ctx: PhaseContext,
    /// Components on `d/dq^i`.
    q_comps: Vec<PhaseFunction>,
    /// Components on `d/dp_i`.
    p_comps: Vec<PhaseFunction>,
}

impl VectorField {
    pub fn new(
        ctx: &PhaseContext,
        q_comps: Vec<PhaseFunction>,
        p_comps: Vec<PhaseFunction>,
    ) -> Self {
        assert_eq!(q_comps.len(), ctx.n());
        assert_eq!(p_comps.len(), ctx.n());
        VectorField { ctx: ctx.clone(), q_comps, p_comps }
    }

    pub fn context(&self) -> &PhaseContext {
        &self.ctx
    }

    pub fn q_components(&self) -> &[PhaseFunction] {
        &self.q_comps
    }

    pub fn p_components(&self) -> &[PhaseFunction] {
        &self.p_comps
    }

    pub fn is_zero(&self) -> bool {
        self.q_comps.iter().chain(&self.p_comps).all(|c| c.is_zero())
    }

    pub fn as_operator(&self) -> DiffOperator {
        let n = self.ctx.n();
        let mut terms = Vec::new();
        for (i, c) in self.q_comps.iter().enumerate() {
            let mut idx = DerivIndex::identity(n);
            idx.dq[i] = 1;
            terms.push((idx, c.clone()));
        }
        for (i, c) in self.p_comps.iter().enumerate() {
            let mut idx = DerivIndex::identity(n);
            idx.dp[i] = 1;
            terms.push((idx, c.clone()));
        }
        DiffOperator::from_terms(&self.ctx, terms)
    }

    /// Directional derivative of a function along the field.
    pub fn apply(&self, f: &PhaseFunction) -> Result<PhaseFunction> {
        if self.ctx != *f.context() {
            return Err(Error::ContextMismatch);
        }
        let mut acc = PhaseFunction::zero(&self.ctx);
        for (i, c) in self.q_comps.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&f.differentiate(self.ctx.q(i))?));
            }
        }
        for (i, c) in self.p_comps.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&f.differentiate(self.ctx.p(i))?));
            }
        }
        Ok(acc)
    }
}

/// `X_f = -(df/dp_i) d/dq^i + (df/dq^i) d/dp_i`.
pub fn hamiltonian_vf(f: &PhaseFunction) -> VectorField {
    let ctx = f.context().clone();
    let n = ctx.n();
    let mut q_comps = Vec::with_capacity(n);
    let mut p_comps = Vec::with_capacity(n);
    for i in 0..n {
        q_comps.push(f.differentiate(ctx.p(i)).expect("phase variable").neg());
        p_comps.push(f.differentiate(ctx.q(i)).expect("phase variable"));
    }
    VectorField::new(&ctx, q_comps, p_comps)
}

/// `{f, g} = sum_i (df/dq^i)(dg/dp_i) - (df/dp_i)(dg/dq^i)`.
pub fn poisson_bracket(f: &PhaseFunction, g: &PhaseFunction) -> Result<PhaseFunction> {
    let ctx = f.context();
    if *ctx != *g.context() {
        return Err(Error::ContextMismatch);
    }
    let mut acc = PhaseFunction::zero(ctx);
    for i in 0..ctx.n() {
        let a = f.differentiate(ctx.q(i))?.mul(&g.differentiate(ctx.p(i))?);
        let b = f.differentiate(ctx.p(i))?.mul(&g.differentiate(ctx.q(i))?);
        acc = acc.add(&a).sub(&b);
    }
    Ok(acc)
}

/// The fiber-scaling field `sum_i p_i d/dp_i` (the contraction of the
/// Poisson structure with the tautological one-form).
pub fn tautological_vf(ctx: &PhaseContext) -> VectorField {
    let n = ctx.n();
    let zeros = vec![PhaseFunction::zero(ctx); n];
    let ps = (0..n).map(|i| PhaseFunction::var(ctx, ctx.p(i))).collect();
    VectorField::new(ctx, zeros, ps)
}

/// Pairing of the tautological one-form `p_i dq^i` with a vector field:
/// `theta(X) = sum_i p_i a^i` over the `q`-components of `X`.
pub fn theta_contract(x: &VectorField) -> PhaseFunction {
    let ctx = x.context();
    let mut acc = PhaseFunction::zero(ctx);
    for (i, a) in x.q_components().iter().enumerate() {
        acc = acc.add(&PhaseFunction::var(ctx, ctx.p(i)).mul(a));
    }
    acc
}

// ---------------------------------------------------------------------------
// Metrics and the Laplace-Beltrami operator.
// ---------------------------------------------------------------------------

/// Which variables the metric lives on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MetricBase {
    /// All of `q^i, p_i`; the default for the tuned quantization maps.
    PhaseSpace,
    /// The `q^i` only; the option used for norms on the base manifold.
    ConfigSpace,
}

/// Symmetric matrix of phase functions over the chosen variable block.
#[derive(Clone, PartialEq, Debug)]
pub struct Metric {
    ctx: PhaseContext,
    base: MetricBase,
    entries: Vec<Vec<PhaseFunction>>,
    flat_identity: bool,
}

#[derive(Deserialize)]
struct MetricJson(Vec<Vec<String>>);

impl Metric {
    /// Flat identity metric on the chosen variable block.
    pub fn flat(ctx: &PhaseContext, base: MetricBase) -> Self {
        let d = match base {
            MetricBase::PhaseSpace => 2 * ctx.n(),
            MetricBase::ConfigSpace => ctx.n(),
        };
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            PhaseFunction::one(ctx)
                        } else {
                            PhaseFunction::zero(ctx)
                        }
                    })
                    .collect()
            })
            .collect();
        Metric { ctx: ctx.clone(), base, entries, flat_identity: true }
    }

    pub fn new(
        ctx: &PhaseContext,
        base: MetricBase,
        entries: Vec<Vec<PhaseFunction>>,
    ) -> Result<Self> {
        let d = match base {
            MetricBase::PhaseSpace => 2 * ctx.n(),
            MetricBase::ConfigSpace => ctx.n(),
        };
        if entries.len() != d || entries.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidMetric(format!("expected a {d}x{d} matrix")));
        }
        for row in &entries {
            for e in row {
                if e.context() != ctx {
                    return Err(Error::ContextMismatch);
                }
                if base == MetricBase::ConfigSpace && !e.is_p_free() {
                    return Err(Error::InvalidMetric(
                        "configuration-space metric entries must be free of momenta".into(),
                    ));
                }
            }
        }
        for i in 0..d {
            for j in (i + 1)..d {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidMetric(format!(
                        "entry ({i},{j}) differs from ({j},{i})"
                    )));
                }
            }
        }
        let metric = Metric { ctx: ctx.clone(), base, entries, flat_identity: false };
        if metric.determinant().is_zero() {
            return Err(Error::SingularMetric);
        }
        let flat = metric.is_identity();
        Ok(Metric { flat_identity: flat, ..metric })
    }

    /// Parse a JSON matrix of expression strings.
    pub fn from_json(ctx: &PhaseContext, base: MetricBase, json: &str) -> Result<Self> {
        let raw: MetricJson = serde_json::from_str(json)
            .map_err(|e| Error::InvalidMetric(format!("bad JSON: {e}")))?;
        let entries = raw
            .0
            .into_iter()
            .map(|row| row.iter().map(|s| PhaseFunction::parse(s, ctx)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Metric::new(ctx, base, entries)
    }

    fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() })
        })
    }

    pub fn context(&self) -> &PhaseContext {
        &self.ctx
    }

    pub fn base(&self) -> MetricBase {
        self.base
    }

    pub fn is_flat_identity(&self) -> bool {
        self.flat_identity
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Variables the metric indices run over.
    pub fn vars(&self) -> Vec<Var> {
        match self.base {
            MetricBase::PhaseSpace => self.ctx.phase_vars(),
            MetricBase::ConfigSpace => self.ctx.q_vars(),
        }
    }

    pub fn determinant(&self) -> PhaseFunction {
        det(&self.ctx, &self.entries)
    }

    /// Inverse matrix entries via the adjugate.
    pub fn inverse(&self) -> Result<Vec<Vec<PhaseFunction>>> {
        let d = self.dim();
        let detv = self.determinant();
        if detv.is_zero() {
            return Err(Error::SingularMetric);
        }
        let mut inv = vec![vec![PhaseFunction::zero(&self.ctx); d]; d];
        for i in 0..d {
            for j in 0..d {
                let c = cofactor(&self.ctx, &self.entries, j, i);
                inv[i][j] = c.div(&detv);
            }
        }
        Ok(inv)
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
        let sub = minor(m, 0, j);
        let term = m[0][j].mul(&det(ctx, &sub));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn minor(m: &[Vec<PhaseFunction>], row: usize, col: usize) -> Vec<Vec<PhaseFunction>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect()
}

fn cofactor(ctx: &PhaseContext, m: &[Vec<PhaseFunction>], row: usize, col: usize) -> PhaseFunction {
    let sub = minor(m, row, col);
    let d = det(ctx, &sub);
    if (row + col) % 2 == 0 {
        d
    } else {
        d.neg()
    }
}

/// The divergence-form Laplacian
/// `f -> (1/sqrt|g|) d_mu ( sqrt|g| g^{mu nu} d_nu f )`
/// expanded into normal form. The analyst sign is used, so the flat
/// identity metric gives `+ sum d^2`.
pub fn laplace_beltrami(metric: &Metric) -> Result<DiffOperator> {
    let ctx = metric.context();
    let vars = metric.vars();
    if metric.is_flat_identity() {
        let mut acc = DiffOperator::zero(ctx);
        for v in vars {
            let d = DiffOperator::derivative(ctx, v)?;
            acc = acc.add(&d.compose(&d)?);
        }
        return Ok(acc);
    }
    let detv = metric.determinant();
    if detv.is_zero() {
        return Err(Error::SingularMetric);
    }
    let sqrt_det = detv.sqrt_exact().ok_or(Error::NoRationalSqrt)?;
    let inv = metric.inverse()?;
    let inv_sqrt = PhaseFunction::one(ctx).div(&sqrt_det);
    let mut acc = DiffOperator::zero(ctx);
    for (mu, vmu) in vars.iter().enumerate() {
        let d_mu = DiffOperator::derivative(ctx, *vmu)?;
        let mut inner = DiffOperator::zero(ctx);
        for (nu, vnu) in vars.iter().enumerate() {
            if inv[mu][nu].is_zero() {
                continue;
            }
            let d_nu = DiffOperator::derivative(ctx, *vnu)?;
            inner = inner.add(&d_nu.scale(&sqrt_det.mul(&inv[mu][nu])));
        }
        acc = acc.add(&d_mu.compose(&inner)?.scale(&inv_sqrt));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(ctx: &PhaseContext, s: &str) -> PhaseFunction {
        PhaseFunction::parse(s, ctx).unwrap()
    }

    #[test]
    fn hamiltonian_field_of_angular_momentum() {
        let ctx = PhaseContext::new(3).unwrap();
        let l3 = pf(&ctx, "q1*p2 - q2*p1");
        let x = hamiltonian_vf(&l3);
        assert_eq!(x.q_components()[0], pf(&ctx, "q2"));
        assert_eq!(x.q_components()[1], pf(&ctx, "-q1"));
        assert!(x.q_components()[2].is_zero());
        assert_eq!(x.p_components()[0], pf(&ctx, "p2"));
        assert_eq!(x.p_components()[1], pf(&ctx, "-p1"));
        assert!(x.p_components()[2].is_zero());
        // theta(X_{L3}) = p1 q2 - p2 q1 = -L3.
        assert_eq!(theta_contract(&x), l3.neg());
    }

    #[test]
    fn hamiltonian_field_edge_cases() {
        let ctx = PhaseContext::new(1).unwrap();
        assert!(hamiltonian_vf(&pf(&ctx, "m*omega")).is_zero());
        let h = pf(&ctx, "p1^2/(2*m) + (m*omega^2*q1^2)/2");
        let x = hamiltonian_vf(&h);
        assert_eq!(x.q_components()[0], pf(&ctx, "-p1/m"));
        assert_eq!(x.p_components()[0], pf(&ctx, "m*omega^2*q1"));
    }

    #[test]
    fn poisson_bracket_examples() {
        let ctx = PhaseContext::new(3).unwrap();
        let q1 = pf(&ctx, "q1");
        let p1 = pf(&ctx, "p1");
        assert_eq!(poisson_bracket(&q1, &p1).unwrap(), PhaseFunction::one(&ctx));
        let l1 = pf(&ctx, "q2*p3 - q3*p2");
        let l2 = pf(&ctx, "q3*p1 - q1*p3");
        let l3 = pf(&ctx, "q1*p2 - q2*p1");
        assert_eq!(poisson_bracket(&l1, &l2).unwrap(), l3);
        let f = pf(&ctx, "q1^2*p2 + q3/p1");
        assert!(poisson_bracket(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn tautological_field_weights() {
        let ctx = PhaseContext::new(1).unwrap();
        let xt = tautological_vf(&ctx);
        assert!(xt.apply(&pf(&ctx, "q1")).unwrap().is_zero());
        assert_eq!(xt.apply(&pf(&ctx, "p1")).unwrap(), pf(&ctx, "p1"));
        let h = pf(&ctx, "p1^2/(2*m) + (m*omega^2*q1^2)/2");
        assert_eq!(xt.apply(&h).unwrap(), pf(&ctx, "p1^2/m"));
        // theta pairings of the coordinate fields.
        let dq = VectorField::new(
            &ctx,
            vec![PhaseFunction::one(&ctx)],
            vec![PhaseFunction::zero(&ctx)],
        );
        assert_eq!(theta_contract(&dq), pf(&ctx, "p1"));
        let dp = VectorField::new(
            &ctx,
            vec![PhaseFunction::zero(&ctx)],
            vec![PhaseFunction::one(&ctx)],
        );
        assert!(theta_contract(&dp).is_zero());
    }

    #[test]
    fn flat_laplacian() {
        let ctx = PhaseContext::new(1).unwrap();
        let lap = laplace_beltrami(&Metric::flat(&ctx, MetricBase::PhaseSpace)).unwrap();
        let expected = DiffOperator::from_terms(
            &ctx,
            [
                (DerivIndex { dq: vec![2], dp: vec![0] }, PhaseFunction::one(&ctx)),
                (DerivIndex { dq: vec![0], dp: vec![2] }, PhaseFunction::one(&ctx)),
            ],
        );
        assert_eq!(lap, expected);
        assert_eq!(lap.apply(&pf(&ctx, "q1^2")).unwrap(), pf(&ctx, "2"));
        // Configuration-space metric acts in q only.
        let lap_q = laplace_beltrami(&Metric::flat(&ctx, MetricBase::ConfigSpace)).unwrap();
        assert_eq!(
            lap_q,
            DiffOperator::from_terms(
                &ctx,
                [(DerivIndex { dq: vec![2], dp: vec![0] }, PhaseFunction::one(&ctx))],
            )
        );
    }

    #[test]
    fn curved_diagonal_laplacian_matches_direct_expansion() {
        // g = diag(u(q1)^2, 1) on phase space with u = 1 + q1^2, so
        // sqrt|g| = u and the q1 block carries the divergence correction.
        let ctx = PhaseContext::new(1).unwrap();
        let u = pf(&ctx, "1 + q1^2");
        let entries = vec![
            vec![u.mul(&u), PhaseFunction::zero(&ctx)],
            vec![PhaseFunction::zero(&ctx), PhaseFunction::one(&ctx)],
        ];
        let metric = Metric::new(&ctx, MetricBase::PhaseSpace, entries).unwrap();
        let lap = laplace_beltrami(&metric).unwrap();

        // Direct expansion: (1/u) d_q (u * u^-2 d_q f) + (1/u) d_p (u d_p f).
        let inv_u = PhaseFunction::one(&ctx).div(&u);
        let g11 = inv_u.mul(&inv_u);
        let dq = DiffOperator::derivative(&ctx, ctx.q(0)).unwrap();
        let dp = DiffOperator::derivative(&ctx, ctx.p(0)).unwrap();
        let q_part = dq
            .compose(&dq.scale(&u.mul(&g11)))
            .unwrap()
            .scale(&inv_u);
        let p_part = dp.compose(&dp.scale(&u)).unwrap().scale(&inv_u);
        let expected = q_part.add(&p_part);
        assert_eq!(lap, expected);
        // The correction term is present: coefficient of d/dq1 is
        // (1/u) d_q(u^-1) = -2 q1 / u^3.
        let idx = DerivIndex { dq: vec![1], dp: vec![0] };
        assert_eq!(lap.coefficient(&idx), pf(&ctx, "-2*q1/(1 + q1^2)^3"));
    }

    #[test]
    fn metric_validation() {
        let ctx = PhaseContext::new(1).unwrap();
        // Asymmetric.
        let bad = Metric::new(
            &ctx,
            MetricBase::PhaseSpace,
            vec![
                vec![PhaseFunction::one(&ctx), pf(&ctx, "q1")],
                vec![PhaseFunction::zero(&ctx), PhaseFunction::one(&ctx)],
            ],
        );
        assert!(matches!(bad, Err(Error::InvalidMetric(_))));
        // Singular.
        let sing = Metric::new(
            &ctx,
            MetricBase::PhaseSpace,
            vec![
                vec![pf(&ctx, "q1"), PhaseFunction::zero(&ctx)],
                vec![PhaseFunction::zero(&ctx), pf(&ctx, "0")],
            ],
        );
        assert_eq!(sing, Err(Error::SingularMetric));
        // No rational square root of the determinant.
        let bad_det = Metric::new(
            &ctx,
            MetricBase::PhaseSpace,
            vec![
                vec![pf(&ctx, "q1"), PhaseFunction::zero(&ctx)],
                vec![PhaseFunction::zero(&ctx), PhaseFunction::one(&ctx)],
            ],
        )
        .unwrap();
        assert_eq!(laplace_beltrami(&bad_det), Err(Error::NoRationalSqrt));
        // JSON input.
        let json = r#"[["1 + q1^2", "0"], ["0", "1"]]"#;
        let m = Metric::from_json(&ctx, MetricBase::PhaseSpace, json).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(!m.is_flat_identity());
        let flat = Metric::from_json(&ctx, MetricBase::PhaseSpace, r#"[["1","0"],["0","1"]]"#)
            .unwrap();
        assert!(flat.is_flat_identity());
    }

    #[test]
    fn flat_laplacian_commutes_with_rotations() {
        let ctx = PhaseContext::new(2).unwrap();
        let lap = laplace_beltrami(&Metric::flat(&ctx, MetricBase::PhaseSpace)).unwrap();
        // q-rotation generator q1 d/dq2 - q2 d/dq1 and its p counterpart.
        let dq2 = DiffOperator::derivative(&ctx, ctx.q(1)).unwrap();
        let dq1 = DiffOperator::derivative(&ctx, ctx.q(0)).unwrap();
        let rot_q = dq2.scale(&pf(&ctx, "q1")).sub(&dq1.scale(&pf(&ctx, "q2")));
        assert!(lap.commutator(&rot_q).unwrap().is_zero());
        let dp2 = DiffOperator::derivative(&ctx, ctx.p(1)).unwrap();
        let dp1 = DiffOperator::derivative(&ctx, ctx.p(0)).unwrap();
        let rot_p = dp2.scale(&pf(&ctx, "p1")).sub(&dp1.scale(&pf(&ctx, "p2")));
        assert!(lap.commutator(&rot_p).unwrap().is_zero());
    }
}
