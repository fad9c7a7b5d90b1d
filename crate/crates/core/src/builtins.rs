//! Built-in observables: angular momenta, the harmonic oscillator, and the
//! free particle.

use crate::context::PhaseContext;
use crate::error::{Error, Result};
use crate::expr::PhaseFunction;
use crate::number::c_rat;

/// `L_a = q^b p_c - q^c p_b` with `(a, b, c)` a cyclic permutation of
/// `(1, 2, 3)`; `a` is 1-based. Requires `n >= 3`.
pub fn angular_momentum(ctx: &PhaseContext, a: usize) -> Result<PhaseFunction> {
    if !(1..=3).contains(&a) {
        return Err(Error::UnknownVariable(format!("L{a}")));
    }
    if ctx.n() < 3 {
        return Err(Error::InvalidContext(format!(
            "angular momentum needs n >= 3, got n = {}",
            ctx.n()
        )));
    }
    let (b, c) = match a {
        1 => (1, 2), // 0-based indices of (q2, q3)
        2 => (2, 0),
        _ => (0, 1),
    };
    let qb = PhaseFunction::var(ctx, ctx.q(b));
    let qc = PhaseFunction::var(ctx, ctx.q(c));
    let pb = PhaseFunction::var(ctx, ctx.p(b));
    let pc = PhaseFunction::var(ctx, ctx.p(c));
    Ok(qb.mul(&pc).sub(&qc.mul(&pb)))
}

/// `H_SHO = p1^2/(2m) + (1/2) m omega^2 q1^2`.
pub fn harmonic_oscillator(ctx: &PhaseContext) -> Result<PhaseFunction> {
    let m = PhaseFunction::var(ctx, ctx.param("m")?);
    let omega = PhaseFunction::var(ctx, ctx.param("omega")?);
    let q1 = PhaseFunction::var(ctx, ctx.q(0));
    let p1 = PhaseFunction::var(ctx, ctx.p(0));
    let kinetic = p1.mul(&p1).div(&m.scale(&c_rat(2, 1)));
    let potential = m.mul(&omega).mul(&omega).mul(&q1).mul(&q1).scale(&c_rat(1, 2));
    Ok(kinetic.add(&potential))
}

/// `H_FP = sum_i p_i^2 / (2m)` over all momenta of the context.
pub fn free_particle(ctx: &PhaseContext) -> Result<PhaseFunction> {
    let m = PhaseFunction::var(ctx, ctx.param("m")?);
    let mut acc = PhaseFunction::zero(ctx);
    for i in 0..ctx.n() {
        let p = PhaseFunction::var(ctx, ctx.p(i));
        acc = acc.add(&p.mul(&p));
    }
    Ok(acc.div(&m.scale(&c_rat(2, 1))))
}

/// The named corpus used by round-trip and reproduction checks.
pub fn corpus(ctx: &PhaseContext) -> Result<Vec<(String, PhaseFunction)>> {
    let mut out = Vec::new();
    for i in 0..ctx.n() {
        out.push((ctx.name(ctx.q(i)), PhaseFunction::var(ctx, ctx.q(i))));
        out.push((ctx.name(ctx.p(i)), PhaseFunction::var(ctx, ctx.p(i))));
    }
    if ctx.n() >= 3 {
        for a in 1..=3 {
            out.push((format!("L{a}"), angular_momentum(ctx, a)?));
        }
    }
    out.push(("H_SHO".into(), harmonic_oscillator(ctx)?));
    out.push(("H_FP".into(), free_particle(ctx)?));
    Ok(out)
}
