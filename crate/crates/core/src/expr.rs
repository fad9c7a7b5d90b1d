//! Phase-space functions: exact multivariate rational functions.
//!
//! A [`PhaseFunction`] is a reduced fraction of polynomials over the
//! Gaussian rationals in the context's variables. The canonical form
//! divides out the polynomial GCD and scales the denominator monic, with
//! zero stored as `0/1`, so two functions are equal exactly when their
//! parts are componentwise identical.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::context::{PhaseContext, Var, VarKind};
use crate::error::{Error, Result};
use crate::number::{c_int, c_one, Coeff};
use crate::poly::{self, Monomial, Poly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhaseFunction {
    ctx: PhaseContext,
    num: Poly,
    den: Poly,
}

/// Arithmetic dispatch used by the checked entry point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

impl PhaseFunction {
    fn canonical(ctx: PhaseContext, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            let n = ctx.nvars();
            return Ok(PhaseFunction { ctx, num: Poly::zero(n), den: Poly::one(n) });
        }
        let g = poly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if !lc.is_one() {
            let inv = &c_one() / &lc;
            num = num.mul_coeff(&inv);
            den = den.mul_coeff(&inv);
        }
        Ok(PhaseFunction { ctx, num, den })
    }

    pub fn from_polys(ctx: &PhaseContext, num: Poly, den: Poly) -> Result<Self> {
        Self::canonical(ctx.clone(), num, den)
    }

    pub fn zero(ctx: &PhaseContext) -> Self {
        let n = ctx.nvars();
        PhaseFunction { ctx: ctx.clone(), num: Poly::zero(n), den: Poly::one(n) }
    }

    pub fn one(ctx: &PhaseContext) -> Self {
        Self::constant(ctx, c_one())
    }

    pub fn constant(ctx: &PhaseContext, c: Coeff) -> Self {
        let n = ctx.nvars();
        PhaseFunction { ctx: ctx.clone(), num: Poly::constant(n, c), den: Poly::one(n) }
    }

    pub fn int(ctx: &PhaseContext, k: i64) -> Self {
        Self::constant(ctx, c_int(k))
    }

    pub fn var(ctx: &PhaseContext, v: Var) -> Self {
        let n = ctx.nvars();
        PhaseFunction { ctx: ctx.clone(), num: Poly::var(n, v.0), den: Poly::one(n) }
    }

    /// Parse an expression string; see the crate grammar.
    pub fn parse(text: &str, ctx: &PhaseContext) -> Result<Self> {
        crate::parse::parse(text, ctx)
    }

    pub fn context(&self) -> &PhaseContext {
        &self.ctx
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Constant value when the function is constant.
    pub fn constant_value(&self) -> Option<Coeff> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Checked field arithmetic; rejects context mixing and division by zero.
    pub fn arith(kind: ArithKind, a: &Self, b: &Self) -> Result<Self> {
        a.same_ctx(b)?;
        match kind {
            ArithKind::Add => Ok(a.add(b)),
            ArithKind::Sub => Ok(a.sub(b)),
            ArithKind::Mul => Ok(a.mul(b)),
            ArithKind::Div => {
                if b.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(a.div(b))
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::canonical(self.ctx.clone(), num, den).expect("nonzero denominator")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PhaseFunction { ctx: self.ctx.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        Self::canonical(self.ctx.clone(), num, den).expect("nonzero denominator")
    }

    /// Division; panics on a zero divisor (use [`PhaseFunction::arith`] for
    /// the checked version).
    pub fn div(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        assert!(!other.is_zero(), "division by zero");
        let num = self.num.mul(&other.den);
        let den = self.den.mul(&other.num);
        Self::canonical(self.ctx.clone(), num, den).expect("nonzero denominator")
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        Self::canonical(self.ctx.clone(), self.num.mul_coeff(c), self.den.clone())
            .expect("nonzero denominator")
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact partial derivative; only phase variables are admissible.
    pub fn differentiate(&self, v: Var) -> Result<Self> {
        if v.0 >= self.ctx.nvars() {
            return Err(Error::UnknownVariable(format!("#{}", v.0)));
        }
        if !self.ctx.is_phase(v) {
            return Err(Error::ParameterDerivative(self.ctx.name(v)));
        }
        // Quotient rule: (n' d - n d') / d^2.
        let np = self.num.derivative(v.0);
        if self.den.is_one() {
            return Self::canonical(self.ctx.clone(), np, Poly::one(self.ctx.nvars()));
        }
        let dp = self.den.derivative(v.0);
        let num = np.mul(&self.den).sub(&self.num.mul(&dp));
        let den = self.den.mul(&self.den);
        Self::canonical(self.ctx.clone(), num, den)
    }

    /// Simultaneous substitution of phase variables by functions.
    pub fn substitute(&self, bindings: &BTreeMap<Var, PhaseFunction>) -> Result<Self> {
        for (v, g) in bindings {
            if !self.ctx.is_phase(*v) {
                return Err(Error::ParameterSubstitution(self.ctx.name(*v)));
            }
            if g.ctx != self.ctx {
                return Err(Error::ContextMismatch);
            }
        }
        let num = self.subst_poly(&self.num, bindings)?;
        let den = self.subst_poly(&self.den, bindings)?;
        if den.is_zero() {
            let offenders: Vec<String> = self
                .den
                .support()
                .into_iter()
                .map(Var)
                .filter(|v| bindings.contains_key(v))
                .map(|v| self.ctx.name(v))
                .collect();
            return Err(Error::SubstitutionPole(offenders.join(", ")));
        }
        num.same_ctx(&den)?;
        num.div_checked(&den)
    }

    fn div_checked(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.div(other))
    }

    fn subst_poly(&self, p: &Poly, bindings: &BTreeMap<Var, PhaseFunction>) -> Result<PhaseFunction> {
        let nv = self.ctx.nvars();
        // Precompute powers of the substituted values.
        let mut powers: BTreeMap<usize, Vec<PhaseFunction>> = BTreeMap::new();
        for (v, g) in bindings {
            let maxe = p.max_exp(v.0);
            let mut pows = Vec::with_capacity(maxe as usize + 1);
            let mut acc = Self::one(&self.ctx);
            pows.push(acc.clone());
            for _ in 0..maxe {
                acc = acc.mul(g);
                pows.push(acc.clone());
            }
            powers.insert(v.0, pows);
        }
        let mut out = Self::zero(&self.ctx);
        for (m, c) in p.terms() {
            // Unsubstituted part of the monomial stays a single term.
            let mut fixed = Monomial::unit(nv);
            let mut value = Self::constant(&self.ctx, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match powers.get(&i) {
                    Some(pows) => value = value.mul(&pows[e as usize]),
                    None => fixed.0[i] = e,
                }
            }
            if !fixed.is_unit() {
                let mono = PhaseFunction {
                    ctx: self.ctx.clone(),
                    num: Poly::term(nv, fixed, c_one()),
                    den: Poly::one(nv),
                };
                value = value.mul(&mono);
            }
            out = out.add(&value);
        }
        Ok(out)
    }

    /// Exact evaluation; the point must bind every variable that appears.
    pub fn evaluate(&self, point: &BTreeMap<Var, Coeff>) -> Result<Coeff> {
        let nv = self.ctx.nvars();
        let mut values = vec![crate::number::c_zero(); nv];
        let mut bound = vec![false; nv];
        for (v, c) in point {
            values[v.0] = c.clone();
            bound[v.0] = true;
        }
        for poly in [&self.num, &self.den] {
            for i in poly.support() {
                if !bound[i] {
                    return Err(Error::UnboundVariable(self.ctx.name(Var(i))));
                }
            }
        }
        let d = self.den.eval(&values);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        let n = self.num.eval(&values);
        Ok(&n / &d)
    }

    /// Double-precision evaluation at a real point given per-variable values.
    /// Returns `(re, im)`.
    pub fn evaluate_f64(&self, values: &[f64]) -> Result<(f64, f64)> {
        let (dre, dim) = self.den.eval_f64(values);
        let dn = dre * dre + dim * dim;
        if dn == 0.0 {
            return Err(Error::PoleAtPoint);
        }
        let (nre, nim) = self.num.eval_f64(values);
        Ok(((nre * dre + nim * dim) / dn, (nim * dre - nre * dim) / dn))
    }

    /// True exactly when the canonical numerator is the zero polynomial.
    pub fn is_identically_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Variables with nonzero exponent in the canonical form.
    pub fn support(&self) -> Vec<Var> {
        let mut s: Vec<usize> = self.num.support();
        s.extend(self.den.support());
        s.sort_unstable();
        s.dedup();
        s.into_iter().map(Var).collect()
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.num.depends_on(v.0) || self.den.depends_on(v.0)
    }

    /// Free of every momentum variable.
    pub fn is_p_free(&self) -> bool {
        self.support().iter().all(|v| !self.ctx.is_momentum(*v))
    }

    /// Free of every phase variable (a parameter-only expression).
    pub fn is_parameter_only(&self) -> bool {
        self.support().iter().all(|v| !self.ctx.is_phase(*v))
    }

    /// Exact square root, when one exists in the rational function field.
    pub fn sqrt_exact(&self) -> Option<Self> {
        let num = self.num.sqrt_exact()?;
        let den = self.den.sqrt_exact()?;
        Some(Self::canonical(self.ctx.clone(), num, den).expect("nonzero denominator"))
    }
}

// ---------------------------------------------------------------------------
// Formatting. The displayed form re-parses to the same canonical function.
// ---------------------------------------------------------------------------

fn fmt_rat(r: &BigRational, wrap_fraction: bool) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else if wrap_fraction {
        format!("({}/{})", r.numer(), r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign and magnitude used to join terms: pure-real and pure-imaginary
/// coefficients move their sign into the joiner; mixed ones are wrapped.
fn coeff_sign_abs(c: &Coeff) -> (bool, Coeff) {
    if c.im.is_zero() {
        if c.re.is_negative() {
            return (true, -c.clone());
        }
    } else if c.re.is_zero() && c.im.is_negative() {
        return (true, -c.clone());
    }
    (false, c.clone())
}

/// Coefficient text for a nonnegative-normalized coefficient, and whether it
/// must keep a trailing `*` separator when a monomial follows.
fn fmt_coeff_abs(c: &Coeff, has_monomial: bool) -> String {
    if c.im.is_zero() {
        if c.re.is_one() && has_monomial {
            return String::new();
        }
        return fmt_rat(&c.re, has_monomial);
    }
    if c.re.is_zero() {
        if c.im.is_one() {
            return "i".to_string();
        }
        return format!("{}*i", fmt_rat(&c.im, true));
    }
    // Mixed complex constant, parenthesized with inner signs.
    let re = fmt_rat(&c.re, false);
    let (ineg, iabs) = if c.im.is_negative() { (true, -c.im.clone()) } else { (false, c.im.clone()) };
    let istr = if iabs.is_one() { "i".to_string() } else { format!("{}*i", fmt_rat(&iabs, false)) };
    format!("({} {} {})", re, if ineg { "-" } else { "+" }, istr)
}

fn fmt_monomial(ctx: &PhaseContext, m: &Monomial) -> String {
    // Parameters first, then positions, then momenta.
    let mut factors: Vec<(usize, String)> = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let v = Var(i);
        let rank = match ctx.kind(v) {
            VarKind::Parameter(k) => k,
            VarKind::Position(i) => ctx.num_params() + i,
            VarKind::Momentum(i) => ctx.num_params() + ctx.n() + i,
        };
        let name = ctx.name(v);
        let s = if e == 1 { name } else { format!("{name}^{e}") };
        factors.push((rank, s));
    }
    factors.sort_by_key(|(rank, _)| *rank);
    factors.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join("*")
}

pub(crate) fn fmt_poly(ctx: &PhaseContext, p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms_desc().enumerate() {
        let (neg, cabs) = coeff_sign_abs(c);
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = fmt_monomial(ctx, m);
        let cstr = fmt_coeff_abs(&cabs, !mono.is_empty());
        match (cstr.is_empty(), mono.is_empty()) {
            (true, true) => out.push('1'),
            (true, false) => out.push_str(&mono),
            (false, true) => out.push_str(&cstr),
            (false, false) => {
                out.push_str(&cstr);
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}

/// Rescale a fraction by a positive rational so both parts have Gaussian
/// integer coefficients with collective content 1. Display-only.
fn integral_pair(num: &Poly, den: &Poly) -> (Poly, Poly) {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    let mut visit = |p: &Poly| {
        for (_, c) in p.terms() {
            for part in [&c.re, &c.im] {
                if part.is_zero() {
                    continue;
                }
                lcm = lcm.lcm(part.denom());
            }
        }
    };
    visit(num);
    visit(den);
    let scale = BigRational::from_integer(lcm);
    let mut collect = |p: &Poly| {
        for (_, c) in p.terms() {
            for part in [&c.re, &c.im] {
                if part.is_zero() {
                    continue;
                }
                let int = (part * &scale).to_integer();
                gcd = gcd.gcd(&int.abs());
            }
        }
    };
    collect(num);
    collect(den);
    if gcd.is_zero() {
        gcd = BigInt::one();
    }
    let factor = crate::number::c_real(scale / BigRational::from_integer(gcd));
    (num.mul_coeff(&factor), den.mul_coeff(&factor))
}

impl PhaseFunction {
    /// Whether the display needs parentheses when multiplied by a factor.
    pub(crate) fn needs_wrap(&self) -> bool {
        !self.den.is_one() || self.num.num_terms() > 1
    }
}

impl fmt::Display for PhaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_zero() {
            return write!(f, "0");
        }
        if self.den.is_one() {
            return write!(f, "{}", fmt_poly(&self.ctx, &self.num));
        }
        let (num, den) = integral_pair(&self.num, &self.den);
        let num_str = if num.num_terms() > 1 {
            format!("({})", fmt_poly(&self.ctx, &num))
        } else {
            fmt_poly(&self.ctx, &num)
        };
        write!(f, "{}/({})", num_str, fmt_poly(&self.ctx, &den))
    }
}

/// Evaluate at a real point indexed by variable, converting parameters and
/// phase variables alike; `None` entries are an error if the variable occurs.
pub fn real_value_at(f: &PhaseFunction, values: &[f64]) -> Result<f64> {
    let (re, im) = f.evaluate_f64(values)?;
    let scale = 1.0_f64.max(re.abs());
    if im.abs() > 1e-9 * scale {
        return Err(Error::NotReal(im));
    }
    Ok(re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{c_i, c_rat};

    fn ctx2() -> PhaseContext {
        PhaseContext::new(2).unwrap()
    }

    fn pf(ctx: &PhaseContext, s: &str) -> PhaseFunction {
        PhaseFunction::parse(s, ctx).unwrap()
    }

    #[test]
    fn additive_inverse_is_zero() {
        let ctx = ctx2();
        let q1 = PhaseFunction::var(&ctx, ctx.q(0));
        assert!(q1.add(&q1.neg()).is_identically_zero());
    }

    #[test]
    fn gcd_cancellation_in_mul() {
        let ctx = ctx2();
        let p1 = PhaseFunction::var(&ctx, ctx.p(0));
        let q1 = PhaseFunction::var(&ctx, ctx.q(0));
        let ratio = p1.div(&q1);
        assert_eq!(ratio.mul(&q1), p1);
    }

    #[test]
    fn division_reduces_difference_of_squares() {
        let ctx = ctx2();
        let a = pf(&ctx, "q1^2 - p1^2");
        let b = pf(&ctx, "q1 - p1");
        let q = PhaseFunction::arith(ArithKind::Div, &a, &b).unwrap();
        assert_eq!(q, pf(&ctx, "q1 + p1"));
        // Cross-check by evaluation at a few rational points.
        let pts = [(3, 5), (7, 2), (-4, 9), (11, -6)];
        for (x, y) in pts {
            let mut point = BTreeMap::new();
            point.insert(ctx.q(0), c_int(x));
            point.insert(ctx.p(0), c_int(y));
            let lhs = a.evaluate(&point).unwrap();
            let rhs = b.evaluate(&point).unwrap();
            let qv = q.evaluate(&point).unwrap();
            assert_eq!(&lhs / &rhs, qv);
        }
    }

    #[test]
    fn checked_arith_rejects_bad_inputs() {
        let ctx = ctx2();
        let other = PhaseContext::new(3).unwrap();
        let a = PhaseFunction::var(&ctx, ctx.q(0));
        let b = PhaseFunction::var(&other, other.q(0));
        assert_eq!(
            PhaseFunction::arith(ArithKind::Add, &a, &b),
            Err(Error::ContextMismatch)
        );
        let zero = PhaseFunction::zero(&ctx);
        assert_eq!(
            PhaseFunction::arith(ArithKind::Div, &a, &zero),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn derivative_rules() {
        let ctx = PhaseContext::new(3).unwrap();
        let l3 = pf(&ctx, "q1*p2 - q2*p1");
        assert_eq!(l3.differentiate(ctx.p(1)).unwrap(), pf(&ctx, "q1"));
        let c = pf(&ctx, "hbar*m^2");
        assert!(c.differentiate(ctx.q(0)).unwrap().is_identically_zero());
        let err = c.differentiate(ctx.param("m").unwrap());
        assert_eq!(err, Err(Error::ParameterDerivative("m".into())));
        // Quotient rule with shrinking-step difference quotients as oracle.
        let f = pf(&ctx, "p1^2/q1");
        let d = f.differentiate(ctx.q(0)).unwrap();
        assert_eq!(d, pf(&ctx, "-p1^2/q1^2"));
        let mut point = BTreeMap::new();
        point.insert(ctx.q(0), c_int(3));
        point.insert(ctx.p(0), c_int(2));
        let exact = d.evaluate(&point).unwrap();
        let mut prev_err: Option<BigRational> = None;
        for k in [10i64, 100, 1000] {
            let h = c_rat(1, k);
            let mut hi = point.clone();
            hi.insert(ctx.q(0), &c_int(3) + &h);
            let mut lo = point.clone();
            lo.insert(ctx.q(0), &c_int(3) - &h);
            let fd = &(&f.evaluate(&hi).unwrap() - &f.evaluate(&lo).unwrap()) / &(&h + &h);
            let err = (&fd - &exact).re.abs();
            if let Some(p) = prev_err {
                assert!(err < p, "difference quotients must improve");
            }
            prev_err = Some(err);
        }
        let final_err = prev_err.unwrap();
        assert!(final_err < crate::number::rat(1, 100_000));
    }

    #[test]
    fn leibniz_rule_exact() {
        let ctx = ctx2();
        let f = pf(&ctx, "q1^2*p2 + 3");
        let g = pf(&ctx, "p1/q2 - q1");
        let v = ctx.q(0);
        let lhs = f.mul(&g).differentiate(v).unwrap();
        let rhs = f
            .mul(&g.differentiate(v).unwrap())
            .add(&g.mul(&f.differentiate(v).unwrap()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution() {
        let ctx = ctx2();
        let f = pf(&ctx, "p1*q1");
        // Relabeling: swap q1 <-> q2 and p1 <-> p2 simultaneously.
        let mut swap = BTreeMap::new();
        swap.insert(ctx.q(0), PhaseFunction::var(&ctx, ctx.q(1)));
        swap.insert(ctx.p(0), PhaseFunction::var(&ctx, ctx.p(1)));
        assert_eq!(f.substitute(&swap).unwrap(), pf(&ctx, "p2*q2"));

        // Shear target: q2 -> q2 - q1^2.
        let g = pf(&ctx, "q2");
        let mut shear = BTreeMap::new();
        shear.insert(ctx.q(1), pf(&ctx, "q2 - q1^2"));
        assert_eq!(g.substitute(&shear).unwrap(), pf(&ctx, "q2 - q1^2"));

        // Pole: 1/q1 with q1 -> 0.
        let h = pf(&ctx, "1/q1");
        let mut zero = BTreeMap::new();
        zero.insert(ctx.q(0), PhaseFunction::zero(&ctx));
        assert_eq!(h.substitute(&zero), Err(Error::SubstitutionPole("q1".into())));

        // Parameters cannot be substituted.
        let mut bad = BTreeMap::new();
        bad.insert(ctx.param("m").unwrap(), PhaseFunction::one(&ctx));
        assert_eq!(
            f.substitute(&bad),
            Err(Error::ParameterSubstitution("m".into()))
        );
    }

    #[test]
    fn zero_test_catches_hidden_zero() {
        let ctx = ctx2();
        let f = pf(&ctx, "(q1 + p1)*(q1 - p1) - q1^2 + p1^2");
        assert!(f.is_identically_zero());
        assert!(!pf(&ctx, "p1").is_identically_zero());
    }

    #[test]
    fn evaluation() {
        let ctx = PhaseContext::new(3).unwrap();
        let l3 = pf(&ctx, "q1*p2 - q2*p1");
        let mut point = BTreeMap::new();
        point.insert(ctx.q(0), c_int(1));
        point.insert(ctx.q(1), c_int(2));
        point.insert(ctx.q(2), c_int(0));
        point.insert(ctx.p(0), c_int(3));
        point.insert(ctx.p(1), c_int(4));
        point.insert(ctx.p(2), c_int(0));
        assert_eq!(l3.evaluate(&point).unwrap(), c_int(-2));

        let inv = pf(&ctx, "1/q1");
        let mut origin = BTreeMap::new();
        origin.insert(ctx.q(0), c_int(0));
        assert_eq!(inv.evaluate(&origin), Err(Error::PoleAtPoint));

        let missing = pf(&ctx, "q2").evaluate(&origin);
        assert_eq!(missing, Err(Error::UnboundVariable("q2".into())));
    }

    #[test]
    fn display_reparses_and_matches_style() {
        let ctx = ctx2();
        let h = pf(&ctx, "p1^2/(2*m) + (m*omega^2*q1^2)/2");
        let shown = h.to_string();
        assert_eq!(shown, "(m^2*omega^2*q1^2 + p1^2)/(2*m)");
        assert_eq!(pf(&ctx, &shown), h);

        let half = pf(&ctx, "(1/2)*m*omega^2*q1^2");
        assert_eq!(half.to_string(), "(1/2)*m*omega^2*q1^2");

        let ih = pf(&ctx, "i*hbar*p2");
        assert_eq!(ih.to_string(), "i*hbar*p2");

        let mixed = pf(&ctx, "(1 - 2*i)*q1 + 1/2");
        assert_eq!(pf(&ctx, &mixed.to_string()), mixed);

        let neg = pf(&ctx, "-hbar^2/(2*m)");
        assert_eq!(neg.to_string(), "-hbar^2/(2*m)");
        assert_eq!(pf(&ctx, &neg.to_string()), neg);

        assert_eq!(PhaseFunction::zero(&ctx).to_string(), "0");
        assert_eq!(pf(&ctx, "i").scale(&c_i()).to_string(), "-1");
    }
}
