//! Normal-ordered linear differential operators on phase space.
//!
//! An operator is a finite sum of terms `coefficient * (d/dq)^a (d/dp)^b`
//! with all coefficients standing to the left of all derivatives. The term
//! map keyed by derivative multi-index *is* the normal form, so operator
//! equality is map equality. Composition redistributes derivatives over
//! coefficients with the generalized Leibniz rule.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::context::{PhaseContext, Var};
use crate::error::{Error, Result};
use crate::expr::PhaseFunction;
use crate::number::{c_from_bigint, Coeff};

/// Pair of derivative multi-indices: orders in the `q` and `p` directions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct DerivIndex {
    pub dq: Vec<u32>,
    pub dp: Vec<u32>,
}

impl DerivIndex {
    pub fn identity(n: usize) -> Self {
        DerivIndex { dq: vec![0; n], dp: vec![0; n] }
    }

    pub fn order(&self) -> u64 {
        self.dq.iter().chain(self.dp.iter()).map(|&e| e as u64).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.order() == 0
    }

    pub fn add(&self, other: &Self) -> Self {
        DerivIndex {
            dq: self.dq.iter().zip(&other.dq).map(|(a, b)| a + b).collect(),
            dp: self.dp.iter().zip(&other.dp).map(|(a, b)| a + b).collect(),
        }
    }

    /// Iterate over `0..=e` odometer-style across both index blocks.
    fn sub_indices(&self) -> Vec<DerivIndex> {
        let mut out = vec![DerivIndex::identity(self.dq.len())];
        let n = self.dq.len();
        let full: Vec<u32> = self.dq.iter().chain(self.dp.iter()).copied().collect();
        for (slot, &emax) in full.iter().enumerate() {
            if emax == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * (emax as usize + 1));
            for base in &out {
                for e in 0..=emax {
                    let mut idx = base.clone();
                    if slot < n {
                        idx.dq[slot] = e;
                    } else {
                        idx.dp[slot - n] = e;
                    }
                    next.push(idx);
                }
            }
            out = next;
        }
        out
    }
}

fn binom(a: u32, b: u32) -> u64 {
    let mut acc: u64 = 1;
    for k in 0..b.min(a - b) {
        acc = acc * (a - k) as u64 / (k + 1) as u64;
    }
    acc
}

fn multi_binom(upper: &DerivIndex, lower: &DerivIndex) -> Coeff {
    let mut acc: u64 = 1;
    for (a, b) in upper.dq.iter().zip(&lower.dq).chain(upper.dp.iter().zip(&lower.dp)) {
        acc *= binom(*a, *b);
    }
    c_from_bigint(acc.into())
}

#[derive(Clone, PartialEq, Debug)]
pub struct DiffOperator {
    ctx: PhaseContext,
    terms: BTreeMap<DerivIndex, PhaseFunction>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct OperatorTermJson {
    pub coeff: String,
    pub dq: Vec<u32>,
    pub dp: Vec<u32>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct OperatorJson {
    pub terms: Vec<OperatorTermJson>,
}

impl DiffOperator {
    pub fn zero(ctx: &PhaseContext) -> Self {
        DiffOperator { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    /// Multiplication operator by `f`.
    pub fn from_function(f: &PhaseFunction) -> Self {
        let ctx = f.context().clone();
        let mut op = DiffOperator::zero(&ctx);
        op.insert_add(DerivIndex::identity(ctx.n()), f.clone());
        op
    }

    pub fn identity(ctx: &PhaseContext) -> Self {
        Self::from_function(&PhaseFunction::one(ctx))
    }

    /// First derivative `d/dv` for a phase variable `v`.
    pub fn derivative(ctx: &PhaseContext, v: Var) -> Result<Self> {
        if !ctx.is_phase(v) {
            return Err(Error::ParameterDerivative(ctx.name(v)));
        }
        let mut idx = DerivIndex::identity(ctx.n());
        match ctx.kind(v) {
            crate::context::VarKind::Position(i) => idx.dq[i] = 1,
            crate::context::VarKind::Momentum(i) => idx.dp[i] = 1,
            crate::context::VarKind::Parameter(_) => unreachable!(),
        }
        let mut op = DiffOperator::zero(ctx);
        op.insert_add(idx, PhaseFunction::one(ctx));
        Ok(op)
    }

    /// Build from `(coefficient, index)` pairs; zero coefficients are dropped.
    pub fn from_terms(
        ctx: &PhaseContext,
        terms: impl IntoIterator<Item = (DerivIndex, PhaseFunction)>,
    ) -> Self {
        let mut op = DiffOperator::zero(ctx);
        for (idx, c) in terms {
            op.insert_add(idx, c);
        }
        op
    }

    pub fn context(&self) -> &PhaseContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DerivIndex, &PhaseFunction)> {
        self.terms.iter()
    }

    /// Coefficient of a given derivative index (zero if absent).
    pub fn coefficient(&self, idx: &DerivIndex) -> PhaseFunction {
        self.terms.get(idx).cloned().unwrap_or_else(|| PhaseFunction::zero(&self.ctx))
    }

    /// Maximum total derivative order.
    pub fn order(&self) -> u64 {
        self.terms.keys().map(|i| i.order()).max().unwrap_or(0)
    }

    fn insert_add(&mut self, idx: DerivIndex, f: PhaseFunction) {
        if f.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&f);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.insert_add(idx.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Left multiplication by a function (rescales every coefficient).
    pub fn scale(&self, f: &PhaseFunction) -> Self {
        assert_eq!(self.ctx, *f.context(), "context mismatch");
        let mut out = DiffOperator::zero(&self.ctx);
        for (idx, c) in &self.terms {
            out.insert_add(idx.clone(), c.mul(f));
        }
        out
    }

    pub fn scale_coeff(&self, c: &Coeff) -> Self {
        self.scale(&PhaseFunction::constant(&self.ctx, c.clone()))
    }

    /// Mixed partial of `f` prescribed by a derivative index.
    fn apply_index(&self, idx: &DerivIndex, f: &PhaseFunction) -> PhaseFunction {
        let mut acc = f.clone();
        for (i, &e) in idx.dq.iter().enumerate() {
            for _ in 0..e {
                acc = acc.differentiate(self.ctx.q(i)).expect("phase variable");
            }
        }
        for (i, &e) in idx.dp.iter().enumerate() {
            for _ in 0..e {
                acc = acc.differentiate(self.ctx.p(i)).expect("phase variable");
            }
        }
        acc
    }

    /// Checked composition `self . other` in normal form, satisfying
    /// `apply(compose(A, B), f) = apply(A, apply(B, f))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut out = DiffOperator::zero(&self.ctx);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                // d^a (c g) = sum_{g <= a} C(a, g) (d^{a-g} c) d^g g.
                for gamma in ia.sub_indices() {
                    let rest = DerivIndex {
                        dq: ia.dq.iter().zip(&gamma.dq).map(|(a, g)| a - g).collect(),
                        dp: ia.dp.iter().zip(&gamma.dp).map(|(a, g)| a - g).collect(),
                    };
                    let dcb = self.apply_index(&rest, cb);
                    if dcb.is_zero() {
                        continue;
                    }
                    let coeff = ca.mul(&dcb).scale(&multi_binom(ia, &gamma));
                    out.insert_add(gamma.add(ib), coeff);
                }
            }
        }
        Ok(out)
    }

    /// `[self, other] = self.other - other.self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(self.compose(other)?.sub(&other.compose(self)?))
    }

    /// Act on a function.
    pub fn apply(&self, f: &PhaseFunction) -> Result<PhaseFunction> {
        if self.ctx != *f.context() {
            return Err(Error::ContextMismatch);
        }
        let mut acc = PhaseFunction::zero(&self.ctx);
        for (idx, c) in &self.terms {
            let d = self.apply_index(idx, f);
            if d.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&d));
        }
        Ok(acc)
    }

    /// Drop every term with a momentum derivative; those annihilate
    /// vertically polarized wave functions.
    pub fn restrict_to_polarized(&self) -> Self {
        let mut out = DiffOperator::zero(&self.ctx);
        for (idx, c) in &self.terms {
            if idx.dp.iter().all(|&e| e == 0) {
                out.insert_add(idx.clone(), c.clone());
            }
        }
        out
    }

    /// True when the restriction has only momentum-free coefficients, so the
    /// operator maps polarized functions to polarized functions.
    pub fn preserves_polarization(&self) -> bool {
        self.restrict_to_polarized().terms.values().all(|c| c.is_p_free())
    }

    /// Terms in display order: ascending total order, then earlier
    /// derivatives first (a `q` block before the `p` block).
    pub fn terms_display_order(&self) -> Vec<(&DerivIndex, &PhaseFunction)> {
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|(a, _), (b, _)| {
            a.order().cmp(&b.order()).then_with(|| {
                for (x, y) in a.dq.iter().chain(a.dp.iter()).zip(b.dq.iter().chain(b.dp.iter())) {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                std::cmp::Ordering::Equal
            })
        });
        items
    }

    pub fn to_json(&self) -> OperatorJson {
        OperatorJson {
            terms: self
                .terms_display_order()
                .into_iter()
                .map(|(idx, c)| OperatorTermJson {
                    coeff: c.to_string(),
                    dq: idx.dq.clone(),
                    dp: idx.dp.clone(),
                })
                .collect(),
        }
    }
}

fn fmt_deriv(ctx: &PhaseContext, idx: &DerivIndex) -> String {
    let order = idx.order();
    let mut factors = String::new();
    for (i, &e) in idx.dq.iter().enumerate() {
        if e == 1 {
            factors.push_str(&format!("dq{}", i + 1));
        } else if e > 1 {
            factors.push_str(&format!("dq{}^{}", i + 1, e));
        }
    }
    for (i, &e) in idx.dp.iter().enumerate() {
        if e == 1 {
            factors.push_str(&format!("dp{}", i + 1));
        } else if e > 1 {
            factors.push_str(&format!("dp{}^{}", i + 1, e));
        }
    }
    let _ = ctx;
    if order == 1 {
        format!("d/{factors}")
    } else {
        format!("d{order}/{factors}")
    }
}

/// Split a coefficient into a display sign and its unsigned rendering.
fn coeff_display(c: &PhaseFunction) -> (bool, String) {
    let lead = c.numerator().leading().map(|(_, c)| c.clone());
    let neg = match lead {
        Some(c) => {
            use num_traits::{Signed, Zero};
            if !c.re.is_zero() { c.re.is_negative() } else { c.im.is_negative() }
        }
        None => false,
    };
    let shown = if neg { c.neg() } else { c.clone() };
    let mut s = shown.to_string();
    if shown.needs_wrap() {
        s = format!("({s})");
    }
    (neg, s)
}

impl fmt::Display for DiffOperator {
    /// Canonical text form. Runs of consecutive terms with an identical
    /// coefficient are grouped as `coeff*(D1 + D2 + ...)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let items = self.terms_display_order();
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut k = 0;
        while k < items.len() {
            let (idx, c) = items[k];
            if idx.is_identity() {
                let (neg, s) = coeff_display(c);
                // Unwrap a pure multiplication term.
                let plain = if neg { c.neg() } else { c.clone() };
                pieces.push((neg, plain.to_string().to_owned()));
                let _ = s;
                k += 1;
                continue;
            }
            let mut run = k + 1;
            while run < items.len() && !items[run].0.is_identity() && items[run].1 == c {
                run += 1;
            }
            let (neg, cstr) = coeff_display(c);
            let derivs: Vec<String> =
                items[k..run].iter().map(|(i, _)| fmt_deriv(&self.ctx, i)).collect();
            let body = if run - k > 1 {
                format!("({})", derivs.join(" + "))
            } else {
                derivs.into_iter().next().unwrap()
            };
            let piece = if cstr == "1" && !neg {
                body
            } else if cstr == "1" {
                body
            } else {
                format!("{cstr}*{body}")
            };
            pieces.push((neg, piece));
            k = run;
        }
        for (k, (neg, piece)) in pieces.iter().enumerate() {
            if k == 0 {
                if *neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if *neg { "-" } else { "+" })?;
            }
            write!(f, "{piece}")?;
        }
        Ok(())
    }
}
