//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Monomials are exponent vectors over the context's full variable list
//! (phase variables and parameters alike). The monomial order is graded
//! lexicographic, with later variables taking precedence on ties, so the
//! leading term of a nonzero polynomial is well defined and canonical
//! forms are reproducible.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::number::{c_one, c_pow, c_sqrt_real, Coeff};

/// Exponent vector.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, when `other` divides `self`.
    pub fn try_div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    fn halve(&self) -> Option<Self> {
        if self.0.iter().any(|e| e % 2 != 0) {
            return None;
        }
        Some(Monomial(self.0.iter().map(|e| e / 2).collect()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

/// Multivariate polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Coeff) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, c_one())
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial::var(nvars, idx), c_one());
        p
    }

    pub fn term(nvars: usize, m: Monomial, c: Coeff) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_unit())
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }

    /// The constant value, if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<Coeff> {
        if self.is_zero() {
            return Some(crate::number::c_zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    /// Terms from the leading (largest) monomial down.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn insert_add(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_coeff(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut out = Poly::zero(self.nvars);
        for (mm, cc) in &self.terms {
            out.terms.insert(mm.mul(m), cc * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative in variable `idx`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[idx] = e - 1;
            out.insert_add(m2, c * &crate::number::c_int(e as i64));
        }
        out
    }

    pub fn max_exp(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    pub fn depends_on(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.0[idx] > 0)
    }

    /// Indices of variables with a positive exponent somewhere.
    pub fn support(&self) -> Vec<usize> {
        let mut present = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    present[i] = true;
                }
            }
        }
        present
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| if b { Some(i) } else { None })
            .collect()
    }

    /// Total value at a full point (one coefficient per variable).
    pub fn eval(&self, point: &[Coeff]) -> Coeff {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = crate::number::c_zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    v = &v * &c_pow(&point[i], e);
                }
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Double-precision value at a full real point; returns `(re, im)`.
    pub fn eval_f64(&self, point: &[f64]) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (m, c) in &self.terms {
            let (cre, cim) = crate::number::c_to_f64(c);
            let mut factor = 1.0;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    factor *= point[i].powi(e as i32);
                }
            }
            re += cre * factor;
            im += cim * factor;
        }
        (re, im)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::unit(self.nvars),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    pub fn div_monomial(&self, m: &Monomial) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (mm, c) in &self.terms {
            let q = mm.try_div(m).expect("monomial does not divide term");
            out.terms.insert(q, c.clone());
        }
        out
    }

    /// Scale so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = &c_one() / lc;
                self.mul_coeff(&inv)
            }
        }
    }

    /// Exact division; `None` when `self` is not a polynomial multiple of `d`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            let inv = &c_one() / &c;
            return Some(self.mul_coeff(&inv));
        }
        let (dm, dc) = d.leading().unwrap();
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            let m = rm.try_div(&dm)?;
            let c = rc / &dc;
            rem = rem.sub(&d.mul_term(&m, &c));
            q.insert_add(m, c);
        }
        Some(q)
    }

    /// View as a dense univariate polynomial in variable `v`; the returned
    /// coefficients have exponent 0 in `v`.
    fn as_univariate(&self, v: usize) -> Vec<Poly> {
        let deg = self.max_exp(v) as usize;
        let mut coeffs = vec![Poly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[v] as usize;
            let mut m2 = m.clone();
            m2.0[v] = 0;
            coeffs[e].insert_add(m2, c.clone());
        }
        coeffs
    }

    fn from_univariate(nvars: usize, v: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut m2 = m.clone();
                m2.0[v] += e as u32;
                out.insert_add(m2, c.clone());
            }
        }
        out
    }

    /// Exact square root, when `self` is a perfect square whose leading
    /// coefficient has a rational square root.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (lm, lc) = self.leading().unwrap();
        let hm = lm.halve()?;
        let hc = c_sqrt_real(lc)?;
        if hc.is_zero() {
            return None;
        }
        let mut root = Poly::term(self.nvars, hm.clone(), hc.clone());
        let two_hc = &hc + &hc;
        let mut prev = hm.clone();
        // Peel the next root term off the leading term of the remainder:
        // if root = h + (lower), then self - root^2 leads with 2*hc*hm*next.
        for _ in 0..(self.num_terms() * self.num_terms() + 16) {
            let rem = self.sub(&root.mul(&root));
            if rem.is_zero() {
                return Some(root);
            }
            let (rm, rc) = rem.leading().unwrap();
            let m = rm.try_div(&hm)?;
            if m >= prev {
                return None;
            }
            let c = rc / &two_hc;
            root.insert_add(m.clone(), c);
            prev = m;
        }
        None
    }
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().map(|p| p.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn gcd_list(polys: &[Poly], nvars: usize) -> Poly {
    let mut acc = Poly::zero(nvars);
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = gcd(&acc, p);
        if acc.is_one() {
            return acc;
        }
    }
    acc
}

/// Pseudo-remainder of dense univariate `f` by `g` (coefficients are
/// polynomials in the remaining variables).
fn pseudo_rem(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let dg = g.len() - 1;
    let lc_g = g[dg].clone();
    let mut r: Vec<Poly> = f.to_vec();
    loop {
        trim(&mut r);
        if r.is_empty() || r.len() - 1 < dg {
            return r;
        }
        let dr = r.len() - 1;
        let lc_r = r[dr].clone();
        for item in r.iter_mut() {
            *item = item.mul(&lc_g);
        }
        for j in 0..=dg {
            let t = lc_r.mul(&g[j]);
            r[dr - dg + j] = r[dr - dg + j].sub(&t);
        }
    }
}

fn trim_coeffs(v: &mut Vec<Coeff>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Scale to Gaussian-integer coefficients and strip the rational integer
/// content, bounding coefficient growth along the remainder sequence.
fn normalize_int(v: &mut [Coeff]) {
    use num_bigint::BigInt;
    use num_integer::Integer as _;
    use num_rational::BigRational;
    use num_traits::{One, Signed};
    let mut lcm = BigInt::one();
    for c in v.iter() {
        for part in [&c.re, &c.im] {
            if !part.is_zero() {
                lcm = lcm.lcm(part.denom());
            }
        }
    }
    let mut content = BigInt::zero();
    let scale = BigRational::from_integer(lcm);
    for c in v.iter() {
        for part in [&c.re, &c.im] {
            if !part.is_zero() {
                content = content.gcd(&(part * &scale).to_integer().abs());
            }
        }
    }
    if content.is_zero() {
        return;
    }
    let factor = crate::number::c_real(scale / BigRational::from_integer(content));
    for c in v.iter_mut() {
        *c = &*c * &factor;
    }
}

/// Monic GCD of dense univariate polynomials over the Gaussian rationals,
/// by a primitive pseudo-remainder sequence over the Gaussian integers.
fn univ_gcd(mut a: Vec<Coeff>, mut b: Vec<Coeff>) -> Vec<Coeff> {
    let monic = |mut v: Vec<Coeff>| {
        if let Some(lc) = v.last().cloned() {
            let inv = &c_one() / &lc;
            for c in v.iter_mut() {
                *c = &*c * &inv;
            }
        }
        v
    };
    trim_coeffs(&mut a);
    trim_coeffs(&mut b);
    if a.is_empty() {
        return monic(b);
    }
    if b.is_empty() {
        return monic(a);
    }
    normalize_int(&mut a);
    normalize_int(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![c_one()];
        }
        // Pseudo-remainder of a by b.
        let db = b.len() - 1;
        let lb = b[db].clone();
        while a.len() > db {
            let da = a.len() - 1;
            let la = a[da].clone();
            for c in a.iter_mut() {
                *c = &*c * &lb;
            }
            for j in 0..=db {
                let t = &la * &b[j];
                a[da - db + j] = &a[da - db + j] - &t;
            }
            trim_coeffs(&mut a);
            if a.is_empty() {
                break;
            }
        }
        normalize_int(&mut a);
        std::mem::swap(&mut a, &mut b);
    }
    monic(a)
}

/// Deterministic evaluation points for the coprimality probe; never zero.
fn probe_value(var: usize, attempt: usize) -> Coeff {
    let raw = 3 + 5 * var as i64 + 17 * attempt as i64;
    let sign = if (var + attempt) % 2 == 0 { 1 } else { -1 };
    crate::number::c_int(sign * (raw % 97 + 1))
}

/// Decide coprimality of primitive univariate-in-`v` polynomial vectors by
/// evaluating the remaining variables. If the image GCD is constant and the
/// leading coefficients survive the evaluation, the inputs are coprime (the
/// image of a common factor would divide the image GCD). Inconclusive
/// probes return `false` and the caller falls back to the remainder
/// sequence.
fn probe_coprime(pa: &[Poly], pb: &[Poly], nvars: usize) -> bool {
    let lc_a = pa.last().expect("nonempty");
    let lc_b = pb.last().expect("nonempty");
    for attempt in 0..4 {
        let values: Vec<Coeff> = (0..nvars).map(|i| probe_value(i, attempt)).collect();
        if lc_a.eval(&values).is_zero() || lc_b.eval(&values).is_zero() {
            continue;
        }
        let fa: Vec<Coeff> = pa.iter().map(|c| c.eval(&values)).collect();
        let fb: Vec<Coeff> = pb.iter().map(|c| c.eval(&values)).collect();
        return univ_gcd(fa, fb).len() == 1;
    }
    false
}

fn primitive(coeffs: &[Poly], nvars: usize) -> (Vec<Poly>, Poly) {
    let content = gcd_list(coeffs, nvars);
    if content.is_zero() || content.is_one() {
        return (coeffs.to_vec(), Poly::one(nvars));
    }
    let pp = coeffs
        .iter()
        .map(|c| {
            if c.is_zero() {
                c.clone()
            } else {
                c.div_exact(&content).expect("content must divide")
            }
        })
        .collect();
    (pp, content)
}

/// GCD of two polynomials, normalized monic. Primitive polynomial remainder
/// sequences over the recursively chosen main variable.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let nvars = a.nvars.max(b.nvars);
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(nvars);
    }
    // Strip common monomial factors first; typical denominators are monomials.
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    let a1 = a.div_monomial(&ma);
    let b1 = b.div_monomial(&mb);
    let core = gcd_inner(&a1, &b1);
    core.mul_term(&mg, &c_one()).monic()
}

fn gcd_inner(a: &Poly, b: &Poly) -> Poly {
    let nvars = a.nvars;
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(nvars);
    }
    // Main variable: highest index present in either polynomial.
    let sa = a.support();
    let sb = b.support();
    let v = *sa.iter().chain(sb.iter()).max().unwrap();

    let ua = a.as_univariate(v);
    let ub = b.as_univariate(v);
    let (pa, ca) = primitive(&ua, nvars);
    let (pb, cb) = primitive(&ub, nvars);
    let content_gcd = gcd(&ca, &cb);

    // Univariate inputs: plain Euclid decides exactly.
    if pa.iter().chain(&pb).all(|c| c.is_constant()) {
        let fa: Vec<Coeff> = pa.iter().map(|c| c.constant_value().unwrap()).collect();
        let fb: Vec<Coeff> = pb.iter().map(|c| c.constant_value().unwrap()).collect();
        let g = univ_gcd(fa, fb);
        let gp: Vec<Poly> = g.into_iter().map(|c| Poly::constant(nvars, c)).collect();
        return Poly::from_univariate(nvars, v, &gp).mul(&content_gcd).monic();
    }

    // Fast exit when the primitive parts are provably coprime.
    if probe_coprime(&pa, &pb, nvars) {
        return content_gcd.monic();
    }

    let (mut f, mut g) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    loop {
        let r = pseudo_rem(&f, &g);
        if r.is_empty() {
            let (pg, _) = primitive(&g, nvars);
            let gg = Poly::from_univariate(nvars, v, &pg);
            return gg.mul(&content_gcd).monic();
        }
        if r.len() == 1 {
            // Nonzero remainder of degree 0: the primitive parts are coprime.
            return content_gcd.monic();
        }
        let (pr, _) = primitive(&r, nvars);
        f = g;
        g = pr;
    }
}
