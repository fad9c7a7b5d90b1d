//! Exact Gaussian-rational coefficients `a + b i` with `a, b` in `Q`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficient type of every polynomial in the crate.
pub type Coeff = Complex<BigRational>;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn c_zero() -> Coeff {
    Complex::new(BigRational::zero(), BigRational::zero())
}

pub fn c_one() -> Coeff {
    Complex::new(BigRational::one(), BigRational::zero())
}

/// The imaginary unit.
pub fn c_i() -> Coeff {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn c_int(k: i64) -> Coeff {
    Complex::new(BigRational::from_integer(BigInt::from(k)), BigRational::zero())
}

pub fn c_rat(n: i64, d: i64) -> Coeff {
    Complex::new(rat(n, d), BigRational::zero())
}

pub fn c_real(r: BigRational) -> Coeff {
    Complex::new(r, BigRational::zero())
}

pub fn c_from_bigint(k: BigInt) -> Coeff {
    Complex::new(BigRational::from_integer(k), BigRational::zero())
}

pub fn c_pow(base: &Coeff, mut e: u32) -> Coeff {
    let mut acc = c_one();
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

pub fn c_is_real(c: &Coeff) -> bool {
    c.im.is_zero()
}

pub fn c_is_imag(c: &Coeff) -> bool {
    c.re.is_zero() && !c.im.is_zero()
}

/// Complex value as an `(re, im)` pair of doubles.
pub fn c_to_f64(c: &Coeff) -> (f64, f64) {
    (c.re.to_f64().unwrap_or(f64::NAN), c.im.to_f64().unwrap_or(f64::NAN))
}

/// Exact square root of a nonnegative rational, when one exists in `Q`.
pub fn rat_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// Square root of a real nonnegative coefficient, when rational.
pub fn c_sqrt_real(c: &Coeff) -> Option<Coeff> {
    if !c.im.is_zero() {
        return None;
    }
    rat_sqrt(&c.re).map(c_real)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_field_ops() {
        let a = Complex::new(rat(1, 2), rat(3, 1));
        let b = Complex::new(rat(-2, 1), rat(1, 4));
        let prod = &a * &b;
        let back = &prod / &b;
        assert_eq!(back, a);
        assert_eq!(c_pow(&c_i(), 2), c_int(-1));
        assert_eq!(c_pow(&c_i(), 4), c_one());
    }

    #[test]
    fn rational_sqrt() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
        assert_eq!(rat_sqrt(&rat(-1, 1)), None);
        assert_eq!(rat_sqrt(&rat(0, 1)), Some(rat(0, 1)));
    }
}
