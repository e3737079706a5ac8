//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! Rationals are the coefficient field for everything expressed over the
//! ambient basis of `su(1,n)` (a real Lie algebra). Gaussian rationals only
//! occur as entries of the defining matrix representation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rational scalar.
pub type Rat = num_rational::BigRational;

pub fn rat_int(a: i64) -> Rat {
    Rat::from_integer(BigInt::from(a))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// A Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn zero() -> Self {
        GaussRat {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }

    pub fn one() -> Self {
        GaussRat {
            re: Rat::one(),
            im: Rat::zero(),
        }
    }

    pub fn i() -> Self {
        GaussRat {
            re: Rat::zero(),
            im: Rat::one(),
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        GaussRat {
            re: r,
            im: Rat::zero(),
        }
    }

    pub fn from_int(a: i64) -> Self {
        Self::from_rat(rat_int(a))
    }

    /// `re + im*i` from integer parts.
    pub fn from_parts(re: i64, im: i64) -> Self {
        GaussRat {
            re: rat_int(re),
            im: rat_int(im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        GaussRat {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    /// Squared modulus `re^2 + im^2`.
    pub fn norm2(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm2();
        Some(GaussRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let a = GaussRat::from_parts(1, 2);
        let b = GaussRat::from_parts(3, -1);
        let prod = &a * &b;
        assert_eq!(prod, GaussRat::from_parts(5, 5));
        let inv = b.inv().unwrap();
        assert_eq!(&b * &inv, GaussRat::one());
        assert_eq!(&a.conj() * &a, GaussRat::from_rat(a.norm2()));
    }

    #[test]
    fn perfect_square_roots() {
        assert_eq!(rat_sqrt(&rat(4, 9)), Some(rat(2, 3)));
        assert_eq!(rat_sqrt(&rat_int(0)), Some(rat_int(0)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
        assert_eq!(rat_sqrt(&rat(-4, 1)), None);
        assert_eq!(rat_sqrt(&rat(25, 16)), Some(rat(5, 4)));
    }
}
