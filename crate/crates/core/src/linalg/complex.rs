use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, Scalar};

/// Exact Gaussian rational `re + im·i`. Conjugation is a sign flip on the
/// imaginary part, which keeps intersection tests with conjugated
/// subspaces exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl ComplexScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        ComplexScalar { re, im }
    }

    pub fn from_real(re: Scalar) -> Self {
        ComplexScalar {
            re,
            im: Scalar::zero(),
        }
    }

    pub fn i() -> Self {
        ComplexScalar {
            re: Scalar::zero(),
            im: Scalar::one(),
        }
    }

    pub fn conj(&self) -> Self {
        ComplexScalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sq(&self) -> Scalar {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for ComplexScalar {
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

impl fmt::Debug for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for ComplexScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ComplexScalar {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ComplexScalar {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for ComplexScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        ComplexScalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for ComplexScalar {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm_sq();
        assert!(!n.is_zero(), "division by complex zero");
        let inv = n.recip().expect("nonzero");
        let conj = rhs.conj();
        let prod = self * conj;
        ComplexScalar {
            re: prod.re * inv.clone(),
            im: prod.im * inv,
        }
    }
}

impl Neg for ComplexScalar {
    type Output = Self;
    fn neg(self) -> Self {
        ComplexScalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Zero for ComplexScalar {
    fn zero() -> Self {
        ComplexScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ComplexScalar {
    fn one() -> Self {
        ComplexScalar::from_real(Scalar::one())
    }
}

impl Field for ComplexScalar {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let i = ComplexScalar::i();
        assert_eq!(i.clone() * i.clone(), -ComplexScalar::one());
        let z = ComplexScalar::new(Scalar::from(3), Scalar::from(4));
        let w = z.clone() / z.clone();
        assert_eq!(w, ComplexScalar::one());
        assert_eq!(z.conj().im, Scalar::from(-4));
    }
}
