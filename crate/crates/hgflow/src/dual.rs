//! Complex dual numbers for forward-mode differentiation of polynomial
//! expressions in canonical variables.
//!
//! The Hamiltonians of this crate are polynomials over Complex64, so a single
//! generic evaluation routine serves both plain values and exact partial
//! derivatives.  `Scalar` is the minimal ring interface that routine needs;
//! it is implemented by `Complex64` itself and by `CDual`, whose `eps`
//! component carries d/dv along one chosen variable v.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Ring operations shared by plain complex values and dual numbers.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_c(c: Complex64) -> Self;

    fn zero() -> Self {
        Self::from_c(Complex64::new(0.0, 0.0))
    }

    /// Multiplication by a constant (constants carry no derivative).
    fn scale(self, c: Complex64) -> Self;
}

impl Scalar for Complex64 {
    fn from_c(c: Complex64) -> Self {
        c
    }

    fn scale(self, c: Complex64) -> Self {
        self * c
    }
}

/// a + eps b with eps^2 = 0; b tracks the derivative of a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CDual {
    pub re: Complex64,
    pub eps: Complex64,
}

impl CDual {
    pub fn constant(c: Complex64) -> Self {
        Self { re: c, eps: Complex64::new(0.0, 0.0) }
    }

    /// The value `c` marked as the differentiation variable.
    pub fn variable(c: Complex64) -> Self {
        Self { re: c, eps: Complex64::new(1.0, 0.0) }
    }
}

impl Add for CDual {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, eps: self.eps + rhs.eps }
    }
}

impl Sub for CDual {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, eps: self.eps - rhs.eps }
    }
}

impl Mul for CDual {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: self.re * rhs.re,
            eps: self.re * rhs.eps + self.eps * rhs.re,
        }
    }
}

impl Neg for CDual {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, eps: -self.eps }
    }
}

impl Scalar for CDual {
    fn from_c(c: Complex64) -> Self {
        Self::constant(c)
    }

    fn scale(self, c: Complex64) -> Self {
        Self { re: self.re * c, eps: self.eps * c }
    }
}
