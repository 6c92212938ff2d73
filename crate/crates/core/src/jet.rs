//! Second-order jets `(f, f', f'')` of analytic functions at a point.

use std::ops::{Mul, MulAssign};

use num_complex::Complex;

use crate::scalar::Real;

/// Value, first and second complex derivative at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2<T: Real = f64> {
    pub f: Complex<T>,
    pub df: Complex<T>,
    pub d2f: Complex<T>,
}

impl<T: Real> Jet2<T> {
    pub fn new(f: Complex<T>, df: Complex<T>, d2f: Complex<T>) -> Self {
        Self { f, df, d2f }
    }

    pub fn constant(f: Complex<T>) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        Self { f, df: zero, d2f: zero }
    }

    pub fn one() -> Self {
        Self::constant(Complex::new(T::one(), T::zero()))
    }

    pub fn zero() -> Self {
        Self::constant(Complex::new(T::zero(), T::zero()))
    }

    /// Jet of `exp(g)` given the jet of `g`.
    pub fn exp(g: Self) -> Self {
        let e = g.f.exp();
        Self {
            f: e,
            df: g.df * e,
            d2f: (g.d2f + g.df * g.df) * e,
        }
    }

    /// Derivative of the given order (0, 1 or 2).
    pub fn derivative(&self, order: usize) -> Option<Complex<T>> {
        match order {
            0 => Some(self.f),
            1 => Some(self.df),
            2 => Some(self.d2f),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.f, self.df, self.d2f]
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl<T: Real> Mul for Jet2<T> {
    type Output = Self;

    /// Leibniz rule truncated at second order.
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let two = T::lit(2.0);
        Self {
            f: self.f * rhs.f,
            df: self.df * rhs.f + self.f * rhs.df,
            d2f: self.d2f * rhs.f + self.df * rhs.df * two + self.f * rhs.d2f,
        }
    }
}

impl<T: Real> MulAssign for Jet2<T> {
    #[inline]
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn product_rule_on_polynomials() {
        // z^2 and z^3 at z = 2 multiply to z^5
        let z = C::new(2.0, 0.0);
        let sq = Jet2::new(z * z, z * 2.0, C::new(2.0, 0.0));
        let cube = Jet2::new(z * z * z, z * z * 3.0, z * 6.0);
        let p = sq * cube;
        assert_eq!(p.f, C::new(32.0, 0.0));
        assert_eq!(p.df, C::new(80.0, 0.0));
        assert_eq!(p.d2f, C::new(160.0, 0.0));
    }

    #[test]
    fn exp_chain_rule() {
        // exp(z^2) at z = i/2
        let z = C::new(0.0, 0.5);
        let g = Jet2::new(z * z, z * 2.0, C::new(2.0, 0.0));
        let e = Jet2::exp(g);
        let v = (z * z).exp();
        assert!((e.df - z * 2.0 * v).norm() < 1e-15);
        assert!((e.d2f - (C::new(2.0, 0.0) + z * z * 4.0) * v).norm() < 1e-15);
    }

    #[test]
    fn identity_elements() {
        let j = Jet2::new(C::new(1.0, 2.0), C::new(3.0, -1.0), C::new(0.5, 0.5));
        assert_eq!(j * Jet2::one(), j);
        assert_eq!(j * Jet2::zero(), Jet2::zero());
        assert!(j.is_finite());
        assert_eq!(j.derivative(2), Some(j.d2f));
        assert_eq!(j.derivative(3), None);
    }
}
