//! Univariate polynomials over F_q, coefficients lowest degree first.

use crate::error::{GqError, Result};
use crate::gf2e::Field;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(Vec<u32>);

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: u32) -> Poly {
        Poly::new(vec![c])
    }

    /// `x - a` (equal to `x + a` in characteristic 2).
    pub fn linear(a: u32) -> Poly {
        Poly(vec![a, 1])
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> u32 {
        *self.0.last().unwrap_or(&0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let c = (0..len)
            .map(|i| self.0.get(i).copied().unwrap_or(0) ^ other.0.get(i).copied().unwrap_or(0))
            .collect();
        Poly::new(c)
    }

    pub fn scale(&self, f: &Field, c: u32) -> Poly {
        Poly::new(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0u32; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                c[i + j] ^= f.mul(a, b);
            }
        }
        Poly::new(c)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, f: &Field, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(GqError::DivisionByZero)?;
        let inv = f.inv(divisor.lead())?;
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, inv);
            quot[i - dd] = factor;
            for (j, &d) in divisor.0.iter().enumerate() {
                rem[i - dd + j] ^= f.mul(factor, d);
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn eval(&self, f: &Field, x: u32) -> u32 {
        self.0.iter().rev().fold(0, |acc, &c| f.mul(acc, x) ^ c)
    }

    /// `∏ (x - r)`.
    pub fn from_roots(f: &Field, roots: &[u32]) -> Poly {
        roots.iter().fold(Poly::constant(1), |acc, &r| acc.mul(f, &Poly::linear(r)))
    }

    /// Lagrange interpolation through `(xs[i], ys[i])` with distinct `xs`.
    pub fn interpolate(f: &Field, xs: &[u32], ys: &[u32]) -> Result<Poly> {
        if xs.len() != ys.len() {
            return Err(GqError::DimensionMismatch("interpolation points and values differ in length".into()));
        }
        let all = Poly::from_roots(f, xs);
        let mut acc = Poly::zero();
        for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
            if yi == 0 {
                continue;
            }
            let (basis, _) = all.div_rem(f, &Poly::linear(xi))?;
            let denom = basis.eval(f, xi);
            if denom == 0 {
                return Err(GqError::InvalidArgument(format!("repeated interpolation point at index {i}")));
            }
            acc = acc.add(&basis.scale(f, f.div(yi, denom)?));
        }
        Ok(acc)
    }
}
