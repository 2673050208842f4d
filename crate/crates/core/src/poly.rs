//! Integer polynomials and Laurent polynomials in the Hecke parameter `q`.
//!
//! Class polynomials live in ℤ[q]; the central elements built from them need
//! `q^{-ℓ(w)}` factors, hence the Laurent variant.  Coefficients are
//! arbitrary-precision integers so that no computation in this crate ever
//! rounds or overflows.
//!
//! Both types are canonical: no leading/trailing zero coefficients are
//! stored, and the zero polynomial is the empty coefficient list.  Printing
//! is fixed descending-degree form (`"q^2-q+3"`, `"q^-1+2"`, `"0"`), which
//! output formats rely on being stable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Q;

/// Exact ring of coefficients for Hecke algebra elements.
///
/// Implemented by rationals, [`Poly`], and [`Laurent`]; the multiplication
/// routines are generic over this so the same code drives the 0-Hecke
/// algebra (q = 0), specializations at rational q, and the generic algebra.
pub trait Coeff:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

/// Polynomial in `q` with integer coefficients, stored dense low-to-high.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    fn canon(mut coeffs: Vec<BigInt>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Poly {
        Poly::canon(coeffs)
    }

    /// Convenience constructor from small integer coefficients, low-to-high.
    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::canon(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Poly {
        Poly::canon(vec![c])
    }

    /// The monomial `q`.
    pub fn q() -> Poly {
        Poly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    /// The polynomial `q - 1`.
    pub fn q_minus_one() -> Poly {
        Poly {
            coeffs: vec![-BigInt::one(), BigInt::one()],
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Exact evaluation at a rational point (Horner).
    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Q::from(c.clone());
        }
        acc
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(BigInt::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] += c;
        }
        Poly::canon(long)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::canon(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(k, c)| (k as i64, c)),
        )
    }
}

/// Laurent polynomial in `q`: `q^low * (c_0 + c_1 q + …)`.
///
/// Canonical form: the first and last stored coefficients are nonzero; the
/// zero element stores no coefficients and `low = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    fn canon(mut low: i64, mut coeffs: Vec<BigInt>) -> Laurent {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let skip = coeffs.iter().take_while(|c| c.is_zero()).count();
        if skip > 0 {
            coeffs.drain(..skip);
            low += skip as i64;
        }
        if coeffs.is_empty() {
            low = 0;
        }
        Laurent { low, coeffs }
    }

    pub fn from_poly(p: &Poly) -> Laurent {
        Laurent::canon(0, p.coeffs.clone())
    }

    /// The monomial `q^k` (k may be negative).
    pub fn q_pow(k: i64) -> Laurent {
        Laurent {
            low: k,
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial `q`.
    pub fn q() -> Laurent {
        Laurent::q_pow(1)
    }

    /// Multiply by `q^k`.
    pub fn shifted(&self, k: i64) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Lowest exponent with nonzero coefficient, or `None` if zero.
    pub fn low_degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.low)
    }

    /// Exact evaluation at a nonzero rational point.  Evaluating negative
    /// powers at 0 is the one undefined case.
    pub fn eval(&self, x: &Q) -> Result<Q> {
        if x.is_zero() && self.low < 0 {
            return Err(Error::ZeroDenominator);
        }
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Q::from(c.clone());
        }
        // acc = value / x^low so far; apply the shift.
        let mut shift = Q::one();
        for _ in 0..self.low.unsigned_abs() {
            shift = shift * x;
        }
        Ok(if self.low >= 0 { acc * shift } else { acc / shift })
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Laurent::q_pow(0)
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let low = self.low.min(rhs.low);
        let high = (self.low + self.coeffs.len() as i64).max(rhs.low + rhs.coeffs.len() as i64);
        let mut out = vec![BigInt::zero(); (high - low) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[(rhs.low - low) as usize + i] += c;
        }
        Laurent::canon(low, out)
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(mut self) -> Laurent {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        self + (-rhs)
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Laurent::canon(self.low + rhs.low, out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .map(|(i, c)| (self.low + i as i64, c)),
        )
    }
}

/// Shared printer: terms arrive in strictly descending exponent order.
fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a BigInt)>,
) -> fmt::Result {
    let mut wrote = false;
    for (exp, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if wrote {
            f.write_str(if c.is_negative() { "-" } else { "+" })?;
        } else if c.is_negative() {
            f.write_str("-")?;
        }
        wrote = true;
        let unit_coeff = mag.is_one() && exp != 0;
        if !unit_coeff {
            write!(f, "{mag}")?;
        }
        match exp {
            0 => {}
            1 => f.write_str("q")?,
            _ => write!(f, "q^{exp}")?,
        }
    }
    if !wrote {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_arithmetic_and_eval() {
        let p = Poly::q_minus_one() * Poly::q() + Poly::one(); // q^2 - q + 1
        assert_eq!(p, Poly::from_ints(&[1, -1, 1]));
        assert_eq!(p.eval(&Q::from(BigInt::from(3))), Q::from(BigInt::from(7)));
        assert_eq!(p.to_string(), "q^2-q+1");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!((-Poly::from_ints(&[0, 2])).to_string(), "-2q");
    }

    #[test]
    fn poly_one_plus_q_at_one() {
        let p = Poly::q() + Poly::one();
        assert_eq!(p.eval(&Q::one()), Q::from(BigInt::from(2)));
    }

    #[test]
    fn laurent_shift_and_eval() {
        let z = Laurent::from_poly(&Poly::from_ints(&[1, 1])).shifted(-1); // q^-1 + 1
        assert_eq!(z.to_string(), "1+q^-1");
        let half = Q::new(BigInt::from(1), BigInt::from(2));
        let v = z.eval(&half).unwrap(); // 2 + 1 = 3
        assert_eq!(v, Q::from(BigInt::from(3)));
        assert!(z.eval(&Q::zero()).is_err());
        assert!(Laurent::from_poly(&Poly::q()).eval(&Q::zero()).is_ok());
    }

    #[test]
    fn laurent_cancellation_is_canonical() {
        let a = Laurent::q_pow(-2) + Laurent::q_pow(3);
        let b = a.clone() - Laurent::q_pow(-2);
        assert_eq!(b, Laurent::q_pow(3));
        assert!((a.clone() - a).is_zero());
    }
}
