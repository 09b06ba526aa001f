//! Truncated power series in `q^2` with exact rational coefficients.
//!
//! Every series in this crate lives in even powers of `q`: the coefficient
//! at index `n` is the coefficient of `q^{2n}`. A series carries its
//! truncation order `K` explicitly and stores exactly `K + 1` coefficients.
//!
//! Invariants:
//! - `coeffs.len() == trunc_order + 1`
//! - binary operations never extend precision: the result truncation order
//!   is the minimum of the operands'

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::Rat;

/// A truncated power series `a_0 + a_1 q^2 + ... + a_K q^{2K}` with
/// arbitrary-precision rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rat>,
}

impl QSeries {
    /// The zero series with truncation order `trunc_order`.
    pub fn zero(trunc_order: usize) -> Self {
        Self {
            coeffs: vec![Rat::zero(); trunc_order + 1],
        }
    }

    /// The constant series 1.
    pub fn one(trunc_order: usize) -> Self {
        Self::constant(Rat::one(), trunc_order)
    }

    /// A constant series `c`.
    pub fn constant(c: Rat, trunc_order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); trunc_order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// The monomial `c * q^{2n}`; the series is zero if `n > trunc_order`.
    pub fn monomial(c: Rat, n: usize, trunc_order: usize) -> Self {
        let mut s = Self::zero(trunc_order);
        if n <= trunc_order {
            s.coeffs[n] = c;
        }
        s
    }

    /// Builds a series from its coefficient list; the truncation order is
    /// `coeffs.len() - 1`. Panics on an empty list.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a QSeries stores at least q^0");
        Self { coeffs }
    }

    /// Truncation order `K`: coefficients are known for `q^0 .. q^{2K}`.
    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^{2n}`. Panics beyond the truncation order, where
    /// the coefficient is unknown.
    pub fn coeff(&self, n: usize) -> &Rat {
        assert!(
            n < self.coeffs.len(),
            "coefficient of q^{} unknown: series truncated at q^{}",
            2 * n,
            2 * self.trunc_order()
        );
        &self.coeffs[n]
    }

    /// All stored coefficients, lowest order first.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The constant term.
    pub fn constant_term(&self) -> &Rat {
        &self.coeffs[0]
    }

    /// True when every stored coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when the series equals the constant 1.
    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Copy truncated to order `k <= trunc_order`.
    pub fn truncated(&self, k: usize) -> Self {
        assert!(k <= self.trunc_order(), "cannot extend a series by truncation");
        Self {
            coeffs: self.coeffs[..=k].to_vec(),
        }
    }

    /// Multiplies by an exact rational scalar.
    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc_order());
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by a small integer scalar.
    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&crate::rat_int(c))
    }

    /// Multiplicative inverse in the truncated ring: `self * inv = 1 + O(q^{2(K+1)})`.
    ///
    /// Fails when the constant term is zero.
    pub fn inverse(&self) -> Result<Self, Error> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonInvertible);
        }
        let k = self.trunc_order();
        let inv_a0 = a0.recip();
        let mut out = vec![Rat::zero(); k + 1];
        out[0] = inv_a0.clone();
        for n in 1..=k {
            let mut acc = Rat::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() && !out[n - j].is_zero() {
                    acc += &self.coeffs[j] * &out[n - j];
                }
            }
            out[n] = -(&inv_a0 * acc);
        }
        Ok(Self { coeffs: out })
    }

    /// Accumulates `a * b` into `self` without allocating the product.
    /// Only orders up to `self.trunc_order()` are touched.
    pub(crate) fn add_assign_mul(&mut self, a: &QSeries, b: &QSeries) {
        let k = self
            .trunc_order()
            .min(a.trunc_order())
            .min(b.trunc_order());
        for (i, ai) in a.coeffs.iter().enumerate().take(k + 1) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate().take(k + 1 - i) {
                if !bj.is_zero() {
                    self.coeffs[i + j] += ai * bj;
                }
            }
        }
    }

    /// Accumulates `c * a` into `self` for a small integer scalar `c`.
    pub(crate) fn add_assign_scaled(&mut self, a: &QSeries, c: i64) {
        if c == 0 {
            return;
        }
        let c = crate::rat_int(c);
        let k = self.trunc_order().min(a.trunc_order());
        for n in 0..=k {
            if !a.coeffs[n].is_zero() {
                self.coeffs[n] += &a.coeffs[n] * &c;
            }
        }
    }

    /// Accumulates `a` into `self`.
    pub(crate) fn add_assign(&mut self, a: &QSeries) {
        let k = self.trunc_order().min(a.trunc_order());
        for n in 0..=k {
            if !a.coeffs[n].is_zero() {
                self.coeffs[n] += &a.coeffs[n];
            }
        }
    }

    /// Evaluates the truncated series at a complex `q` (sums through `q^{2K}`).
    pub fn eval_complex(&self, q: Complex64) -> Complex64 {
        let q2 = q * q;
        // Horner, highest order first.
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * q2 + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        acc
    }
}

fn binary_trunc(a: &QSeries, b: &QSeries) -> usize {
    a.trunc_order().min(b.trunc_order())
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let k = binary_trunc(self, rhs);
        let coeffs = (0..=k)
            .map(|n| &self.coeffs[n] + &rhs.coeffs[n])
            .collect();
        QSeries { coeffs }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let k = binary_trunc(self, rhs);
        let coeffs = (0..=k)
            .map(|n| &self.coeffs[n] - &rhs.coeffs[n])
            .collect();
        QSeries { coeffs }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let k = binary_trunc(self, rhs);
        let mut coeffs = vec![Rat::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(k + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs }
    }
}

impl fmt::Display for QSeries {
    /// Renders with explicit `q^{2n}` labels, e.g. `-1/8 + 3*q^2 + 153/8*q^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if n == 0 {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "{}*q^{}", c, 2 * n)?;
                }
                first = false;
            } else {
                let (sign, mag) = if c < &Rat::zero() {
                    (" - ", -c)
                } else {
                    (" + ", c.clone())
                };
                if n == 0 {
                    write!(f, "{sign}{mag}")?;
                } else {
                    write!(f, "{}{}*q^{}", sign, mag, 2 * n)?;
                }
            }
        }
        Ok(())
    }
}
