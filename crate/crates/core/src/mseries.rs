//! The truncated multivariate polynomial ring with `q`-series coefficients.
//!
//! An [`MSeries`] models the cohomology ring of `CP^{n_1} x ... x CP^{n_s}`:
//! a dense polynomial in `x_1, ..., x_s` reduced modulo the ideal
//! `(x_1^{n_1+1}, ..., x_s^{n_s+1})`. The shape vector stores the
//! per-variable truncation lengths `(n_1+1, ..., n_s+1)`; any exponent
//! overflowing its bound is discarded by every operation.

use crate::charseries::CharSeries;
use crate::error::Error;
use crate::qseries::QSeries;

/// An integer linear form `c_1 x_1 + ... + c_s x_s`, the class dual to one
/// divisor row of a degree matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "a linear form needs at least one variable");
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn negated(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Value of the form at a complex point.
    pub fn eval_complex(&self, x: &[num_complex::Complex64]) -> num_complex::Complex64 {
        assert_eq!(x.len(), self.coeffs.len());
        self.coeffs
            .iter()
            .zip(x)
            .map(|(&c, xi)| xi * c as f64)
            .sum()
    }
}

/// Dense multivariate polynomial over the `q`-series ring, truncated per
/// variable by `shape`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSeries {
    shape: Vec<usize>,
    q_trunc: usize,
    coeffs: Vec<QSeries>,
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut st = vec![1usize; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        st[i] = st[i + 1] * shape[i + 1];
    }
    st
}

fn check_shape(shape: &[usize]) {
    assert!(!shape.is_empty(), "shape needs at least one variable");
    assert!(shape.iter().all(|&l| l >= 1), "shape entries must be >= 1");
}

impl MSeries {
    /// The zero polynomial.
    pub fn zero(shape: &[usize], q_trunc: usize) -> Self {
        check_shape(shape);
        let len = shape.iter().product();
        Self {
            shape: shape.to_vec(),
            q_trunc,
            coeffs: vec![QSeries::zero(q_trunc); len],
        }
    }

    /// The constant polynomial 1.
    pub fn one(shape: &[usize], q_trunc: usize) -> Self {
        Self::constant(QSeries::one(q_trunc), shape)
    }

    /// A constant polynomial; the `q`-truncation is taken from `c`.
    pub fn constant(c: QSeries, shape: &[usize]) -> Self {
        let mut m = Self::zero(shape, c.trunc_order());
        m.coeffs[0] = c;
        m
    }

    /// The degree-one polynomial `sum_q c_q x_q` with integer coefficients.
    pub fn linear(form: &LinearForm, shape: &[usize], q_trunc: usize) -> Self {
        check_shape(shape);
        assert_eq!(form.len(), shape.len(), "linear form arity != shape arity");
        let st = strides(shape);
        let mut m = Self::zero(shape, q_trunc);
        for (q, &c) in form.coeffs().iter().enumerate() {
            if c != 0 && shape[q] > 1 {
                m.coeffs[st[q]] = QSeries::constant(crate::rat_int(c), q_trunc);
            }
        }
        m
    }

    /// Embeds a univariate polynomial in `x_axis`: `coeffs[j]` is the
    /// coefficient of `x_axis^j`. Entries beyond the shape are discarded.
    pub fn from_univariate(axis: usize, uni: &[QSeries], shape: &[usize], q_trunc: usize) -> Self {
        check_shape(shape);
        assert!(axis < shape.len());
        let st = strides(shape);
        let mut m = Self::zero(shape, q_trunc);
        for (j, c) in uni.iter().enumerate().take(shape[axis]) {
            m.coeffs[j * st[axis]] = c.truncated(c.trunc_order().min(q_trunc));
            if c.trunc_order() < q_trunc {
                // keep entries at uniform truncation
                let mut padded = QSeries::zero(q_trunc);
                padded.add_assign(c);
                m.coeffs[j * st[axis]] = padded;
            }
        }
        m
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn q_trunc(&self) -> usize {
        self.q_trunc
    }

    /// Total-degree budget of the ring: `sum (n_q)` with `n_q = shape_q - 1`.
    pub fn degree_budget(&self) -> usize {
        self.shape.iter().map(|l| l - 1).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn assert_same_shape(&self, rhs: &Self) {
        assert_eq!(
            self.shape, rhs.shape,
            "shape mismatch: {:?} vs {:?}",
            self.shape, rhs.shape
        );
    }

    /// Stored coefficient of the monomial `x^e`.
    pub fn coefficient_at(&self, exponent: &[usize]) -> Result<&QSeries, Error> {
        if exponent.len() != self.shape.len()
            || exponent.iter().zip(&self.shape).any(|(&e, &l)| e >= l)
        {
            return Err(Error::ExponentOutOfRange {
                exponent: exponent.to_vec(),
                shape: self.shape.clone(),
            });
        }
        let st = strides(&self.shape);
        let flat: usize = exponent.iter().zip(&st).map(|(&e, &s)| e * s).sum();
        Ok(&self.coeffs[flat])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_shape(rhs);
        let k = self.q_trunc.min(rhs.q_trunc);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            shape: self.shape.clone(),
            q_trunc: k,
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_shape(rhs);
        let k = self.q_trunc.min(rhs.q_trunc);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            shape: self.shape.clone(),
            q_trunc: k,
            coeffs,
        }
    }

    /// Ring product; exponents overflowing the shape are discarded.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_shape(rhs);
        let k = self.q_trunc.min(rhs.q_trunc);
        let st = strides(&self.shape);
        let mut out = Self::zero(&self.shape, k);

        let nonzero = |m: &Self| -> Vec<(usize, Vec<usize>)> {
            m.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(flat, _)| {
                    let mut e = vec![0usize; m.shape.len()];
                    let mut rem = flat;
                    for (i, &s) in st.iter().enumerate() {
                        e[i] = rem / s;
                        rem %= s;
                    }
                    (flat, e)
                })
                .collect()
        };
        let a_nz = nonzero(self);
        let b_nz = nonzero(rhs);

        for (fa, ea) in &a_nz {
            for (fb, eb) in &b_nz {
                let overflow = ea
                    .iter()
                    .zip(eb)
                    .zip(&self.shape)
                    .any(|((&x, &y), &l)| x + y >= l);
                if overflow {
                    continue;
                }
                out.coeffs[fa + fb].add_assign_mul(&self.coeffs[*fa], &rhs.coeffs[*fb]);
            }
        }
        out
    }

    /// Multiplies every coefficient by the `q`-series scalar `c`.
    pub fn scale_series(&self, c: &QSeries) -> Self {
        let k = self.q_trunc.min(c.trunc_order());
        let mut out = Self::zero(&self.shape, k);
        for (dst, src) in out.coeffs.iter_mut().zip(&self.coeffs) {
            if !src.is_zero() {
                dst.add_assign_mul(src, c);
            }
        }
        out
    }

    /// Specialized product with a degree-one form: much cheaper than `mul`.
    pub fn mul_linear(&self, form: &LinearForm) -> Self {
        assert_eq!(form.len(), self.shape.len(), "linear form arity != shape arity");
        let st = strides(&self.shape);
        let mut out = Self::zero(&self.shape, self.q_trunc);
        for (flat, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut rem = flat;
            for (q, (&s, &l)) in st.iter().zip(&self.shape).enumerate() {
                let e = rem / s;
                rem %= s;
                let cq = form.coeffs()[q];
                if cq != 0 && e + 1 < l {
                    out.coeffs[flat + s].add_assign_scaled(c, cq);
                }
            }
        }
        out
    }

    /// Specialized product with a polynomial univariate in `x_axis`.
    pub fn mul_univariate(&self, axis: usize, uni: &[QSeries]) -> Self {
        assert!(axis < self.shape.len());
        let st = strides(&self.shape);
        let mut out = Self::zero(&self.shape, self.q_trunc);
        for (flat, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e_axis = (flat / st[axis]) % self.shape[axis];
            for (j, u) in uni.iter().enumerate() {
                if e_axis + j >= self.shape[axis] {
                    break;
                }
                if !u.is_zero() {
                    out.coeffs[flat + j * st[axis]].add_assign_mul(c, u);
                }
            }
        }
        out
    }

    /// Adds a `q`-series scalar to the constant coefficient.
    pub fn add_constant(&mut self, c: &QSeries) {
        self.coeffs[0].add_assign(c);
    }

    /// Multiplicative inverse in the truncated ring.
    ///
    /// Writes `self = c (1 + u)` with `c` the constant coefficient and `u`
    /// nilpotent, then expands the geometric series of `u` up to the total
    /// degree budget.
    pub fn inverse(&self) -> Result<Self, Error> {
        let c0_inv = self.coeffs[0].inverse()?;
        let u = {
            let mut scaled = self.scale_series(&c0_inv);
            let one = QSeries::one(self.q_trunc);
            scaled.coeffs[0] = &scaled.coeffs[0] - &one;
            scaled
        };
        // Horner form of 1 - u + u^2 - ... : v <- 1 - u v
        let one = Self::one(&self.shape, self.q_trunc);
        let mut v = one.clone();
        for _ in 0..self.degree_budget() {
            v = one.sub(&u.mul(&v));
        }
        Ok(v.scale_series(&c0_inv))
    }

    /// Evaluates a characteristic series on a linear form: `F(sum c_q x_q)`
    /// in the truncated ring, by Horner recursion on the powers of the form.
    ///
    /// `F` must carry at least as many `y`-orders as the ring's total degree
    /// budget, otherwise the result would be silently wrong.
    pub fn substitute_linear(
        f: &CharSeries,
        form: &LinearForm,
        shape: &[usize],
    ) -> Result<Self, Error> {
        check_shape(shape);
        assert_eq!(form.len(), shape.len(), "linear form arity != shape arity");
        let budget: usize = shape.iter().map(|l| l - 1).sum();
        if f.y_order() < budget {
            return Err(Error::InsufficientOrder {
                needed: budget,
                got: f.y_order(),
            });
        }
        let mut acc = Self::constant(f.coeff(budget).clone(), shape);
        for m in (0..budget).rev() {
            acc = acc.mul_linear(form);
            acc.add_constant(f.coeff(m));
        }
        Ok(acc)
    }
}
