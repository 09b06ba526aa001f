//! Characteristic series of multiplicative genera, expanded exactly.
//!
//! A [`CharSeries`] is a univariate series `Q(y)` over the `q`-series ring
//! with `Q(0) = 1`; its product over the Chern roots of a manifold is the
//! total class of the corresponding genus. The Witten series is built from
//! the triple-product form of the Jacobi theta function; in the
//! normalization used throughout this crate the variable `y` is the honest
//! Chern root, the genus is rational-valued, and the `q^0` part of the
//! Witten series is exactly the A-hat series.
//!
//! The module also provides exact theta-function product expansions in
//! `w = e^{2 pi i v}` ([`ThetaExpansion`]) for identity tests; the `q^{1/4}`
//! and half-integer `w` prefactors of `theta` and `theta_1` are carried as
//! symbolic flags since every consumed quotient cancels them.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::qseries::QSeries;
use crate::{Int, Rat};

/// Which characteristic series a [`CharSeries`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SeriesKind {
    Witten,
    AHat,
    LGenus,
    Exp,
    Custom,
}

/// A truncated univariate series in `y` whose coefficients are `q`-series.
///
/// All coefficients share one `q`-truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSeries {
    kind: SeriesKind,
    coeffs: Vec<QSeries>,
}

pub(crate) fn series_mul(a: &[QSeries], b: &[QSeries], q_trunc: usize) -> Vec<QSeries> {
    let n = a.len().min(b.len());
    let mut out = vec![QSeries::zero(q_trunc); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            if !bj.is_zero() {
                out[i + j].add_assign_mul(ai, bj);
            }
        }
    }
    out
}

pub(crate) fn series_inv(a: &[QSeries], q_trunc: usize) -> Result<Vec<QSeries>, Error> {
    let a0_inv = a[0].inverse()?;
    let mut out = vec![QSeries::zero(q_trunc); a.len()];
    out[0] = a0_inv.clone();
    for n in 1..a.len() {
        let mut acc = QSeries::zero(q_trunc);
        for j in 1..=n {
            if !a[j].is_zero() && !out[n - j].is_zero() {
                acc.add_assign_mul(&a[j], &out[n - j]);
            }
        }
        out[n] = -&(&a0_inv * &acc);
    }
    Ok(out)
}

/// Even Taylor coefficients of `sinh(y/2)/(y/2)`: index `m` holds the
/// coefficient of `y^{2m}`, computed by recurrence.
fn sinh_half_over_half(half_orders: usize) -> Vec<Rat> {
    let mut t = Vec::with_capacity(half_orders + 1);
    t.push(Rat::one());
    for m in 1..=half_orders {
        let prev: &Rat = &t[m - 1];
        t.push(prev / crate::rat_int(4 * (2 * m as i64) * (2 * m as i64 + 1)));
    }
    t
}

fn spread_even(even: &[Rat], y_order: usize, q_trunc: usize) -> Vec<QSeries> {
    let mut out = vec![QSeries::zero(q_trunc); y_order + 1];
    for (m, c) in even.iter().enumerate() {
        if 2 * m <= y_order {
            out[2 * m] = QSeries::constant(c.clone(), q_trunc);
        }
    }
    out
}

impl CharSeries {
    /// Wraps explicit rational `y`-coefficients as a custom series.
    pub fn from_rational_coeffs(coeffs: Vec<Rat>, q_trunc: usize) -> Self {
        assert!(!coeffs.is_empty());
        Self {
            kind: SeriesKind::Custom,
            coeffs: coeffs
                .into_iter()
                .map(|c| QSeries::constant(c, q_trunc))
                .collect(),
        }
    }

    /// Wraps explicit `q`-series coefficients as a custom series.
    pub fn from_qseries_coeffs(coeffs: Vec<QSeries>) -> Self {
        assert!(!coeffs.is_empty());
        Self {
            kind: SeriesKind::Custom,
            coeffs,
        }
    }

    /// The A-hat series `(y/2)/sinh(y/2)`, `q`-independent.
    pub fn ahat_series(y_order: usize) -> Self {
        Self::ahat_series_at(y_order, 0)
    }

    pub(crate) fn ahat_series_at(y_order: usize, q_trunc: usize) -> Self {
        let s = spread_even(&sinh_half_over_half(y_order / 2), y_order, q_trunc);
        let coeffs = series_inv(&s, q_trunc).expect("constant term is 1");
        Self {
            kind: SeriesKind::AHat,
            coeffs,
        }
    }

    /// The L series `y/tanh(y)`, `q`-independent.
    pub fn lgenus_series(y_order: usize) -> Self {
        let half = y_order / 2;
        // cosh(y) and sinh(y)/y, both even, by recurrence.
        let mut cosh = Vec::with_capacity(half + 1);
        let mut sinh_over_y = Vec::with_capacity(half + 1);
        cosh.push(Rat::one());
        sinh_over_y.push(Rat::one());
        for m in 1..=half {
            let c: &Rat = &cosh[m - 1];
            cosh.push(c / crate::rat_int((2 * m as i64 - 1) * (2 * m as i64)));
            let s: &Rat = &sinh_over_y[m - 1];
            sinh_over_y.push(s / crate::rat_int((2 * m as i64) * (2 * m as i64 + 1)));
        }
        let cosh = spread_even(&cosh, y_order, 0);
        let sinh_over_y = spread_even(&sinh_over_y, y_order, 0);
        let inv = series_inv(&sinh_over_y, 0).expect("constant term is 1");
        Self {
            kind: SeriesKind::LGenus,
            coeffs: series_mul(&cosh, &inv, 0),
        }
    }

    /// The exponential series, `q`-independent.
    pub fn exp_series(y_order: usize) -> Self {
        Self::exp_series_at(y_order, 0)
    }

    pub(crate) fn exp_series_at(y_order: usize, q_trunc: usize) -> Self {
        let mut coeffs = Vec::with_capacity(y_order + 1);
        let mut c = Rat::one();
        coeffs.push(QSeries::constant(c.clone(), q_trunc));
        for k in 1..=y_order {
            c = &c / crate::rat_int(k as i64);
            coeffs.push(QSeries::constant(c.clone(), q_trunc));
        }
        Self {
            kind: SeriesKind::Exp,
            coeffs,
        }
    }

    /// The total-Chern-class series `1 + y`, used for Euler characteristics.
    pub fn euler_series(y_order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); y_order + 1];
        coeffs[0] = Rat::one();
        if y_order >= 1 {
            coeffs[1] = Rat::one();
        }
        Self::from_rational_coeffs(coeffs, 0)
    }

    /// The Witten series
    /// `[(y/2)/sinh(y/2)] * prod_{j=1}^{K} (1-q^{2j})^2 / ((1-q^{2j}e^y)(1-q^{2j}e^{-y}))`
    /// expanded through `y^{y_order}` and `q^{2K}`. Truncating the product at
    /// `j <= K` is exact through `q^{2K}` because later factors are
    /// `1 + O(q^{2(K+1)})`.
    pub fn witten_series(y_order: usize, q_trunc: usize) -> Self {
        let ahat = Self::ahat_series_at(y_order, q_trunc);
        let mut coeffs = ahat.coeffs;
        for j in 1..=q_trunc {
            // denominator (1 - q^{2j} e^y)(1 - q^{2j} e^{-y})
            //   = 1 - q^{2j}(e^y + e^{-y}) + q^{4j}
            let mut den = vec![QSeries::zero(q_trunc); y_order + 1];
            den[0] = {
                let mut d0 = QSeries::one(q_trunc);
                d0 = &d0 - &QSeries::monomial(crate::rat_int(2), j, q_trunc);
                &d0 + &QSeries::monomial(Rat::one(), 2 * j, q_trunc)
            };
            let mut inv_fact = Rat::one();
            for m in 1..=y_order {
                inv_fact = &inv_fact / crate::rat_int(m as i64);
                if m % 2 == 0 {
                    let c = -(&inv_fact + &inv_fact);
                    den[m] = QSeries::monomial(c, j, q_trunc);
                }
            }
            let inv = series_inv(&den, q_trunc).expect("constant term (1-q^{2j})^2 is invertible");
            // numerator scalar (1 - q^{2j})^2
            let one_minus = {
                let one = QSeries::one(q_trunc);
                &one - &QSeries::monomial(Rat::one(), j, q_trunc)
            };
            let numer = &one_minus * &one_minus;
            let factor: Vec<QSeries> = inv.iter().map(|c| c * &numer).collect();
            coeffs = series_mul(&coeffs, &factor, q_trunc);
        }
        debug_assert!(coeffs[0].is_one());
        Self {
            kind: SeriesKind::Witten,
            coeffs,
        }
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    /// Highest stored power of `y`.
    pub fn y_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Shared `q`-truncation order of the coefficients.
    pub fn q_trunc(&self) -> usize {
        self.coeffs[0].trunc_order()
    }

    /// Coefficient of `y^k`.
    pub fn coeff(&self, k: usize) -> &QSeries {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[QSeries] {
        &self.coeffs
    }

    /// True when every odd `y`-coefficient is exactly zero.
    pub fn is_even_in_y(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// Product of two series, truncated to the shorter `y`-order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let k = self.q_trunc().min(rhs.q_trunc());
        Self {
            kind: SeriesKind::Custom,
            coeffs: series_mul(&self.coeffs, &rhs.coeffs, k),
        }
    }

    /// Reciprocal series `1/Q(y)` to the same `y`-order.
    pub fn reciprocal(&self) -> Result<Self, Error> {
        Ok(Self {
            kind: SeriesKind::Custom,
            coeffs: series_inv(&self.coeffs, self.q_trunc())?,
        })
    }
}

// ---------------------------------------------------------------------------
// Exact theta-function product expansions
// ---------------------------------------------------------------------------

/// The four Jacobi theta functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaKind {
    Theta,
    Theta1,
    Theta2,
    Theta3,
}

/// Symbolic prefactor of a theta product expansion.
///
/// `Sin` stands for `2 q^{1/4} sin(pi v) = q^{1/4} (w^{1/2} - w^{-1/2})/i`,
/// `Cos` for `2 q^{1/4} cos(pi v) = q^{1/4} (w^{1/2} + w^{-1/2})`. Callers
/// only ever form quotients in which the `q^{1/4}` and half-integer powers
/// cancel, so neither is ever expanded into series coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaPrefactor {
    Sin,
    Cos,
    One,
}

/// A polynomial in `q` with integer coefficients; unlike [`QSeries`] both
/// parities of exponent occur (the `theta_2`, `theta_3` products contain
/// odd powers `q^{2j-1}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Int>,
}

impl QPoly {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Int::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut p = Self::zero(order);
        p.coeffs[0] = Int::one();
        p
    }

    /// `1 + sign * q^n`, truncated.
    pub fn one_plus_power(sign: i64, n: usize, order: usize) -> Self {
        let mut p = Self::one(order);
        if n <= order {
            p.coeffs[n] += Int::from(sign);
        }
        p
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.coeffs.len().min(rhs.coeffs.len()) - 1;
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

/// Exact truncated product expansion of a theta function as a Laurent
/// polynomial in `w = e^{2 pi i v}` with `q`-polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaExpansion {
    kind: ThetaKind,
    prefactor: ThetaPrefactor,
    /// `w`-exponent -> coefficient; exponents clipped to `|e| <= w_order`.
    terms: BTreeMap<i64, QPoly>,
    w_order: i64,
    q_order: usize,
}

/// Expands the product part of a theta function over `j <= product_terms`,
/// keeping `w`-exponents up to `w_order` in magnitude and `q`-exponents up
/// to `2 * product_terms` (through which the truncated product is exact).
pub fn theta_qexp(kind: ThetaKind, w_order: usize, product_terms: usize) -> ThetaExpansion {
    let q_order = 2 * product_terms;
    let w_order = w_order as i64;
    let (sign, odd_powers) = match kind {
        ThetaKind::Theta => (-1i64, false),
        ThetaKind::Theta1 => (1, false),
        ThetaKind::Theta2 => (-1, true),
        ThetaKind::Theta3 => (1, true),
    };
    let prefactor = match kind {
        ThetaKind::Theta => ThetaPrefactor::Sin,
        ThetaKind::Theta1 => ThetaPrefactor::Cos,
        ThetaKind::Theta2 | ThetaKind::Theta3 => ThetaPrefactor::One,
    };

    let mut terms: BTreeMap<i64, QPoly> = BTreeMap::new();
    terms.insert(0, QPoly::one(q_order));

    // Intermediate products keep every w-exponent: a term outside the final
    // window can drift back in through later w^{-1} picks. The q-truncation
    // keeps the live range small (a net w-exponent of e costs at least
    // q^{e^2}), and identically-zero coefficients are pruned.
    let mul_in = |terms: &BTreeMap<i64, QPoly>, w_exp: i64, tail: &QPoly| {
        // terms * (1 + w^{w_exp} * tail)
        let mut out: BTreeMap<i64, QPoly> = BTreeMap::new();
        for (&e, p) in terms {
            out.entry(e).or_insert_with(|| QPoly::zero(q_order)).add_assign(p);
            let shifted = p.mul(tail);
            if !shifted.is_zero() {
                out.entry(e + w_exp)
                    .or_insert_with(|| QPoly::zero(q_order))
                    .add_assign(&shifted);
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    };

    for j in 1..=product_terms {
        let n = if odd_powers { 2 * j - 1 } else { 2 * j };
        // (1 - q^{2j}) carries no w
        let euler_factor = QPoly::one_plus_power(-1, 2 * j, q_order);
        for p in terms.values_mut() {
            *p = p.mul(&euler_factor);
        }
        // (1 + sign w q^n) and (1 + sign w^{-1} q^n): the tail multiplying
        // w^{+-1} is sign * q^n
        let mut tail = QPoly::zero(q_order);
        if n <= q_order {
            tail.coeffs[n] = Int::from(sign);
        }
        terms = mul_in(&terms, 1, &tail);
        terms = mul_in(&terms, -1, &tail);
    }
    terms.retain(|&e, _| e.abs() <= w_order);

    ThetaExpansion {
        kind,
        prefactor,
        terms,
        w_order,
        q_order,
    }
}

impl ThetaExpansion {
    pub fn kind(&self) -> ThetaKind {
        self.kind
    }

    pub fn prefactor(&self) -> ThetaPrefactor {
        self.prefactor
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    /// Coefficient of `w^e`, if present.
    pub fn coefficient(&self, w_exp: i64) -> Option<&QPoly> {
        self.terms.get(&w_exp)
    }

    /// The product part evaluated at `w = 1` (i.e. `v = 0`).
    pub fn product_at_w_one(&self) -> QPoly {
        let mut acc = QPoly::zero(self.q_order);
        for p in self.terms.values() {
            acc.add_assign(p);
        }
        acc
    }

    /// Value of the symbolic prefactor at `v = 0` (dropping `q^{1/4}`):
    /// `2 sin(0) = 0`, `2 cos(0) = 2`, or `1`.
    pub fn prefactor_at_v_zero(&self) -> i64 {
        match self.prefactor {
            ThetaPrefactor::Sin => 0,
            ThetaPrefactor::Cos => 2,
            ThetaPrefactor::One => 1,
        }
    }

    /// Full value at `v = 0` modulo the symbolic `q^{1/4}`: zero for
    /// `theta`, otherwise prefactor times the product part.
    pub fn value_at_v_zero(&self) -> QPoly {
        let pre = self.prefactor_at_v_zero();
        if pre == 0 {
            return QPoly::zero(self.q_order);
        }
        let mut acc = self.product_at_w_one();
        if pre != 1 {
            let mut scaled = QPoly::zero(self.q_order);
            for (i, c) in acc.coeffs.iter().enumerate() {
                scaled.coeffs[i] = c * Int::from(pre);
            }
            acc = scaled;
        }
        acc
    }
}
