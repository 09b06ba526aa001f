//! Complete intersections in products of projective spaces: characteristic
//! classes, the string-condition certificate, and genus evaluation.
//!
//! A genus with characteristic series `Q` is computed as the coefficient of
//! `x_1^{n_1} ... x_s^{n_s}` in
//!
//! ```text
//!   prod_q Q(x_q)^{n_q+1} * prod_p l_p / Q(l_p),      l_p = sum_q d_pq x_q
//! ```
//!
//! which is the push-forward form of pairing the genus class of the
//! intersection with its fundamental class: the ambient extension of the
//! class is multiplied by the dual class `prod_p l_p`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::charseries::{CharSeries, SeriesKind};
use crate::error::Error;
use crate::mseries::{LinearForm, MSeries};
use crate::qseries::QSeries;
use crate::{Int, Rat};

/// A (generalized) complete intersection: the ambient factor dimensions
/// `n_1, ..., n_s` and an integer degree matrix with one row per divisor.
/// Degrees may be zero or negative; all-zero rows are rejected as
/// degenerate divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteIntersection {
    n: Vec<usize>,
    rows: Vec<LinearForm>,
}

impl CompleteIntersection {
    pub fn new(n: Vec<usize>, degrees: Vec<Vec<i64>>) -> Result<Self, Error> {
        if n.is_empty() {
            return Err(Error::DegenerateInstance(
                "need at least one ambient factor".into(),
            ));
        }
        let s = n.len();
        let mut rows = Vec::with_capacity(degrees.len());
        for (p, row) in degrees.into_iter().enumerate() {
            if row.len() != s {
                return Err(Error::DegenerateInstance(format!(
                    "row p={} has {} entries, expected {}",
                    p + 1,
                    row.len(),
                    s
                )));
            }
            if row.iter().all(|&d| d == 0) {
                return Err(Error::DegenerateInstance(format!(
                    "degenerate divisor: zero row p={}",
                    p + 1
                )));
            }
            rows.push(LinearForm::new(row));
        }
        let total: usize = n.iter().sum();
        if rows.len() > total {
            return Err(Error::DegenerateInstance(format!(
                "negative complex dimension: {} divisors in a {}-dimensional ambient space",
                rows.len(),
                total
            )));
        }
        Ok(Self { n, rows })
    }

    /// Number of projective factors `s`.
    pub fn s(&self) -> usize {
        self.n.len()
    }

    /// Number of divisor rows `t`.
    pub fn t(&self) -> usize {
        self.rows.len()
    }

    /// Ambient factor dimensions `n_q`.
    pub fn ambient_dims(&self) -> &[usize] {
        &self.n
    }

    pub fn rows(&self) -> &[LinearForm] {
        &self.rows
    }

    pub fn degree_rows(&self) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| r.coeffs().to_vec()).collect()
    }

    /// `sum n_q - t`.
    pub fn complex_dim(&self) -> usize {
        self.n.iter().sum::<usize>() - self.t()
    }

    pub fn real_dim(&self) -> usize {
        2 * self.complex_dim()
    }

    /// Total-degree budget `sum n_q` of the ambient cohomology ring.
    pub fn total_degree(&self) -> usize {
        self.n.iter().sum()
    }

    /// Truncation shape `(n_1+1, ..., n_s+1)`.
    pub fn shape(&self) -> Vec<usize> {
        self.n.iter().map(|&nq| nq + 1).collect()
    }

    /// `m_q`: number of nonzero entries in column `q`.
    pub fn col_nonzero_counts(&self) -> Vec<usize> {
        (0..self.s())
            .map(|q| self.rows.iter().filter(|r| r.coeffs()[q] != 0).count())
            .collect()
    }

    /// Entry `(u, v)` of the Gram matrix `D^t D`.
    fn gram(&self, u: usize, v: usize) -> i64 {
        self.rows
            .iter()
            .map(|r| r.coeffs()[u] * r.coeffs()[v])
            .sum()
    }
}

/// Outcome of the string decision with the evidence used.
///
/// `is_string` restates the matrix criterion `D^t D = diag(n_q + 1)`. When
/// `lefschetz_ok` fails (`m_q + 2 <= n_q` violated), the equivalence between
/// the criterion and the push-forward computation is not guaranteed and the
/// verdict carries that caveat.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringCertificate {
    pub is_string: bool,
    pub lefschetz_ok: bool,
    pub matrix_criterion_ok: bool,
    pub pushforward_p1_zero: bool,
    pub w2_zero_mod2: bool,
}

/// The genus kinds a [`GenusReport`] can carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenusKind {
    Witten,
    AHat,
    LGenus,
    AHatTwisted,
    LGenusTwisted,
    Euler,
}

impl GenusKind {
    pub const ALL: [GenusKind; 6] = [
        GenusKind::Witten,
        GenusKind::AHat,
        GenusKind::LGenus,
        GenusKind::AHatTwisted,
        GenusKind::LGenusTwisted,
        GenusKind::Euler,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            GenusKind::Witten => "witten",
            GenusKind::AHat => "ahat",
            GenusKind::LGenus => "lgenus",
            GenusKind::AHatTwisted => "ahat-twisted",
            GenusKind::LGenusTwisted => "lgenus-twisted",
            GenusKind::Euler => "euler",
        }
    }
}

/// A computed genus value together with the instance context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub genus_kind: GenusKind,
    pub value: QSeries,
    pub complex_dim: usize,
    pub real_dim: usize,
    pub string: StringCertificate,
}

/// Low Stiefel-Whitney data: `w_1` (always zero) and the mod-2 coefficient
/// vector of `w_2` over the hyperplane classes,
/// `w_2 = sum_q (n_q + 1 - sum_p d_pq) x_q mod 2`.
pub fn stiefel_whitney_low(ci: &CompleteIntersection) -> (u8, Vec<u8>) {
    let w2 = (0..ci.s())
        .map(|q| {
            let col_sum: i64 = ci.rows.iter().map(|r| r.coeffs()[q]).sum();
            (((ci.n[q] as i64 + 1 - col_sum) % 2).unsigned_abs() % 2) as u8
        })
        .collect();
    (0, w2)
}

/// First Pontryagin class of the intersection, extended to the ambient
/// ring: `sum_q (n_q+1) x_q^2 - sum_p l_p^2`, `q`-independent.
pub fn p1_ambient(ci: &CompleteIntersection) -> MSeries {
    let shape = ci.shape();
    let mut p1 = MSeries::zero(&shape, 0);
    for (q, &nq) in ci.n.iter().enumerate() {
        let mut e = vec![0i64; ci.s()];
        e[q] = 1;
        let xq = MSeries::linear(&LinearForm::new(e), &shape, 0);
        p1 = p1.add(&xq.mul(&xq).scale_series(&QSeries::constant(
            crate::rat_int(nq as i64 + 1),
            0,
        )));
    }
    for row in &ci.rows {
        let l = MSeries::linear(row, &shape, 0);
        p1 = p1.sub(&l.mul(&l));
    }
    p1
}

/// Decides the string condition and assembles the full certificate.
///
/// The push-forward flag tests `prod_p l_p * p_1 = 0` exactly in the
/// truncated ambient ring; the matrix criterion uses integer arithmetic
/// only.
pub fn is_string(ci: &CompleteIntersection) -> StringCertificate {
    let m = ci.col_nonzero_counts();
    let lefschetz_ok = (0..ci.s()).all(|q| m[q] + 2 <= ci.n[q]);

    let matrix_criterion_ok = (0..ci.s()).all(|u| {
        (0..ci.s()).all(|v| {
            let want = if u == v { ci.n[u] as i64 + 1 } else { 0 };
            ci.gram(u, v) == want
        })
    });

    // Parity self-check: n_q+1 - sum d_pq^2 and n_q+1 - sum d_pq agree mod 2.
    for q in 0..ci.s() {
        let sum: i64 = ci.rows.iter().map(|r| r.coeffs()[q]).sum();
        let sum_sq: i64 = ci.rows.iter().map(|r| r.coeffs()[q].pow(2)).sum();
        assert_eq!((sum_sq - sum).rem_euclid(2), 0, "parity relation violated");
    }

    let (_, w2) = stiefel_whitney_low(ci);
    let w2_zero_mod2 = w2.iter().all(|&b| b == 0);

    let pushforward_p1_zero = {
        let mut cls = p1_ambient(ci);
        for row in &ci.rows {
            cls = cls.mul_linear(row);
        }
        cls.is_zero()
    };

    let cert = StringCertificate {
        is_string: matrix_criterion_ok,
        lefschetz_ok,
        matrix_criterion_ok,
        pushforward_p1_zero,
        w2_zero_mod2,
    };
    if lefschetz_ok {
        debug_assert_eq!(
            matrix_criterion_ok,
            pushforward_p1_zero && w2_zero_mod2,
            "criterion equivalence must hold under the Lefschetz condition"
        );
    }
    cert
}

/// `Q(x)^e` as a univariate polynomial truncated at degree `max_deg`.
fn univariate_power(q: &CharSeries, max_deg: usize, e: usize, k: usize) -> Vec<QSeries> {
    let base: Vec<QSeries> = (0..=max_deg)
        .map(|i| {
            if i <= q.y_order() {
                q.coeff(i).truncated(q.coeff(i).trunc_order().min(k))
            } else {
                QSeries::zero(k)
            }
        })
        .collect();
    let mut acc: Vec<QSeries> = vec![QSeries::zero(k); max_deg + 1];
    acc[0] = QSeries::one(k);
    let mut sq = base;
    let mut e = e;
    loop {
        if e & 1 == 1 {
            acc = crate::charseries::series_mul(&acc, &sq, k);
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        sq = crate::charseries::series_mul(&sq, &sq, k);
    }
    acc
}

/// The full genus integrand in the ambient ring.
fn genus_integrand(ci: &CompleteIntersection, q: &CharSeries) -> Result<MSeries, Error> {
    let budget = ci.total_degree();
    if q.y_order() < budget {
        return Err(Error::InsufficientOrder {
            needed: budget,
            got: q.y_order(),
        });
    }
    let k = q.q_trunc();
    let shape = ci.shape();

    let mut acc = MSeries::one(&shape, k);
    for (axis, &nq) in ci.n.iter().enumerate() {
        let power = univariate_power(q, nq, nq + 1, k);
        acc = acc.mul_univariate(axis, &power);
    }

    if !ci.rows.is_empty() {
        // Substituting the reciprocal series is exact: substitution is a
        // ring homomorphism into a ring where the truncated tails of
        // Q * (1/Q) - 1 die by total degree.
        let q_inv = q.reciprocal()?;
        for row in &ci.rows {
            let inv_at_row = MSeries::substitute_linear(&q_inv, row, &shape)?;
            acc = acc.mul_linear(row).mul(&inv_at_row);
        }
    }
    Ok(acc)
}

/// Genus value: coefficient of `x_1^{n_1} ... x_s^{n_s}` of the integrand.
pub fn genus_value(ci: &CompleteIntersection, q: &CharSeries) -> Result<QSeries, Error> {
    let integrand = genus_integrand(ci, q)?;
    Ok(integrand.coefficient_at(ci.ambient_dims())?.clone())
}

/// The Chern character of the complexified tangent bundle extended to the
/// ambient ring:
/// `sum_q (n_q+1)(e^{x_q} + e^{-x_q}) - 2s - sum_p (e^{l_p} + e^{-l_p})`.
pub fn tangent_chern_character(
    ci: &CompleteIntersection,
    q_trunc: usize,
) -> Result<MSeries, Error> {
    let shape = ci.shape();
    let budget = ci.total_degree();
    let mut ch = MSeries::zero(&shape, q_trunc);

    for (axis, &nq) in ci.n.iter().enumerate() {
        // (n_q+1)(e^{x} + e^{-x}): coefficient of x^i is 2 (n_q+1) / i! for
        // even i, zero for odd i
        let mut uni = vec![QSeries::zero(q_trunc); nq + 1];
        let mut inv_fact = Rat::one();
        for i in 0..=nq {
            if i > 0 {
                inv_fact = &inv_fact / crate::rat_int(i as i64);
            }
            if i % 2 == 0 {
                let c = &inv_fact * crate::rat_int(2 * (nq as i64 + 1));
                uni[i] = QSeries::constant(c, q_trunc);
            }
        }
        ch = ch.add(&MSeries::from_univariate(axis, &uni, &shape, q_trunc));
    }

    ch.add_constant(&QSeries::constant(crate::rat_int(-2 * ci.s() as i64), q_trunc));

    if !ci.rows.is_empty() {
        let exp = CharSeries::exp_series_at(budget, q_trunc);
        for row in &ci.rows {
            let plus = MSeries::substitute_linear(&exp, row, &shape)?;
            let minus = MSeries::substitute_linear(&exp, &row.negated(), &shape)?;
            ch = ch.sub(&plus).sub(&minus);
        }
    }
    Ok(ch)
}

/// Genus twisted by `ch(T_C V)`: the integrand gains the Chern-character
/// factor before coefficient extraction.
pub fn twisted_genus_value(ci: &CompleteIntersection, q: &CharSeries) -> Result<QSeries, Error> {
    let integrand = genus_integrand(ci, q)?;
    let ch = tangent_chern_character(ci, q.q_trunc())?;
    Ok(integrand.mul(&ch).coefficient_at(ci.ambient_dims())?.clone())
}

fn report_kind(kind: SeriesKind, twisted: bool) -> Result<GenusKind, Error> {
    match (kind, twisted) {
        (SeriesKind::Witten, false) => Ok(GenusKind::Witten),
        (SeriesKind::AHat, false) => Ok(GenusKind::AHat),
        (SeriesKind::LGenus, false) => Ok(GenusKind::LGenus),
        (SeriesKind::AHat, true) => Ok(GenusKind::AHatTwisted),
        (SeriesKind::LGenus, true) => Ok(GenusKind::LGenusTwisted),
        _ => Err(Error::InvalidParameter(format!(
            "no report kind for series {kind:?} (twisted = {twisted})"
        ))),
    }
}

/// Genus evaluation with full report context.
pub fn genus(ci: &CompleteIntersection, q: &CharSeries) -> Result<GenusReport, Error> {
    Ok(GenusReport {
        genus_kind: report_kind(q.kind(), false)?,
        value: genus_value(ci, q)?,
        complex_dim: ci.complex_dim(),
        real_dim: ci.real_dim(),
        string: is_string(ci),
    })
}

/// Twisted genus evaluation with full report context.
pub fn twisted_genus(ci: &CompleteIntersection, q: &CharSeries) -> Result<GenusReport, Error> {
    Ok(GenusReport {
        genus_kind: report_kind(q.kind(), true)?,
        value: twisted_genus_value(ci, q)?,
        complex_dim: ci.complex_dim(),
        real_dim: ci.real_dim(),
        string: is_string(ci),
    })
}

/// Computes any report kind at the given `q`-truncation, building the
/// characteristic series at the instance's degree budget.
pub fn genus_report(
    ci: &CompleteIntersection,
    kind: GenusKind,
    q_trunc: usize,
) -> Result<GenusReport, Error> {
    let budget = ci.total_degree();
    match kind {
        GenusKind::Witten => genus(ci, &CharSeries::witten_series(budget, q_trunc)),
        GenusKind::AHat => genus(ci, &CharSeries::ahat_series(budget)),
        GenusKind::LGenus => genus(ci, &CharSeries::lgenus_series(budget)),
        GenusKind::AHatTwisted => twisted_genus(ci, &CharSeries::ahat_series(budget)),
        GenusKind::LGenusTwisted => twisted_genus(ci, &CharSeries::lgenus_series(budget)),
        GenusKind::Euler => {
            let chi = euler_characteristic(ci)?;
            Ok(GenusReport {
                genus_kind: GenusKind::Euler,
                value: QSeries::constant(Rat::from(chi), 0),
                complex_dim: ci.complex_dim(),
                real_dim: ci.real_dim(),
                string: is_string(ci),
            })
        }
    }
}

/// Euler characteristic: coefficient of `x^{n}` in
/// `prod_q (1+x_q)^{n_q+1} * prod_p l_p / (1+l_p)`; always an integer.
pub fn euler_characteristic(ci: &CompleteIntersection) -> Result<Int, Error> {
    let chi = genus_value(ci, &CharSeries::euler_series(ci.total_degree()))?;
    let value = chi.constant_term();
    debug_assert!(value.is_integer(), "Euler characteristic must be integral");
    Ok(value.to_integer())
}

/// Both sides of the signature identity for the instance's real dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub real_dim: usize,
    /// `<A-hat, [V]>`
    pub ahat: Rat,
    /// `<A-hat ch(T_C V), [V]>`
    pub ahat_twisted: Rat,
    /// dim 12: the signature; dim 16: the twisted signature.
    pub lhs: Rat,
    /// dim 12: `8 ahat_twisted - 32 ahat`; dim 16: `-2048 (ahat_twisted - 48 ahat)`.
    pub rhs: Rat,
    pub holds: bool,
}

/// Checks the dimension-specific relations between the signature side and
/// the A-hat side: in real dimension 12, `L = 8 A-hat ch - 32 A-hat`; in
/// real dimension 16, `L ch = -2048 (A-hat ch - 48 A-hat)`.
pub fn corollary_identities(ci: &CompleteIntersection) -> Result<CorollaryReport, Error> {
    let real_dim = ci.real_dim();
    if real_dim != 12 && real_dim != 16 {
        return Err(Error::DimensionMismatch {
            expected: "12 or 16".into(),
            got: real_dim,
        });
    }
    let budget = ci.total_degree();
    let ahat_series = CharSeries::ahat_series(budget);
    let lgenus_series = CharSeries::lgenus_series(budget);
    let ahat = genus_value(ci, &ahat_series)?.constant_term().clone();
    let ahat_twisted = twisted_genus_value(ci, &ahat_series)?
        .constant_term()
        .clone();
    let (lhs, rhs) = if real_dim == 12 {
        let sig = genus_value(ci, &lgenus_series)?.constant_term().clone();
        let rhs = &ahat_twisted * crate::rat_int(8) - &ahat * crate::rat_int(32);
        (sig, rhs)
    } else {
        let sig_twisted = twisted_genus_value(ci, &lgenus_series)?
            .constant_term()
            .clone();
        let rhs = (&ahat_twisted - &ahat * crate::rat_int(48)) * crate::rat_int(-2048);
        (sig_twisted, rhs)
    };
    let holds = lhs == rhs;
    Ok(CorollaryReport {
        real_dim,
        ahat,
        ahat_twisted,
        lhs,
        rhs,
        holds,
    })
}
