//! Enumeration of string-admissible degree matrices and vanishing sweeps.
//!
//! A degree matrix is admissible when `D^t D = diag(n_q + 1)` and every
//! column satisfies `m_q + 2 <= n_q`. Matrices are enumerated once per
//! equivalence class under row permutations and whole-row sign flips (both
//! preserve the Gram matrix and the geometry up to orientation); column
//! permutations are deliberately not quotiented since they re-pair columns
//! with ambient factors.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charseries::CharSeries;
use crate::error::Error;
use crate::geometry::{genus_value, CompleteIntersection};

/// The ambient dimensions a search ranges over: one fixed vector, or every
/// vector with entries in `1..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AmbientSpec {
    Exact(Vec<usize>),
    UpTo(usize),
}

/// Bounds for enumeration and verification sweeps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub s: usize,
    pub t_max: usize,
    pub ambient: AmbientSpec,
    pub allow_odd_dim: bool,
}

impl SearchBounds {
    pub fn validate(&self) -> Result<(), Error> {
        if self.s < 1 {
            return Err(Error::InvalidParameter("s must be >= 1".into()));
        }
        if self.t_max < 1 {
            return Err(Error::InvalidParameter("t_max must be >= 1".into()));
        }
        match &self.ambient {
            AmbientSpec::Exact(n) => {
                if n.len() != self.s {
                    return Err(Error::InvalidParameter(format!(
                        "n has {} entries, expected s = {}",
                        n.len(),
                        self.s
                    )));
                }
                if n.iter().any(|&nq| nq < 1) {
                    return Err(Error::InvalidParameter("ambient dimensions must be >= 1".into()));
                }
            }
            AmbientSpec::UpTo(n_max) => {
                if *n_max < 1 {
                    return Err(Error::InvalidParameter("n_max must be >= 1".into()));
                }
            }
        }
        Ok(())
    }

    fn ambient_vectors(&self) -> Vec<Vec<usize>> {
        match &self.ambient {
            AmbientSpec::Exact(n) => vec![n.clone()],
            AmbientSpec::UpTo(n_max) => {
                let mut out = Vec::new();
                let mut cur = vec![1usize; self.s];
                loop {
                    out.push(cur.clone());
                    let mut axis = self.s;
                    while axis > 0 {
                        axis -= 1;
                        if cur[axis] < *n_max {
                            cur[axis] += 1;
                            for c in cur.iter_mut().skip(axis + 1) {
                                *c = 1;
                            }
                            break;
                        }
                        if axis == 0 {
                            return out;
                        }
                    }
                }
            }
        }
    }
}

/// A degree matrix in canonical form: every row sign-normalized so its
/// first nonzero entry is positive, rows sorted by (absolute pattern,
/// signed entries).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalMatrix {
    rows: Vec<Vec<i64>>,
}

fn normalize_row_sign(row: &[i64]) -> Vec<i64> {
    match row.iter().find(|&&d| d != 0) {
        Some(&first) if first < 0 => row.iter().map(|d| -d).collect(),
        _ => row.to_vec(),
    }
}

fn row_key(row: &[i64]) -> (Vec<i64>, Vec<i64>) {
    (row.iter().map(|d| d.abs()).collect(), row.to_vec())
}

impl CanonicalMatrix {
    /// Canonicalizes arbitrary rows. Idempotent; invariant under row
    /// permutations and row sign flips of the input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let mut rows: Vec<Vec<i64>> = rows.iter().map(|r| normalize_row_sign(r)).collect();
        rows.sort_by(|a, b| row_key(a).cmp(&row_key(b)));
        Self { rows }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn t(&self) -> usize {
        self.rows.len()
    }
}

fn isqrt(v: i64) -> i64 {
    let mut r = (v as f64).sqrt() as i64;
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    while r * r > v {
        r -= 1;
    }
    r
}

/// All sign-normalized nonzero candidate rows with `d_q^2 <= cap_q`.
fn candidate_rows(caps: &[i64]) -> Vec<Vec<i64>> {
    let s = caps.len();
    let bounds: Vec<i64> = caps.iter().map(|&c| isqrt(c)).collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; s];
    fn rec(q: usize, s: usize, bounds: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if q == s {
            if cur.iter().any(|&d| d != 0) {
                out.push(cur.clone());
            }
            return;
        }
        // sign normalization: entries before the first nonzero are zero and
        // the first nonzero must be positive
        let first_nonzero_seen = cur[..q].iter().any(|&d| d != 0);
        let lo = if first_nonzero_seen { -bounds[q] } else { 0 };
        for d in lo..=bounds[q] {
            cur[q] = d;
            rec(q + 1, s, bounds, cur, out);
        }
        cur[q] = 0;
    }
    rec(0, s, &bounds, &mut cur, &mut out);
    out.sort_by(|a, b| row_key(a).cmp(&row_key(b)));
    out
}

/// Enumerates every admissible `(n, D)` within the bounds, exactly once per
/// row-permutation/sign-flip class. Depth-first row construction: rows are
/// produced in non-decreasing key order, per-column square norms are
/// tracked against `n_q + 1`, and branches die when the remaining rows
/// cannot cover the remaining norm.
pub fn enumerate_string_matrices(
    bounds: &SearchBounds,
) -> Result<Vec<(Vec<usize>, CanonicalMatrix)>, Error> {
    bounds.validate()?;
    let mut out = Vec::new();
    for n in bounds.ambient_vectors() {
        let mut found = Vec::new();
        let mut remaining: Vec<i64> = n.iter().map(|&nq| nq as i64 + 1).collect();
        let s = bounds.s;
        let mut cross = vec![0i64; s * s];
        let mut rows: Vec<Vec<i64>> = Vec::new();
        dfs(
            &n,
            bounds.t_max,
            &mut rows,
            &mut remaining,
            &mut cross,
            &mut found,
        );
        found.sort();
        out.extend(found.into_iter().map(|m| (n.clone(), m)));
    }
    Ok(out)
}

fn dfs(
    n: &[usize],
    t_max: usize,
    rows: &mut Vec<Vec<i64>>,
    remaining: &mut Vec<i64>,
    cross: &mut Vec<i64>,
    found: &mut Vec<CanonicalMatrix>,
) {
    let s = n.len();
    if remaining.iter().all(|&r| r == 0) {
        let orthogonal = (0..s).all(|u| (u + 1..s).all(|v| cross[u * s + v] == 0));
        if orthogonal && !rows.is_empty() {
            let lefschetz = (0..s).all(|q| {
                let m_q = rows.iter().filter(|r| r[q] != 0).count();
                m_q + 2 <= n[q]
            });
            if lefschetz {
                found.push(CanonicalMatrix::from_rows(rows));
            }
        }
        // no nonzero row fits anymore
        return;
    }
    if rows.len() == t_max {
        return;
    }
    let rows_left = (t_max - rows.len()) as i64;
    for q in 0..s {
        let b = isqrt(remaining[q]);
        if remaining[q] > rows_left * b * b {
            return;
        }
    }

    let candidates = candidate_rows(remaining);
    let prev_key = rows.last().map(|r| row_key(r));
    for cand in candidates {
        if let Some(ref pk) = prev_key {
            if row_key(&cand) < *pk {
                continue;
            }
        }
        for q in 0..s {
            remaining[q] -= cand[q] * cand[q];
        }
        for u in 0..s {
            for v in u + 1..s {
                cross[u * s + v] += cand[u] * cand[v];
            }
        }
        rows.push(cand);
        dfs(n, t_max, rows, remaining, cross, found);
        let cand = rows.pop().unwrap();
        for q in 0..s {
            remaining[q] += cand[q] * cand[q];
        }
        for u in 0..s {
            for v in u + 1..s {
                cross[u * s + v] -= cand[u] * cand[v];
            }
        }
    }
}

/// One verified instance of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepInstance {
    pub n: Vec<usize>,
    pub rows: Vec<Vec<i64>>,
    pub complex_dim: usize,
    pub witten_is_zero: bool,
    /// Printed series when nonzero - a counterexample signals an
    /// implementation bug, not a mathematical one.
    pub counterexample: Option<String>,
    pub elapsed_ms: u64,
}

/// Result of a vanishing-verification sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub s: usize,
    pub t_max: usize,
    pub q_order: usize,
    pub allow_odd_dim: bool,
    /// Single projective factor: the classically known special case.
    pub single_factor: bool,
    pub instances: Vec<SweepInstance>,
    /// Odd complex dimension, reported separately (the vanishing statement
    /// concerns dimensions divisible by four).
    pub odd_dim_instances: Vec<SweepInstance>,
    pub skipped_odd_dim: usize,
    pub failures: usize,
    pub total_ms: u64,
}

impl SweepReport {
    pub fn instance_count(&self) -> usize {
        self.instances.len() + self.odd_dim_instances.len()
    }
}

fn verify_instance(n: &[usize], matrix: &CanonicalMatrix, q_order: usize) -> SweepInstance {
    let start = std::time::Instant::now();
    let ci = CompleteIntersection::new(n.to_vec(), matrix.rows().to_vec())
        .expect("enumerated instances are valid");
    let witten = CharSeries::witten_series(ci.total_degree(), q_order);
    let value = genus_value(&ci, &witten).expect("series built at the degree budget");
    let witten_is_zero = value.is_zero();
    SweepInstance {
        n: n.to_vec(),
        rows: matrix.rows().to_vec(),
        complex_dim: ci.complex_dim(),
        witten_is_zero,
        counterexample: if witten_is_zero {
            None
        } else {
            Some(value.to_string())
        },
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs the vanishing verification over every enumerated instance: each
/// Witten genus must be exactly zero through `q^{2 q_order}`. Instances are
/// verified in parallel; the report order is the canonical enumeration
/// order.
pub fn verify_theorem(bounds: &SearchBounds, q_order: usize) -> Result<SweepReport, Error> {
    let start = std::time::Instant::now();
    let all = enumerate_string_matrices(bounds)?;

    let (odd, even): (Vec<_>, Vec<_>) = all
        .into_iter()
        .partition(|(n, m)| (n.iter().sum::<usize>() - m.t()) % 2 == 1);

    let instances: Vec<SweepInstance> = even
        .par_iter()
        .map(|(n, m)| verify_instance(n, m, q_order))
        .collect();
    let odd_dim_instances: Vec<SweepInstance> = if bounds.allow_odd_dim {
        odd.par_iter()
            .map(|(n, m)| verify_instance(n, m, q_order))
            .collect()
    } else {
        Vec::new()
    };
    let skipped_odd_dim = if bounds.allow_odd_dim { 0 } else { odd.len() };

    let failures = instances
        .iter()
        .chain(&odd_dim_instances)
        .filter(|i| !i.witten_is_zero)
        .count();

    Ok(SweepReport {
        s: bounds.s,
        t_max: bounds.t_max,
        q_order,
        allow_odd_dim: bounds.allow_odd_dim,
        single_factor: bounds.s == 1,
        instances,
        odd_dim_instances,
        skipped_odd_dim,
        failures,
        total_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn exact(s: usize, t_max: usize, n: &[usize]) -> SearchBounds {
        SearchBounds {
            s,
            t_max,
            ambient: AmbientSpec::Exact(n.to_vec()),
            allow_odd_dim: true,
        }
    }

    #[test]
    fn six_as_sum_of_squares() {
        // 6 = 4 + 1 + 1 is the only decomposition into at most 3 nonzero
        // squares, so n = 5 admits exactly the degrees (2, 1, 1).
        let got = enumerate_string_matrices(&exact(1, 3, &[5])).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].0, vec![5]);
        assert_eq!(got[0].1.rows(), &[vec![1], vec![1], vec![2]]);
    }

    #[test]
    fn four_is_a_square() {
        let got = enumerate_string_matrices(&exact(1, 1, &[3])).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].1.rows(), &[vec![2]]);
    }

    #[test]
    fn three_is_not_a_square() {
        let got = enumerate_string_matrices(&exact(1, 1, &[2])).unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn emitted_matrices_are_sound() {
        let bounds = SearchBounds {
            s: 2,
            t_max: 4,
            ambient: AmbientSpec::UpTo(6),
            allow_odd_dim: true,
        };
        let got = enumerate_string_matrices(&bounds).unwrap();
        assert!(!got.is_empty());
        for (n, m) in &got {
            // independent Gram re-check
            for u in 0..2 {
                for v in 0..2 {
                    let g: i64 = m.rows().iter().map(|r| r[u] * r[v]).sum();
                    let want = if u == v { n[u] as i64 + 1 } else { 0 };
                    assert_eq!(g, want, "Gram mismatch for n={n:?} rows={:?}", m.rows());
                }
            }
            for q in 0..2 {
                let m_q = m.rows().iter().filter(|r| r[q] != 0).count();
                assert!(m_q + 2 <= n[q]);
            }
            assert!(m.rows().iter().all(|r| r.iter().any(|&d| d != 0)));
        }
    }

    #[test]
    fn completeness_against_brute_force_single_factor() {
        // For one factor, compare against a filter over every matrix with
        // entries bounded by sqrt(n+1) and t <= 3.
        for n in 1..=29usize {
            let bounds = exact(1, 3, &[n]);
            let got: std::collections::BTreeSet<_> = enumerate_string_matrices(&bounds)
                .unwrap()
                .into_iter()
                .map(|(_, m)| m)
                .collect();

            let b = isqrt(n as i64 + 1);
            let mut brute = std::collections::BTreeSet::new();
            let mut stack: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
            while let Some(rows) = stack.pop() {
                if !rows.is_empty() {
                    let norm: i64 = rows.iter().map(|r| r[0] * r[0]).sum();
                    if norm == n as i64 + 1 && rows.len() + 2 <= n {
                        brute.insert(CanonicalMatrix::from_rows(&rows));
                    }
                }
                if rows.len() < 3 {
                    for d in -b..=b {
                        if d != 0 {
                            let mut next = rows.clone();
                            next.push(vec![d]);
                            stack.push(next);
                        }
                    }
                }
            }
            assert_eq!(got, brute, "mismatch at n={n}");
        }
    }

    #[test]
    fn canonicalization_is_stable_under_symmetry_moves() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let bounds = SearchBounds {
            s: 2,
            t_max: 5,
            ambient: AmbientSpec::UpTo(7),
            allow_odd_dim: true,
        };
        for (_, m) in enumerate_string_matrices(&bounds).unwrap() {
            for _ in 0..10 {
                let mut rows = m.rows().to_vec();
                rows.shuffle(&mut rng);
                for r in rows.iter_mut() {
                    if rng.gen_bool(0.5) {
                        for d in r.iter_mut() {
                            *d = -*d;
                        }
                    }
                }
                assert_eq!(CanonicalMatrix::from_rows(&rows), m);
            }
        }
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let m = CanonicalMatrix::from_rows(&[vec![-1, 2], vec![2, 1], vec![0, -1]]);
        assert_eq!(CanonicalMatrix::from_rows(m.rows()), m);
    }

    #[test]
    fn sweep_single_instance() {
        let report = verify_theorem(&exact(1, 3, &[5]), 2).unwrap();
        assert_eq!(report.instance_count(), 1);
        assert_eq!(report.failures, 0);
        assert!(report.single_factor);
    }

    #[test]
    fn sweep_includes_constructed_two_factor_instance() {
        let report = verify_theorem(&exact(2, 5, &[7, 4]), 2).unwrap();
        assert_eq!(report.failures, 0);
        let want_rows = vec![
            vec![1, 0],
            vec![1, 0],
            vec![1, 0],
            vec![1, -2],
            vec![2, 1],
        ];
        assert!(
            report
                .instances
                .iter()
                .any(|i| i.rows == want_rows),
            "expected instance missing; got {:?}",
            report.instances.iter().map(|i| &i.rows).collect::<Vec<_>>()
        );
    }

    #[test]
    fn sweep_empty_is_ok() {
        let report = verify_theorem(&exact(1, 1, &[2]), 4).unwrap();
        assert_eq!(report.instance_count(), 0);
        assert_eq!(report.failures, 0);
    }

    #[test]
    fn bounds_validation() {
        let bad = SearchBounds {
            s: 0,
            t_max: 1,
            ambient: AmbientSpec::UpTo(3),
            allow_odd_dim: false,
        };
        assert!(bad.validate().is_err());
        let mismatch = SearchBounds {
            s: 2,
            t_max: 1,
            ambient: AmbientSpec::Exact(vec![3]),
            allow_odd_dim: false,
        };
        assert!(enumerate_string_matrices(&mismatch).is_err());
    }
}
