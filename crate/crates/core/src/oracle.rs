//! Independent floating-complex verification of the exact path.
//!
//! Everything here is double-precision arithmetic on truncated theta
//! products: transformation-law checks, double-periodicity checks of the
//! genus integrand, and genus values recovered as coefficients of the
//! integrand by trapezoidal contour integration over a product of circles
//! (exponentially convergent for analytic integrands).
//!
//! The numeric path evaluates the *same* normalized function the exact path
//! expands: characteristic-series arguments are the honest Chern roots, so
//! theta quotients are evaluated at `v = y / (2 pi i)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::charseries::ThetaKind;
use crate::error::Error;
use crate::geometry::{is_string, CompleteIntersection, GenusKind};

const I: Complex64 = Complex64::new(0.0, 1.0);
const PI: f64 = std::f64::consts::PI;

fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

/// How many product terms are needed so that `|q|^{2J} < 1e-16`.
fn terms_for_q_norm(q_norm: f64) -> usize {
    if q_norm <= 0.0 {
        return 0;
    }
    let j = (16.0 * std::f64::consts::LN_10 / (-2.0 * q_norm.ln())).ceil() as usize;
    j.max(8) + 2
}

/// Evaluation parameters for the numeric theta functions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericThetaParams {
    tau: Complex64,
    product_terms: usize,
}

impl NumericThetaParams {
    /// Parameters for a given `tau` in the upper half plane; the product
    /// length is chosen from `|q| = |e^{i pi tau}|`.
    pub fn new(tau: Complex64) -> Result<Self, Error> {
        if !(tau.im > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tau must lie in the upper half plane, got {tau}"
            )));
        }
        let q_norm = (I * PI * tau).exp().norm();
        Ok(Self {
            tau,
            product_terms: terms_for_q_norm(q_norm),
        })
    }

    /// Parameters from a nome `q` with `0 < |q| < 1`, via `tau = -i ln(q) / pi`.
    pub fn from_q(q: Complex64) -> Result<Self, Error> {
        if q.norm() <= 0.0 || q.norm() >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "need 0 < |q| < 1 for theta products, got |q| = {}",
                q.norm()
            )));
        }
        Self::new(-I * q.ln() / PI)
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    /// The nome `q = e^{i pi tau}`.
    pub fn q(&self) -> Complex64 {
        (I * PI * self.tau).exp()
    }

    pub fn product_terms(&self) -> usize {
        self.product_terms
    }
}

/// Truncated-product evaluation of a Jacobi theta function.
pub fn theta_eval(kind: ThetaKind, v: Complex64, p: &NumericThetaParams) -> Complex64 {
    let q = p.q();
    let q2 = q * q;
    let w = (two_pi_i() * v).exp();
    let w_inv = (-two_pi_i() * v).exp();

    let (prefactor, sign, odd): (Complex64, f64, bool) = match kind {
        ThetaKind::Theta => (2.0 * (I * PI * p.tau / 4.0).exp() * (PI * v).sin(), -1.0, false),
        ThetaKind::Theta1 => (2.0 * (I * PI * p.tau / 4.0).exp() * (PI * v).cos(), 1.0, false),
        ThetaKind::Theta2 => (Complex64::new(1.0, 0.0), -1.0, true),
        ThetaKind::Theta3 => (Complex64::new(1.0, 0.0), 1.0, true),
    };

    let mut prod = Complex64::new(1.0, 0.0);
    let mut q_even = Complex64::new(1.0, 0.0); // q^{2j}
    let mut q_w = if odd { q } else { q2 }; // q^{2j-1} or q^{2j}
    for _ in 1..=p.product_terms {
        q_even *= q2;
        prod *= (1.0 - q_even) * (1.0 + sign * w * q_w) * (1.0 + sign * w_inv * q_w);
        q_w *= q2;
    }
    prefactor * prod
}

/// `theta'(0, tau) = 2 q^{1/4} pi prod (1 - q^{2j})^3`.
pub fn theta_prime_zero(p: &NumericThetaParams) -> Complex64 {
    let q2 = p.q() * p.q();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut q_even = Complex64::new(1.0, 0.0);
    for _ in 1..=p.product_terms {
        q_even *= q2;
        let f = 1.0 - q_even;
        prod *= f * f * f;
    }
    2.0 * (I * PI * p.tau / 4.0).exp() * PI * prod
}

fn rel_residual(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale < 1e-300 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

fn random_v<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(0.05..0.45), rng.gen_range(0.05..0.45))
}

/// Report of a transformation-law check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeLawReport {
    pub trials: usize,
    pub max_rel_residual: f64,
    pub worst_case: String,
}

/// Verifies, at random points, how all four theta functions transform
/// under `v -> v + m` and `v -> v + n tau` for `m, n` in `-2..=2`:
/// the shifts multiply by `(+-1)^m` resp. `(+-1)^n e^{-2 pi i n v - pi i n^2 tau}`
/// with the sign pattern depending on the function.
pub fn check_lattice_laws(p: &NumericThetaParams, trials: usize) -> LatticeLawReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a77_1ce5);
    let kinds = [
        ThetaKind::Theta,
        ThetaKind::Theta1,
        ThetaKind::Theta2,
        ThetaKind::Theta3,
    ];
    let mut max_res = 0.0f64;
    let mut worst = String::new();

    for _ in 0..trials {
        let v = random_v(&mut rng);
        for kind in kinds {
            let base = theta_eval(kind, v, p);
            for m in -2i32..=2 {
                let lhs = theta_eval(kind, v + m as f64, p);
                let sign = match kind {
                    ThetaKind::Theta | ThetaKind::Theta1 => (-1.0f64).powi(m),
                    ThetaKind::Theta2 | ThetaKind::Theta3 => 1.0,
                };
                let res = rel_residual(lhs, sign * base);
                if res > max_res {
                    max_res = res;
                    worst = format!("{kind:?} shift v+{m}");
                }
            }
            for n in -2i32..=2 {
                let lhs = theta_eval(kind, v + n as f64 * p.tau, p);
                let sign = match kind {
                    ThetaKind::Theta | ThetaKind::Theta2 => (-1.0f64).powi(n),
                    ThetaKind::Theta1 | ThetaKind::Theta3 => 1.0,
                };
                let factor = (-two_pi_i() * (n as f64) * v
                    - I * PI * (n as f64) * (n as f64) * p.tau)
                    .exp();
                let res = rel_residual(lhs, sign * factor * base);
                if res > max_res {
                    max_res = res;
                    worst = format!("{kind:?} shift v+{n}tau");
                }
            }
        }
    }
    LatticeLawReport {
        trials,
        max_rel_residual: max_res,
        worst_case: worst,
    }
}

/// Report of the integrand double-periodicity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicityReport {
    pub trials: usize,
    pub max_rel_residual: f64,
}

/// The genus integrand on the torus:
/// `H(x) = prod_p [theta(l_p(x))/theta'] / prod_q [theta(x_q)/theta']^{n_q+1}`.
fn torus_integrand(
    ci: &CompleteIntersection,
    x: &[Complex64],
    p: &NumericThetaParams,
) -> Complex64 {
    let tp = theta_prime_zero(p);
    let mut h = Complex64::new(1.0, 0.0);
    for row in ci.rows() {
        h *= theta_eval(ThetaKind::Theta, row.eval_complex(x), p) / tp;
    }
    for (q, &nq) in ci.ambient_dims().iter().enumerate() {
        let f = theta_eval(ThetaKind::Theta, x[q], p) / tp;
        h /= f.powi(nq as i32 + 1);
    }
    h
}

/// Checks that the integrand is invariant under `x_q -> x_q + 1` and
/// `x_q -> x_q + tau` at random points. Data failing the matrix criterion
/// is rejected unless `force` is set (the invariance genuinely fails
/// there, which makes the forced mode a negative control).
pub fn check_integrand_periodicity(
    ci: &CompleteIntersection,
    p: &NumericThetaParams,
    trials: usize,
    force: bool,
) -> Result<PeriodicityReport, Error> {
    let cert = is_string(ci);
    if !cert.matrix_criterion_ok && !force {
        return Err(Error::NotString(
            "periodicity of the integrand requires the matrix criterion".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e11_0d1c);
    let mut max_res = 0.0f64;
    for _ in 0..trials {
        let x: Vec<Complex64> = (0..ci.s()).map(|_| random_v(&mut rng)).collect();
        let base = torus_integrand(ci, &x, p);
        for q in 0..ci.s() {
            for shift in [Complex64::new(1.0, 0.0), p.tau()] {
                let mut xs = x.clone();
                xs[q] += shift;
                let shifted = torus_integrand(ci, &xs, p);
                max_res = max_res.max(rel_residual(shifted, base));
            }
        }
    }
    Ok(PeriodicityReport {
        trials,
        max_rel_residual: max_res,
    })
}

/// Contour data for coefficient extraction: per-variable circle radii (in
/// the honest-root coordinate), samples per circle, and the nome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub radii: Vec<f64>,
    pub n_samples: usize,
    pub q: Complex64,
}

impl ContourSpec {
    pub fn new(radii: Vec<f64>, n_samples: usize, q: Complex64) -> Result<Self, Error> {
        if radii.is_empty() || radii.iter().any(|&r| !(r > 0.0)) {
            return Err(Error::InvalidParameter("radii must be positive".into()));
        }
        if n_samples < 4 || !n_samples.is_power_of_two() {
            return Err(Error::InvalidParameter(
                "n_samples must be a power of two >= 4".into(),
            ));
        }
        if q.norm() >= 1.0 {
            return Err(Error::InvalidParameter("need |q| < 1".into()));
        }
        Ok(Self {
            radii,
            n_samples,
            q,
        })
    }

    /// Unit circles with 128 samples per axis.
    pub fn default_for(ci: &CompleteIntersection, q: Complex64) -> Result<Self, Error> {
        Self::new(vec![1.0; ci.s()], 128, q)
    }
}

/// `1/Q(u)` for the supported characteristic series, evaluated numerically
/// at the honest root `u`; entire in `u`, equal to 1 at `u = 0`.
fn inv_quotient(kind: GenusKind, u: Complex64, q: Complex64, terms: usize) -> Complex64 {
    match kind {
        GenusKind::AHat => {
            // sinh(u/2)/(u/2)
            let h = u / 2.0;
            if h.norm() < 1e-30 {
                Complex64::new(1.0, 0.0)
            } else {
                h.sinh() / h
            }
        }
        GenusKind::LGenus => {
            if u.norm() < 1e-30 {
                Complex64::new(1.0, 0.0)
            } else {
                u.tanh() / u
            }
        }
        GenusKind::Witten => {
            // theta(v)/(v theta'(0)) at v = u/(2 pi i):
            //   sinc(pi v) prod (1 - w q^{2j})(1 - w^{-1} q^{2j}) / (1 - q^{2j})^2
            let v = u / two_pi_i();
            let sinc = if v.norm() < 1e-30 {
                Complex64::new(1.0, 0.0)
            } else {
                (PI * v).sin() / (PI * v)
            };
            let w = u.exp();
            let w_inv = (-u).exp();
            let q2 = q * q;
            let mut prod = Complex64::new(1.0, 0.0);
            let mut qp = Complex64::new(1.0, 0.0);
            for _ in 1..=terms {
                qp *= q2;
                let d = 1.0 - qp;
                prod *= (1.0 - w * qp) * (1.0 - w_inv * qp) / (d * d);
            }
            sinc * prod
        }
        other => unreachable!("no numeric quotient for {other:?}"),
    }
}

fn grid_coefficient(
    ci: &CompleteIntersection,
    kind: GenusKind,
    spec: &ContourSpec,
    n_samples: usize,
) -> Complex64 {
    let s = ci.s();
    let terms = terms_for_q_norm(spec.q.norm());

    // Per-axis tables: z value and Q(z)^{n_q+1} e^{-i n_q phi} r_q^{-n_q}.
    let mut z_tables: Vec<Vec<Complex64>> = Vec::with_capacity(s);
    let mut f_tables: Vec<Vec<Complex64>> = Vec::with_capacity(s);
    for (q_axis, &nq) in ci.ambient_dims().iter().enumerate() {
        let r = spec.radii[q_axis];
        let mut zs = Vec::with_capacity(n_samples);
        let mut fs = Vec::with_capacity(n_samples);
        for k in 0..n_samples {
            let phi = 2.0 * PI * (k as f64) / (n_samples as f64);
            let z = Complex64::from_polar(r, phi);
            let quot = inv_quotient(kind, z, spec.q, terms);
            // Q(z)^{n_q+1} = quot^{-(n_q+1)}
            let f = quot.powi(-(nq as i32 + 1));
            let twist = Complex64::from_polar(r.powi(-(nq as i32)), -(nq as f64) * phi);
            zs.push(z);
            fs.push(f * twist);
        }
        z_tables.push(zs);
        f_tables.push(fs);
    }

    let mut sum = Complex64::new(0.0, 0.0);
    let mut idx = vec![0usize; s];
    let mut z = vec![Complex64::new(0.0, 0.0); s];
    loop {
        let mut val = Complex64::new(1.0, 0.0);
        for q_axis in 0..s {
            val *= f_tables[q_axis][idx[q_axis]];
            z[q_axis] = z_tables[q_axis][idx[q_axis]];
        }
        for row in ci.rows() {
            let l = row.eval_complex(&z);
            val *= l * inv_quotient(kind, l, spec.q, terms);
        }
        sum += val;

        // odometer
        let mut axis = s;
        loop {
            if axis == 0 {
                let scale = (n_samples as f64).powi(s as i32);
                return sum / scale;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < n_samples {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// Genus value recovered as the coefficient of `x^{n}` of the integrand by
/// an `s`-dimensional trapezoidal rule on a product of circles.
///
/// The rule is run at `n_samples` and `2 n_samples`; a relative change
/// above `1e-9` means the contour encloses a singularity (radius too
/// large) or undersamples, and is reported as a convergence failure.
pub fn residue_genus(
    ci: &CompleteIntersection,
    kind: GenusKind,
    spec: &ContourSpec,
) -> Result<Complex64, Error> {
    match kind {
        GenusKind::Witten | GenusKind::AHat | GenusKind::LGenus => {}
        other => {
            return Err(Error::InvalidParameter(format!(
                "residue oracle supports witten/ahat/lgenus, not {other:?}"
            )))
        }
    }
    if spec.radii.len() != ci.s() {
        return Err(Error::InvalidParameter(format!(
            "{} radii for {} variables",
            spec.radii.len(),
            ci.s()
        )));
    }
    // The contour must stay inside the analyticity disc of Q(z)^{n_q+1}:
    // past the first pole ring the trapezoid rule converges spectrally to a
    // different Laurent coefficient, which doubling cannot detect.
    let pole_bound = match kind {
        GenusKind::AHat => PI,
        GenusKind::LGenus => PI / 2.0,
        _ => {
            if spec.q.norm() == 0.0 {
                PI
            } else {
                let tau = -I * spec.q.ln() / PI;
                PI * tau.norm().min(1.0)
            }
        }
    };
    if let Some(&r) = spec.radii.iter().find(|&&r| r >= pole_bound) {
        return Err(Error::ConvergenceFailure(format!(
            "contour radius {r} reaches into the first pole ring (bound {pole_bound:.4} \
             for {} at |q| = {:.4})",
            kind.label(),
            spec.q.norm()
        )));
    }
    let coarse = grid_coefficient(ci, kind, spec, spec.n_samples);
    let fine = grid_coefficient(ci, kind, spec, 2 * spec.n_samples);
    let diff = (coarse - fine).norm();
    if diff > (1e-9 * fine.norm()).max(1e-11) {
        return Err(Error::ConvergenceFailure(format!(
            "doubling the grid moved the coefficient by {diff:.3e} \
             (|value| = {:.3e}); the contour radius is likely too large",
            fine.norm()
        )));
    }
    Ok(fine)
}

/// Report of the residue-theorem instance check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidueReport {
    pub residue_re: f64,
    pub residue_im: f64,
    pub residue_abs: f64,
}

/// For string data satisfying the Lefschetz condition the integrand lives
/// on a product of tori where the origin is the only pole, so its single
/// residue must vanish; this computes that residue numerically.
pub fn residue_sum_check(
    ci: &CompleteIntersection,
    spec: &ContourSpec,
) -> Result<ResidueReport, Error> {
    let cert = is_string(ci);
    if !(cert.matrix_criterion_ok && cert.lefschetz_ok) {
        return Err(Error::NotString(
            "residue sum check needs a string instance with the Lefschetz condition".into(),
        ));
    }
    let res = residue_genus(ci, GenusKind::Witten, spec)?;
    Ok(ResidueReport {
        residue_re: res.re,
        residue_im: res.im,
        residue_abs: res.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charseries::CharSeries;
    use crate::geometry::genus_value;

    fn ci(n: &[usize], d: &[&[i64]]) -> CompleteIntersection {
        CompleteIntersection::new(n.to_vec(), d.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn params_tau_i() -> NumericThetaParams {
        NumericThetaParams::new(Complex64::new(0.0, 1.0)).unwrap()
    }

    #[test]
    fn tau_must_be_in_upper_half_plane() {
        assert!(NumericThetaParams::new(Complex64::new(0.3, -0.1)).is_err());
        assert!(NumericThetaParams::from_q(Complex64::new(1.5, 0.0)).is_err());
    }

    #[test]
    fn theta_vanishes_at_zero() {
        let p = params_tau_i();
        assert!(theta_eval(ThetaKind::Theta, Complex64::new(0.0, 0.0), &p).norm() < 1e-14);
    }

    #[test]
    fn basic_shift_laws() {
        let p = params_tau_i();
        let v = Complex64::new(0.137, 0.211);
        let lhs = theta_eval(ThetaKind::Theta, v + 1.0, &p);
        let rhs = -theta_eval(ThetaKind::Theta, v, &p);
        assert!(rel_residual(lhs, rhs) < 1e-12);

        // theta(v + tau) = -q^{-1} e^{-2 pi i v} theta(v)
        let lhs = theta_eval(ThetaKind::Theta, v + p.tau(), &p);
        let rhs = -(1.0 / p.q()) * (-two_pi_i() * v).exp() * theta_eval(ThetaKind::Theta, v, &p);
        assert!(rel_residual(lhs, rhs) < 1e-10);

        // theta_1 picks up +q^{-1} e^{-2 pi i v}
        let lhs = theta_eval(ThetaKind::Theta1, v + p.tau(), &p);
        let rhs = (1.0 / p.q()) * (-two_pi_i() * v).exp() * theta_eval(ThetaKind::Theta1, v, &p);
        assert!(rel_residual(lhs, rhs) < 1e-10);
    }

    #[test]
    fn lattice_laws_hold() {
        let p = NumericThetaParams::new(Complex64::new(0.0, 0.8)).unwrap();
        let rep = check_lattice_laws(&p, 25);
        assert!(
            rep.max_rel_residual < 1e-9,
            "worst {} at {}",
            rep.max_rel_residual,
            rep.worst_case
        );
    }

    #[test]
    fn zero_shift_is_exact() {
        let p = params_tau_i();
        let v = Complex64::new(0.2, 0.3);
        let h = theta_eval(ThetaKind::Theta2, v, &p);
        assert_eq!(rel_residual(h, h), 0.0);
    }

    #[test]
    fn numeric_quotient_matches_theta_ratio() {
        // 1/Q_W(u) must equal theta(v)/(v theta'(0)) at v = u/(2 pi i).
        let p = NumericThetaParams::new(Complex64::new(0.0, 0.9)).unwrap();
        let terms = p.product_terms();
        for u in [
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.7, 0.4),
            Complex64::new(0.05, -0.2),
        ] {
            let v = u / two_pi_i();
            let direct = theta_eval(ThetaKind::Theta, v, &p) / (v * theta_prime_zero(&p));
            let quot = inv_quotient(GenusKind::Witten, u, p.q(), terms);
            assert!(rel_residual(direct, quot) < 1e-12);
        }
    }

    #[test]
    fn periodicity_on_string_instance() {
        let v = ci(&[5], &[&[2], &[1], &[1]]);
        let p = NumericThetaParams::new(Complex64::new(0.0, 0.9)).unwrap();
        let rep = check_integrand_periodicity(&v, &p, 6, false).unwrap();
        assert!(rep.max_rel_residual < 1e-9, "got {}", rep.max_rel_residual);
    }

    #[test]
    fn periodicity_fails_on_quintic() {
        let v = ci(&[4], &[&[5]]);
        let p = NumericThetaParams::new(Complex64::new(0.0, 0.9)).unwrap();
        assert!(matches!(
            check_integrand_periodicity(&v, &p, 4, false),
            Err(Error::NotString(_))
        ));
        let rep = check_integrand_periodicity(&v, &p, 4, true).unwrap();
        assert!(rep.max_rel_residual > 1e-3, "got {}", rep.max_rel_residual);
    }

    #[test]
    fn residue_recovers_ahat_of_cp2() {
        let cp2 = ci(&[2], &[]);
        let spec = ContourSpec::new(vec![1.0], 64, Complex64::new(0.0, 0.0)).unwrap();
        let res = residue_genus(&cp2, GenusKind::AHat, &spec).unwrap();
        assert!((res - Complex64::new(-0.125, 0.0)).norm() < 1e-8, "got {res}");
    }

    #[test]
    fn residue_vanishes_on_string_instance() {
        let v = ci(&[5], &[&[2], &[1], &[1]]);
        let spec = ContourSpec::default_for(&v, Complex64::new(0.1, 0.0)).unwrap();
        let res = residue_genus(&v, GenusKind::Witten, &spec).unwrap();
        assert!(res.norm() < 1e-6, "got {res}");
    }

    #[test]
    fn residue_matches_exact_path_on_quadric_fourfold() {
        // n=5 with a single degree 2: even complex dimension 4, not string,
        // genus nonzero - a real relative-error comparison.
        let v = ci(&[5], &[&[2]]);
        let q = Complex64::new(0.1, 0.0);
        let spec = ContourSpec::default_for(&v, q).unwrap();
        let numeric = residue_genus(&v, GenusKind::Witten, &spec).unwrap();
        let exact = genus_value(&v, &CharSeries::witten_series(5, 8))
            .unwrap()
            .eval_complex(q);
        assert!(exact.norm() > 1e-3, "control must be nonzero, got {exact}");
        assert!(
            rel_residual(numeric, exact) < 1e-6,
            "numeric {numeric} vs exact {exact}"
        );
    }

    #[test]
    fn quintic_genus_vanishes_by_parity_on_both_paths() {
        // Odd complex dimension (3): the integrand has only odd-degree
        // terms, so the even coefficient is zero for every even series.
        // Exact and numeric paths must agree on that, with the comparison
        // in absolute terms.
        let v = ci(&[4], &[&[5]]);
        let q = Complex64::new(0.1, 0.0);
        let exact = genus_value(&v, &CharSeries::witten_series(4, 8))
            .unwrap()
            .eval_complex(q);
        assert_eq!(exact, Complex64::new(0.0, 0.0));
        let spec = ContourSpec::default_for(&v, q).unwrap();
        let numeric = residue_genus(&v, GenusKind::Witten, &spec).unwrap();
        assert!(numeric.norm() < 1e-9, "got {numeric}");
    }

    #[test]
    fn residue_sum_check_examples() {
        let v = ci(&[5], &[&[2], &[1], &[1]]);
        let spec = ContourSpec::default_for(&v, Complex64::new(0.1, 0.05)).unwrap();
        let rep = residue_sum_check(&v, &spec).unwrap();
        assert!(rep.residue_abs < 1e-6, "got {}", rep.residue_abs);

        let spec = ContourSpec::default_for(&v, Complex64::new(0.05, 0.0)).unwrap();
        let rep = residue_sum_check(&v, &spec).unwrap();
        assert!(rep.residue_abs < 1e-6);

        // negative control: rejected as non-string, and the raw residue is
        // the (nonzero) genus. CP^2 has Witten genus -1/8 + 3 q^2 + ...
        let cp2 = ci(&[2], &[]);
        let spec = ContourSpec::default_for(&cp2, Complex64::new(0.05, 0.0)).unwrap();
        assert!(residue_sum_check(&cp2, &spec).is_err());
        let res = residue_genus(&cp2, GenusKind::Witten, &spec).unwrap();
        assert!(res.norm() > 1e-3, "got {res}");
    }

    #[test]
    fn oversized_radius_is_a_convergence_failure() {
        let cp2 = ci(&[2], &[]);
        let spec = ContourSpec::new(vec![8.0], 64, Complex64::new(0.0, 0.0)).unwrap();
        assert!(matches!(
            residue_genus(&cp2, GenusKind::AHat, &spec),
            Err(Error::ConvergenceFailure(_))
        ));
    }

    #[test]
    fn contour_validation() {
        assert!(ContourSpec::new(vec![0.0], 64, Complex64::new(0.1, 0.0)).is_err());
        assert!(ContourSpec::new(vec![1.0], 63, Complex64::new(0.1, 0.0)).is_err());
        assert!(ContourSpec::new(vec![1.0], 64, Complex64::new(1.2, 0.0)).is_err());
    }
}
