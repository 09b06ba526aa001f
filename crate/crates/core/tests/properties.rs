//! Randomized algebra and geometry properties: ring axioms of the series
//! cores, homomorphism laws of substitution, and the structural identities
//! of the genus evaluator (multiplicativity, hyperplane reduction,
//! orientation behaviour, criterion equivalence).

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qgenus_core::charseries::CharSeries;
use qgenus_core::geometry::{
    genus_value, is_string, twisted_genus_value, CompleteIntersection,
};
use qgenus_core::mseries::{LinearForm, MSeries};
use qgenus_core::qseries::QSeries;
use qgenus_core::{rat, Rat};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_qseries(k: usize) -> impl Strategy<Value = QSeries> {
    proptest::collection::vec(arb_rat(), k + 1).prop_map(QSeries::from_coeffs)
}

fn arb_invertible_qseries(k: usize) -> impl Strategy<Value = QSeries> {
    arb_qseries(k).prop_map(|s| {
        if s.constant_term().is_zero() {
            &s + &QSeries::one(s.trunc_order())
        } else {
            s
        }
    })
}

const SHAPES: [&[usize]; 4] = [&[3], &[4], &[2, 2], &[3, 2]];

fn arb_mseries(shape: &'static [usize], k: usize) -> impl Strategy<Value = MSeries> {
    let len: usize = shape.iter().product();
    proptest::collection::vec(arb_qseries(k), len).prop_map(move |entries| {
        let mut m = MSeries::zero(shape, k);
        // build via univariate embeddings per flat index
        let mut strides = vec![1usize; shape.len()];
        for i in (0..shape.len() - 1).rev() {
            strides[i] = strides[i + 1] * shape[i + 1];
        }
        for (flat, c) in entries.into_iter().enumerate() {
            let mut rem = flat;
            let mut mono = MSeries::constant(c, shape);
            for (axis, &st) in strides.iter().enumerate() {
                let e = rem / st;
                rem %= st;
                let mut unit = vec![0i64; shape.len()];
                unit[axis] = 1;
                for _ in 0..e {
                    mono = mono.mul_linear(&LinearForm::new(unit.clone()));
                }
            }
            m = m.add(&mono);
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn qseries_ring_axioms(a in arb_qseries(4), b in arb_qseries(4), c in arb_qseries(4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn qseries_inverse_roundtrip(a in arb_invertible_qseries(5)) {
        let inv = a.inverse().unwrap();
        prop_assert!((&a * &inv).is_one());
    }

    #[test]
    fn mseries_ring_axioms(
        (a, b, c) in prop_oneof![Just(0usize), Just(1), Just(2), Just(3)]
            .prop_flat_map(|i| {
                let shape = SHAPES[i];
                (arb_mseries(shape, 1), arb_mseries(shape, 1), arb_mseries(shape, 1))
            })
    ) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn mseries_inverse_roundtrip(
        a in prop_oneof![Just(0usize), Just(2), Just(3)]
            .prop_flat_map(|i| arb_mseries(SHAPES[i], 1))
    ) {
        // force an invertible constant coefficient
        let shape = a.shape().to_vec();
        let a = a.add(&MSeries::constant(
            {
                let c0 = a.coefficient_at(&vec![0; shape.len()]).unwrap();
                if c0.constant_term().is_zero() { QSeries::one(1) } else { QSeries::zero(1) }
            },
            &shape,
        ));
        prop_assume!(!a.coefficient_at(&vec![0; shape.len()]).unwrap().constant_term().is_zero());
        let inv = a.inverse().unwrap();
        prop_assert_eq!(a.mul(&inv), MSeries::one(&shape, 1));
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        f in proptest::collection::vec(arb_rat(), 5),
        g in proptest::collection::vec(arb_rat(), 5),
        l in proptest::collection::vec(-3i64..=3, 2),
    ) {
        // shape (3,2): budget 3; series given to y-order 4
        let shape: &[usize] = &[3, 2];
        let mut f = f; f[0] = Rat::one();
        let mut g = g; g[0] = Rat::one();
        let fs = CharSeries::from_rational_coeffs(f, 2);
        let gs = CharSeries::from_rational_coeffs(g, 2);
        let form = LinearForm::new(l);
        let lhs = MSeries::substitute_linear(&fs.mul(&gs), &form, shape).unwrap();
        let rhs = MSeries::substitute_linear(&fs, &form, shape).unwrap()
            .mul(&MSeries::substitute_linear(&gs, &form, shape).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_coefficient_matches_naive_convolution(
        a in arb_mseries(&[3, 2], 1),
        b in arb_mseries(&[3, 2], 1),
    ) {
        let shape = [3usize, 2];
        let prod = a.mul(&b);
        for e0 in 0..3 {
            for e1 in 0..2 {
                // brute-force double loop over all splittings
                let mut want = QSeries::zero(1);
                for i0 in 0..=e0 {
                    for i1 in 0..=e1 {
                        let x = a.coefficient_at(&[i0, i1]).unwrap();
                        let y = b.coefficient_at(&[e0 - i0, e1 - i1]).unwrap();
                        want = &want + &(x * y);
                    }
                }
                let _ = shape;
                prop_assert_eq!(prod.coefficient_at(&[e0, e1]).unwrap(), &want);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Geometry properties on random instances
// ---------------------------------------------------------------------------

fn random_instance(rng: &mut ChaCha8Rng, max_total: usize) -> CompleteIntersection {
    loop {
        let s = rng.gen_range(1..=2usize);
        let n: Vec<usize> = (0..s).map(|_| rng.gen_range(1..=3usize)).collect();
        let total: usize = n.iter().sum();
        if total > max_total {
            continue;
        }
        let t = rng.gen_range(0..=2usize.min(total));
        let rows: Vec<Vec<i64>> = (0..t)
            .map(|_| loop {
                let row: Vec<i64> = (0..s).map(|_| rng.gen_range(-2..=2i64)).collect();
                if row.iter().any(|&d| d != 0) {
                    break row;
                }
            })
            .collect();
        if let Ok(ci) = CompleteIntersection::new(n, rows) {
            return ci;
        }
    }
}

#[test]
fn genus_is_multiplicative_on_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let k = 2;
    for _ in 0..25 {
        let a = random_instance(&mut rng, 4);
        let b = random_instance(&mut rng, 4);
        let n: Vec<usize> = a
            .ambient_dims()
            .iter()
            .chain(b.ambient_dims())
            .copied()
            .collect();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for r in a.rows() {
            let mut row = r.coeffs().to_vec();
            row.extend(std::iter::repeat(0).take(b.s()));
            rows.push(row);
        }
        for r in b.rows() {
            let mut row = vec![0i64; a.s()];
            row.extend_from_slice(r.coeffs());
            rows.push(row);
        }
        let block = CompleteIntersection::new(n, rows).unwrap();

        for series in [
            CharSeries::witten_series(block.total_degree(), k),
            CharSeries::ahat_series(block.total_degree()),
            CharSeries::lgenus_series(block.total_degree()),
        ] {
            let ga = genus_value(&a, &series).unwrap();
            let gb = genus_value(&b, &series).unwrap();
            let gblock = genus_value(&block, &series).unwrap();
            assert_eq!(gblock, &ga * &gb);
        }
    }
}

#[test]
fn appending_a_hyperplane_row_reduces_the_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let k = 2;
    let mut checked = 0;
    while checked < 25 {
        let ci = random_instance(&mut rng, 5);
        let axis = rng.gen_range(0..ci.s());
        // both the extended and the reduced instance need t+1 <= sum n_q
        if ci.ambient_dims()[axis] < 1 || ci.t() + 1 > ci.total_degree() {
            continue;
        }
        // extended: append the standard basis row e_axis
        let mut rows = ci.degree_rows();
        let mut unit = vec![0i64; ci.s()];
        unit[axis] = 1;
        rows.push(unit);
        let extended = CompleteIntersection::new(ci.ambient_dims().to_vec(), rows).unwrap();
        // reduced: decrement n_axis and drop that row
        let mut n = ci.ambient_dims().to_vec();
        n[axis] -= 1;
        let reduced = CompleteIntersection::new(n, ci.degree_rows()).unwrap();

        for series in [
            CharSeries::witten_series(extended.total_degree(), k),
            CharSeries::ahat_series(extended.total_degree()),
            CharSeries::lgenus_series(extended.total_degree()),
        ] {
            let ge = genus_value(&extended, &series).unwrap();
            let gr = genus_value(&reduced, &series).unwrap();
            assert_eq!(ge, gr, "axis {axis} of {:?}", extended.ambient_dims());
        }
        checked += 1;
    }
}

#[test]
fn row_sign_flip_negates_even_genera() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let k = 1;
    let mut checked = 0;
    while checked < 25 {
        let ci = random_instance(&mut rng, 5);
        if ci.t() == 0 {
            continue;
        }
        let p = rng.gen_range(0..ci.t());
        let mut rows = ci.degree_rows();
        for d in rows[p].iter_mut() {
            *d = -*d;
        }
        let flipped = CompleteIntersection::new(ci.ambient_dims().to_vec(), rows).unwrap();
        let w = CharSeries::witten_series(ci.total_degree(), k);
        let g = genus_value(&ci, &w).unwrap();
        let gf = genus_value(&flipped, &w).unwrap();
        assert_eq!(gf, -&g);
        checked += 1;
    }
}

#[test]
fn column_permutation_with_matched_ambient_is_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let k = 1;
    let mut checked = 0;
    while checked < 25 {
        let ci = random_instance(&mut rng, 5);
        if ci.s() != 2 {
            continue;
        }
        let n = ci.ambient_dims();
        let swapped_n = vec![n[1], n[0]];
        let swapped_rows: Vec<Vec<i64>> = ci
            .degree_rows()
            .iter()
            .map(|r| vec![r[1], r[0]])
            .collect();
        let swapped = CompleteIntersection::new(swapped_n, swapped_rows).unwrap();
        let w = CharSeries::witten_series(ci.total_degree(), k);
        assert_eq!(
            genus_value(&ci, &w).unwrap(),
            genus_value(&swapped, &w).unwrap()
        );
        assert_eq!(
            is_string(&ci).matrix_criterion_ok,
            is_string(&swapped).matrix_criterion_ok
        );
        checked += 1;
    }
}

#[test]
fn criterion_equivalence_under_lefschetz_condition() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let mut true_side_seen = 0;
    let mut checked = 0;
    while checked < 200 {
        let s = rng.gen_range(1..=2usize);
        let n: Vec<usize> = (0..s).map(|_| rng.gen_range(3..=6usize)).collect();
        let t = rng.gen_range(0..=3usize);
        let rows: Vec<Vec<i64>> = (0..t)
            .map(|_| loop {
                let row: Vec<i64> = (0..s).map(|_| rng.gen_range(-2..=2i64)).collect();
                if row.iter().any(|&d| d != 0) {
                    break row;
                }
            })
            .collect();
        let Ok(ci) = CompleteIntersection::new(n, rows) else {
            continue;
        };
        let cert = is_string(&ci);
        if !cert.lefschetz_ok {
            continue;
        }
        assert_eq!(
            cert.matrix_criterion_ok,
            cert.pushforward_p1_zero && cert.w2_zero_mod2,
            "equivalence failed for {:?} {:?}",
            ci.ambient_dims(),
            ci.degree_rows()
        );
        if cert.matrix_criterion_ok {
            true_side_seen += 1;
        }
        checked += 1;
    }
    // make sure string instances appear on the true side as well
    let bounds = qgenus_core::SearchBounds {
        s: 1,
        t_max: 3,
        ambient: qgenus_core::AmbientSpec::UpTo(8),
        allow_odd_dim: true,
    };
    for (n, m) in qgenus_core::search::enumerate_string_matrices(&bounds).unwrap() {
        let ci = CompleteIntersection::new(n, m.rows().to_vec()).unwrap();
        let cert = is_string(&ci);
        assert!(cert.is_string && cert.pushforward_p1_zero && cert.w2_zero_mod2);
        true_side_seen += 1;
    }
    assert!(true_side_seen > 0);
}

#[test]
fn q_expansion_identity_low_orders() {
    // q^0 of the Witten genus is the A-hat genus; the q^2 coefficient is
    // the twisted A-hat number minus the real rank times the A-hat number.
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    let mut instances: Vec<CompleteIntersection> = (0..8)
        .map(|_| random_instance(&mut rng, 5))
        .collect();
    instances.push(CompleteIntersection::new(vec![5], vec![vec![2], vec![1], vec![1]]).unwrap());
    instances.push(CompleteIntersection::new(vec![3], vec![vec![2]]).unwrap());

    for ci in &instances {
        let w = CharSeries::witten_series(ci.total_degree(), 1);
        let witten = genus_value(ci, &w).unwrap();
        let ahat_series = CharSeries::ahat_series(ci.total_degree());
        let ahat = genus_value(ci, &ahat_series).unwrap();
        let ahat_tw = twisted_genus_value(ci, &ahat_series).unwrap();
        assert_eq!(witten.coeff(0), ahat.constant_term());
        let expected_q2 = ahat_tw.constant_term()
            - &(ahat.constant_term() * rat(2 * ci.complex_dim() as i64, 1));
        assert_eq!(witten.coeff(1), &expected_q2, "instance {:?} {:?}", ci.ambient_dims(), ci.degree_rows());
    }
}
