mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use common::{q, rank};
use hkrlab::complexes::{shift, ComplexBuilder};
use hkrlab::exact::{smith_normal_form, Matrix, Ring};
use hkrlab::filtered::split_multicomplex;
use hkrlab::mixed::tensor_mixed;
use hkrlab::random::{self, Shape};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = q(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return q(0);
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for k in c..n {
                let v = &f * &a[c][k];
                a[i][k] -= v;
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_an_invariant_factorization(rows in matrix(5, 5)) {
        let m = Matrix::from_i64(&rows);
        let s = smith_normal_form(&m).unwrap();
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(m.nrows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), Matrix::identity(m.ncols()));
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|x| x.is_positive()));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert_eq!(f.len(), rank(m.to_dense()));
        let gcd = rows.iter().flatten().fold(BigInt::zero(), |g, &x| g.gcd(&BigInt::from(x)));
        prop_assert_eq!(f.first().cloned().unwrap_or_default(), gcd);
        if m.nrows() == m.ncols() {
            let product: BigInt = f.iter().product();
            let d = det(m.to_dense()).abs();
            if f.len() == m.nrows() {
                prop_assert_eq!(BigRational::from_integer(product), d);
            } else {
                prop_assert!(d.is_zero());
            }
        }
    }

    #[test]
    fn two_term_homology(rows in matrix(4, 4)) {
        let m = Matrix::from_i64(&rows);
        let (b, a) = m.shape();
        let c = ComplexBuilder::new(Ring::Integers)
            .cell(1, 0, (0..a).map(|i| format!("a{i}")))
            .cell(0, 0, (0..b).map(|i| format!("b{i}")))
            .differential(1, 0, m.clone())
            .build()
            .unwrap();
        let r = rank(m.to_dense());
        prop_assert_eq!(c.homology(1, 0).rank, a - r);
        prop_assert!(c.homology(1, 0).torsion.is_empty());
        let h0 = c.homology(0, 0);
        prop_assert_eq!(h0.rank, b - r);
        let expected: Vec<BigInt> = smith_normal_form(&m)
            .unwrap()
            .invariant_factors()
            .into_iter()
            .filter(|x| *x > BigInt::from(1))
            .collect();
        prop_assert_eq!(h0.torsion, expected);
        let rational = c.rationalize();
        prop_assert_eq!(rational.homology(0, 0).rank, b - r);
        prop_assert!(rational.homology(0, 0).torsion.is_empty());
    }

    #[test]
    fn shift_is_invertible(seed in any::<u64>(), k in -3i64..=3) {
        let c = random::random_complex(&mut random::rng(seed), &Shape::default());
        prop_assert_eq!(shift(&shift(&c, k), -k), c.clone());
        let s = shift(&c, k);
        for (n, w) in c.cells() {
            prop_assert_eq!(s.homology(n + k, w), c.homology(n, w));
        }
    }

    #[test]
    fn random_filtered_mixed_instances_are_valid(seed in any::<u64>()) {
        let x = random::random_filtered_mixed(&mut random::rng(seed), &Shape::default());
        prop_assert!(x.validate().is_ok());
        prop_assert!(x.underlying().validate().is_ok());
        prop_assert!(x.graded_multicomplex().validate().is_ok());
    }

    #[test]
    fn split_then_totalize_keeps_homology(seed in any::<u64>()) {
        let f = random::random_filtered_complex(&mut random::rng(seed), &Shape::default());
        let back = split_multicomplex(&f).totalize();
        prop_assert_eq!(back.complex().homology_table(), f.complex().homology_table());
        let (lo, hi) = f.range();
        for s in lo..=hi {
            prop_assert_eq!(back.stage(s).homology_table(), f.stage(s).homology_table());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tensor_of_mixed_complexes_is_mixed(a in any::<u64>(), b in any::<u64>()) {
        let s = Shape { max_degree: 2, pieces: 3, ..Shape::default() };
        let x = random::random_filtered_mixed(&mut random::rng(a), &s).underlying();
        let y = random::random_filtered_mixed(&mut random::rng(b), &s).underlying();
        let t = tensor_mixed(&x, &y).unwrap();
        prop_assert!(t.validate().is_ok());
    }
}
