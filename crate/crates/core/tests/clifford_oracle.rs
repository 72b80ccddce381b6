mod common;

use blc::clifford::{CliffElem, GroupElem, Quat, Scalar};
use common::{hat_matrix, identity, mat_mul, rep};
use proptest::prelude::*;

fn elem(n: usize) -> impl Strategy<Value = CliffElem> {
    prop::collection::vec((-3i64..=3, -2i64..=2, 0u32..3), 1 << n).prop_map(move |cs| {
        let mut x = CliffElem::zero(n);
        for (mask, (a, b, f)) in cs.into_iter().enumerate() {
            x = &x + &CliffElem::monomial(n, mask as u32, Scalar::new(a, b, f));
        }
        x
    })
}

fn group_elem(n: usize) -> impl Strategy<Value = GroupElem> {
    prop::collection::vec((1..=n, 0u8..3), 0..8).prop_map(move |gens| {
        gens.into_iter().fold(GroupElem::one(n), |z, (i, kind)| {
            z.mul(&match kind {
                0 => GroupElem::acute_gen(n, i),
                1 => GroupElem::grave_gen(n, i),
                _ => GroupElem::hat(n, i),
            })
        })
    })
}

#[test]
fn hat_relations() {
    for n in 1..=4 {
        let minus_one: Vec<Vec<Scalar>> =
            identity(1 << n).into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
        for i in 1..=n {
            let a = hat_matrix(n, i);
            assert_eq!(mat_mul(&a, &a), minus_one);
            for j in 1..=n {
                let b = hat_matrix(n, j);
                let (ab, ba) = (mat_mul(&a, &b), mat_mul(&b, &a));
                if i.abs_diff(j) == 1 {
                    let neg: Vec<Vec<Scalar>> = ab.iter().map(|r| r.iter().map(|&x| -x).collect()).collect();
                    assert_eq!(ba, neg);
                } else {
                    assert_eq!(ba, ab);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn products_match_matrices((x, y) in (1usize..=3).prop_flat_map(|n| (elem(n), elem(n)))) {
        prop_assert_eq!(rep(&(&x * &y)), mat_mul(&rep(&x), &rep(&y)));
        let (a, b) = (rep(&x), rep(&y));
        let sum: Vec<Vec<Scalar>> = a.iter().zip(&b).map(|(r, s)| r.iter().zip(s).map(|(u, v)| *u + *v).collect()).collect();
        prop_assert_eq!(rep(&(&x + &y)), sum);
    }

    #[test]
    fn group_projection_is_multiplicative(x in group_elem(4), y in group_elem(4)) {
        let xy = x.mul(&y);
        prop_assert_eq!(*xy.so(), x.so().mul(y.so()));
        prop_assert_eq!(rep(&xy.to_cliff()), mat_mul(&rep(&x.to_cliff()), &rep(&y.to_cliff())));
        prop_assert_eq!(x.mul(&x.inverse()), GroupElem::one(4));
    }

    #[test]
    fn quat_matches_group(a in 0u32..16, b in 0u32..16, na: bool, nb: bool) {
        let (p, q) = (Quat::new(a, na), Quat::new(b, nb));
        let g = GroupElem::from_quat(4, p).mul(&GroupElem::from_quat(4, q));
        prop_assert_eq!(g.as_quat(), Some(p.mul(q)));
        prop_assert_eq!(p.so(4).mul(&q.so(4)), p.mul(q).so(4));
    }

    #[test]
    fn re_is_trace(x in group_elem(3)) {
        let m = rep(&x.to_cliff());
        let tr = m.iter().enumerate().fold(Scalar::ZERO, |s, (i, r)| s + r[i]);
        prop_assert_eq!(tr, x.re() * Scalar::int(8));
        prop_assert!((x.re().to_f64().abs() - x.re_via_eigenvalues()).abs() < 1e-9);
    }
}
