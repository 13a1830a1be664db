use bgw::dvv::{b_to_c, c_to_b, f_bound, string_reduce, theta, within_bounds, BgwTable};
use bgw::exactnum::{rat, Rational};
use bgw::partitions::{enumerate_partitions, multisets, IndexVector};
use bgw::resolvent::{
    a2_closed, a3_closed, b_fourpoint, b_npoint, b_threepoint, b_window, c_onepoint, c_twopoint,
    omega, omega_bruteforce, trace_a,
};
use num_traits::Zero;
use proptest::prelude::*;

fn table() -> &'static BgwTable {
    BgwTable::global()
}

fn iv(v: &[u32]) -> IndexVector {
    IndexVector(v.to_vec())
}

/// Known C(d) by genus, each row in partition order.
const GENUS_TABLES: &[(u32, &[(&str, i64, i64)])] = &[
    (1, &[("1", 9, 32)]),
    (2, &[("2", 75, 256), ("1,1", 189, 640)]),
    (3, &[("3", 1225, 4096), ("1,2", 8625, 28672), ("1,1,1", 21663, 71680)]),
    (
        4,
        &[
            ("4", 19845, 65536),
            ("1,3", 14945, 49152),
            ("2,2", 209275, 688128),
            ("1,1,2", 34995, 114688),
            ("1,1,1,1", 4825971, 15769600),
        ],
    ),
];

#[test]
fn c_values_small_genera() {
    for (w, rows) in GENUS_TABLES {
        let parts = enumerate_partitions(*w);
        assert_eq!(parts.len(), rows.len());
        for (p, (s, n, d)) in parts.iter().zip(rows.iter()) {
            assert_eq!(&p.to_string(), s);
            assert_eq!(table().c(p.entries()).unwrap(), rat(*n, *d), "C({s})");
        }
    }
}

#[test]
fn bgw_numbers_from_brackets() {
    let bracket = |d: &[u32]| {
        let b = table().b(d).unwrap();
        let mut prod = num_bigint::BigInt::from(1);
        for &x in d {
            prod *= bgw::exactnum::double_factorial(2 * x as i64 + 1).unwrap();
        }
        b / Rational::from_integer(prod)
    };
    assert_eq!(bracket(&[0]), rat(1, 8));
    assert_eq!(bracket(&[1]), rat(3, 128));
    assert_eq!(bracket(&[1, 1]), rat(63, 512));
    assert_eq!(bracket(&[2]), rat(15, 1024));
    assert_eq!(bracket(&[1, 1, 1]), rat(7221, 2048));
    assert_eq!(bracket(&[1, 2]), rat(8625, 32768));
    assert_eq!(bracket(&[3]), rat(525, 32768));
}

#[test]
fn recursion_matches_trace_formula() {
    for w in 0..=6u32 {
        for n in 2..=4usize {
            for d in multisets(n, w) {
                let di: Vec<i64> = d.entries().iter().map(|&x| x as i64).collect();
                let a = table().b(d.entries()).unwrap();
                let b = b_npoint(&di).unwrap();
                assert_eq!(a, b, "B({d})");
            }
        }
    }
}

#[test]
fn specialised_point_formulas() {
    for w in 0..=7u32 {
        for d in multisets(3, w) {
            let e = d.entries();
            let di = [e[0] as i64, e[1] as i64, e[2] as i64];
            assert_eq!(b_threepoint(di), table().b(e).unwrap(), "three-point {d}");
        }
        for d in multisets(4, w) {
            let e = d.entries();
            let di = [e[0] as i64, e[1] as i64, e[2] as i64, e[3] as i64];
            assert_eq!(b_fourpoint(di), table().b(e).unwrap(), "four-point {d}");
        }
    }
}

#[test]
fn two_point_closed_form() {
    for d1 in 0..=6i64 {
        for d2 in d1..=8i64 {
            let c = table().c(&[d1 as u32, d2 as u32]).unwrap();
            assert_eq!(c_twopoint(d1, d2), c, "C({d1},{d2})");
        }
    }
}

#[test]
fn one_point_closed_form() {
    for k in 0..=12u32 {
        assert_eq!(c_onepoint(k as u64), table().c(&[k]).unwrap());
    }
}

#[test]
fn window_matches_recursion() {
    for (d, m) in [(1u32, 0u32), (1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
        let w = b_window(d, m, 4, 4).unwrap();
        for a in 0..=4u32 {
            for b in 0..=4u32 {
                let mut v = vec![a, b];
                v.extend(std::iter::repeat(d).take(m as usize));
                assert_eq!(w[a as usize][b as usize], table().b(&v).unwrap(), "B({v:?})");
            }
        }
    }
}

#[test]
fn negative_entries_vanish() {
    for d in [[-1i64, 2, 3], [2, -1, 2], [0, 0, -1], [3, 1, -1]] {
        assert!(b_npoint(&d).unwrap().is_zero(), "{d:?}");
    }
    assert!(b_npoint(&[-1, 1, 1, 2]).unwrap().is_zero());
}

#[test]
fn string_equation_and_theta() {
    let t = table();
    for d in enumerate_partitions(5) {
        let z = iv(&[0]).with(d.entries());
        assert_eq!(string_reduce(t, &z).unwrap(), t.b(z.entries()).unwrap());
        assert_eq!(t.c(z.entries()).unwrap(), t.c(d.entries()).unwrap());
    }
    // theta(X, n) = theta(X-1, n-1) once n > X/3
    for x in 4..=16u64 {
        for n in 1..=x as usize {
            if (x as usize - n) % 2 != 0 || 3 * n as u64 <= x || n < 2 {
                continue;
            }
            assert_eq!(theta(t, x, n).unwrap(), theta(t, x - 1, n - 1).unwrap(), "theta({x},{n})");
        }
    }
}

#[test]
fn bounds_small() {
    for w in 1..=8u32 {
        for d in enumerate_partitions(w) {
            let c = table().c(d.entries()).unwrap();
            assert!(within_bounds(&c, d.x(), d.len() as u64).unwrap(), "C({d})");
        }
    }
    assert!(f_bound(20, 6).unwrap().at_most_one(64).unwrap());
}

#[test]
fn c_b_roundtrip() {
    let d = [1u32, 2, 2];
    let b = table().b(&d).unwrap();
    assert_eq!(c_to_b(&d, &b_to_c(&d, &b)), b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetry_under_permutation(v in prop::collection::vec(0u32..4, 1..5)) {
        let vals = table().all_distinguished(&v).unwrap();
        let canonical = table().b(&v).unwrap();
        for (_, x) in vals {
            prop_assert_eq!(&x, &canonical);
        }
    }

    #[test]
    fn trace_closed_forms(k1 in -1i64..8, k2 in -1i64..8, k3 in -1i64..8) {
        prop_assert_eq!(trace_a(&[k1, k2]), a2_closed(k1, k2));
        prop_assert_eq!(trace_a(&[k1, k2, k3]), a3_closed(k1, k2, k3));
    }

    #[test]
    fn omega_counts_solutions(d in prop::collection::vec(0i64..4, 3), shift in prop::collection::vec(-2i64..3, 2), swap in any::<bool>()) {
        let total: i64 = d.iter().sum();
        let (k0, k1) = (d[0] + shift[0], d[1] + shift[1]);
        let k = vec![k0, k1, total - k0 - k1];
        let sigma = if swap { vec![1, 0, 2] } else { vec![0, 1, 2] };
        prop_assert_eq!(omega(&d, &sigma, &k), omega_bruteforce(&d, &sigma, &k, 12));
    }

    #[test]
    fn positivity(w in 1u32..7, pick in 0usize..20) {
        let parts = enumerate_partitions(w);
        let d = &parts[pick % parts.len()];
        prop_assert!(table().c(d.entries()).unwrap() > Rational::zero());
    }
}
