use std::collections::BTreeSet;

use gdewalk::coin::{solve_coefficients, WalkParameters};
use gdewalk::evolve::evolve_steps;
use gdewalk::lattice::{Spin, SpinorField};
use gdewalk::pathsum::{
    algebra_multiply, algebra_power, dihedral_representation, enumerate_paths, path_weight, DihedralElement,
    GroupAlgebraElement, Kind, Move,
};
use gdewalk::{Complex64, WalkError};
use proptest::prelude::*;

fn generators(n: usize) -> [DihedralElement; 4] {
    [
        DihedralElement::rotation(0, n),
        DihedralElement::rotation(1, n),
        DihedralElement::reflection(0, n),
        DihedralElement::reflection(1, n),
    ]
}

/// Every group element reachable as a product of `t` generators.
fn word_products(t: usize, n: usize) -> BTreeSet<(bool, usize)> {
    let mut set = BTreeSet::from([(false, 0usize)]);
    for _ in 0..t {
        let fresh: BTreeSet<_> = set
            .iter()
            .flat_map(|&(refl, i)| {
                let g = if refl {
                    DihedralElement::reflection(i as i64, n)
                } else {
                    DihedralElement::rotation(i as i64, n)
                };
                generators(n).into_iter().map(move |h| {
                    let gh = g.compose(&h).unwrap();
                    (gh.kind == Kind::Reflection, gh.index)
                })
            })
            .collect();
        set = fresh;
    }
    set
}

#[test]
fn support_matches_word_products_and_grows_linearly() {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    for n in [5, 8, 13, 20] {
        for t in 1..=6 {
            let p = algebra_power(c(0.3, 0.1), c(-0.7, 0.2), c(0.45, -0.35), c(0.2, 0.9), t, n);
            let support: BTreeSet<_> = p.support().map(|(g, _)| (g.kind == Kind::Reflection, g.index)).collect();
            assert_eq!(support, word_products(t, n), "n={n} t={t}");
            assert!(support.len() <= 4 * t);
            if n >= 2 * t {
                assert_eq!(support.len(), 4 * t, "n={n} t={t}");
                // both kinds occupy indices −(t−1)..=t
                let allowed: BTreeSet<usize> = (-(t as i64 - 1)..=t as i64).map(|i| i.rem_euclid(n as i64) as usize).collect();
                assert!(support.iter().all(|(_, i)| allowed.contains(i)));
            }
        }
    }
}

#[test]
fn representation_is_homomorphism_on_d6() {
    let elems: Vec<_> = DihedralElement::all(6).collect();
    assert_eq!(elems.len(), 12);
    let mut checked = 0;
    for g in &elems {
        for h in &elems {
            let (a, b) = (dihedral_representation(g), dihedral_representation(h));
            let c = dihedral_representation(&g.compose(h).unwrap());
            for i in 0..2 {
                for j in 0..2 {
                    assert!((a[i][0] * b[0][j] + a[i][1] * b[1][j] - c[i][j]).abs() < 1e-12);
                }
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 144);
}

#[test]
fn mixed_groups_are_rejected() {
    let a = DihedralElement::rotation(1, 4);
    let b = DihedralElement::reflection(1, 5);
    assert!(matches!(a.compose(&b), Err(WalkError::GroupMismatch { left: 4, right: 5 })));
    let x = GroupAlgebraElement::unit(4);
    let y = GroupAlgebraElement::unit(5);
    assert!(algebra_multiply(&x, &y).is_err());
    assert!(x.add(&y).is_err());
}

#[test]
fn algebra_represent_is_multiplicative() {
    let n = 7;
    let half = Complex64::new(0.5, 0.0);
    let g = algebra_power(half, half, half, half, 1, n);
    let g3 = algebra_power(half, half, half, half, 3, n);
    let m = g.represent();
    let mul = |a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]| {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    };
    let want = mul(mul(m, m), m);
    let got = g3.represent();
    for i in 0..2 {
        for j in 0..2 {
            assert!((want[i][j] - got[i][j]).norm() < 1e-12);
        }
    }
}

#[test]
fn single_path_weights_by_hand() {
    let p = WalkParameters::new(0.6, 0.3).unwrap();
    let c = solve_coefficients(&p).unwrap();
    let (rc, rs) = (p.mass_cos(), p.mass_sin());
    // + stays, flips to −, then − moves left keeping spin
    let moves = [Move::StayKeep, Move::StayFlip, Move::MoveKeep];
    let (site, spin, amp) = path_weight(&moves, &c, &p, 6, 2, Spin::Plus);
    assert_eq!((site, spin), (1, Spin::Minus));
    let want = c.f1 * Complex64::new(0.0, rc) * c.g2;
    assert!((amp - want).norm() < 1e-15);

    // − moves left and flips, then + moves right and flips: back home
    let (site, spin, amp) = path_weight(&[Move::MoveFlip, Move::MoveFlip], &c, &p, 6, 0, Spin::Minus);
    assert_eq!((site, spin), (0, Spin::Minus));
    assert!((amp - Complex64::new(-rs * rs, 0.0)).norm() < 1e-15);
}

#[test]
fn path_budget_is_enforced() {
    let p = WalkParameters::new(0.5, 0.5).unwrap();
    let c = solve_coefficients(&p).unwrap();
    assert!(matches!(enumerate_paths(&c, &p, 13, 8, 0, Spin::Plus), Err(WalkError::Budget { .. })));
}

fn oracle_field(r: f64, rho: f64, n: usize, t: usize, site: usize, spin: Spin) -> (SpinorField, SpinorField) {
    let p = WalkParameters::new(r, rho).unwrap();
    let c = solve_coefficients(&p).unwrap();
    let init = SpinorField::zero(n).unwrap().with_amplitude(site as isize, spin, Complex64::new(1.0, 0.0));
    let want = evolve_steps(&init, &c, &p, t);
    let mut got = SpinorField::zero(n).unwrap();
    let paths = enumerate_paths(&c, &p, t, n, site, spin).unwrap();
    assert_eq!(paths.iter().map(|a| a.path_count).sum::<u64>(), 4u64.pow(t as u32));
    for a in paths {
        *got.sites_mut()[a.site].get_mut(a.spin) += a.amplitude;
    }
    (got, want)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn path_sum_equals_stencil(
        r in 0.0f64..=1.0,
        rho in 0.0f64..std::f64::consts::TAU,
        n in 3usize..=10,
        t in 0usize..=5,
        site_seed in 0usize..100,
        plus in any::<bool>(),
    ) {
        let p = WalkParameters::new(r, rho).unwrap();
        prop_assume!(p.solvability_margin() >= 0.0);
        let spin = if plus { Spin::Plus } else { Spin::Minus };
        let (got, want) = oracle_field(r, rho, n, t, site_seed % n, spin);
        prop_assert!(got.max_abs_diff(&want) <= 1e-12);
    }

    #[test]
    fn dihedral_table_is_associative(n in 1usize..=12, a in 0usize..24, b in 0usize..24, c in 0usize..24) {
        let elems: Vec<_> = DihedralElement::all(n).collect();
        let (g, h, k) = (elems[a % elems.len()], elems[b % elems.len()], elems[c % elems.len()]);
        let left = g.compose(&h).unwrap().compose(&k).unwrap();
        let right = g.compose(&h.compose(&k).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
