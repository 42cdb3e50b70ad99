//! Every builtin run through the full pipeline and compared with closed-form
//! values and with rank-based oracles.
#![allow(clippy::needless_range_loop)]

mod common;

use num_bigint::BigInt;
use num_traits::Zero;

use immclass_core::homology::{alpha, cohomology, divisibility, homology, verify_duality, Coefficients};
use immclass_core::library::{builtin, standard_names};
use immclass_core::matrix::dot;

use common::{invariant_factors_by_minors, rank_mod_p, rank_rational};

#[test]
fn groups_match_closed_forms() {
    for name in standard_names() {
        let m = builtin(name).unwrap();
        let p = &m.presentation;
        for k in 0..=3 {
            let h = homology(p, k, Coefficients::Integers).unwrap();
            let c = cohomology(p, k, Coefficients::Integers).unwrap();
            assert_eq!(h.shape(), &m.expected.homology[k], "{name} H_{k}");
            assert_eq!(c.shape(), &m.expected.cohomology[k], "{name} H^{k}");
        }
        assert_eq!(alpha(p).unwrap(), m.expected.alpha, "{name} alpha");
        assert!(verify_duality(p).unwrap().passes(), "{name} duality");
    }
}

#[test]
fn betti_numbers_match_rational_ranks() {
    for name in standard_names() {
        let m = builtin(name).unwrap();
        let p = &m.presentation;
        let counts = p.cell_counts();
        for k in 0..=3 {
            let r_out = rank_rational(&p.boundary(k).unwrap());
            let r_in = rank_rational(&p.boundary(k + 1).unwrap());
            let h = homology(p, k, Coefficients::Integers).unwrap();
            assert_eq!(h.free_rank(), counts[k] - r_out - r_in, "{name} b_{k}");
        }
    }
}

/// The number of invariant factors of `∂ₖ₊₁` divisible by a prime `p` is
/// `rank_ℚ − rank_{F_p}`, and those factors are exactly the `p`-divisible torsion of `Hₖ`.
#[test]
fn torsion_primes_match_modular_ranks() {
    for name in standard_names() {
        let m = builtin(name).unwrap();
        let p = &m.presentation;
        for k in 0..=2 {
            let d = p.boundary(k + 1).unwrap();
            let h = homology(p, k, Coefficients::Integers).unwrap();
            for prime in [2i64, 3, 5, 7] {
                let expected = rank_rational(&d) - rank_mod_p(&d, prime);
                let got = h.torsion().iter().filter(|t| (*t % prime).is_zero()).count();
                assert_eq!(got, expected, "{name} H_{k} p={prime}");
            }
        }
    }
}

#[test]
fn cellular_torsion_matches_minors() {
    for name in ["S1xS2", "T3", "L(2,1)", "L(5,2)", "L(6,1)"] {
        let m = builtin(name).unwrap();
        for k in 0..=2 {
            let d = m.presentation.boundary(k + 1).unwrap();
            let oracle: Vec<BigInt> =
                invariant_factors_by_minors(&d).into_iter().filter(|f| *f != BigInt::from(1)).collect();
            let h = homology(&m.presentation, k, Coefficients::Integers).unwrap();
            assert_eq!(h.torsion(), &oracle[..], "{name} H_{k}");
        }
    }
}

#[test]
fn mod_two_groups_match_universal_coefficients() {
    for name in standard_names() {
        let m = builtin(name).unwrap();
        let p = &m.presentation;
        let counts = p.cell_counts();
        for k in 0..=3 {
            let dim = homology(p, k, Coefficients::Mod2).unwrap().torsion().len();
            let direct =
                counts[k] - rank_mod_p(&p.boundary(k).unwrap(), 2) - rank_mod_p(&p.boundary(k + 1).unwrap(), 2);
            assert_eq!(dim, direct, "{name} H_{k}(Z2)");
            let hk = homology(p, k, Coefficients::Integers).unwrap();
            let below = if k == 0 {
                0
            } else {
                homology(p, k - 1, Coefficients::Integers).unwrap().shape().even_torsion_count()
            };
            assert_eq!(dim, hk.free_rank() + hk.shape().even_torsion_count() + below, "{name} UCT {k}");
            let co = cohomology(p, k, Coefficients::Mod2).unwrap().torsion().len();
            assert_eq!(co, dim, "{name} H^{k}(Z2)");
        }
    }
}

#[test]
fn divisibility_samples() {
    for name in standard_names() {
        let m = builtin(name).unwrap();
        let h2 = cohomology(&m.presentation, 2, Coefficients::Integers).unwrap();
        for (cochain, d) in &m.expected.divisibility {
            let v: Vec<BigInt> = cochain.iter().map(|&x| x.into()).collect();
            let cls = h2.express(&v).unwrap();
            assert_eq!(divisibility(&h2, &cls).unwrap(), BigInt::from(*d), "{name} {cochain:?}");
        }
    }
}

#[test]
fn cup_tables_on_cell_cochains() {
    for name in standard_names() {
        let m = builtin(name).unwrap();
        let Some(table) = &m.expected.cup_table else { continue };
        let pairing = m.cup_pairing().unwrap();
        let [_, n1, n2, _] = m.presentation.cell_counts();
        let unit = |n: usize, i: usize| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = 1.into();
            v
        };
        for (i, row) in table.iter().enumerate() {
            for (j, &want) in row.iter().enumerate() {
                let top = pairing.cup_cochains(&unit(n1, i), &unit(n2, j)).unwrap();
                assert_eq!(dot(&top, m.presentation.fundamental_cycle()), BigInt::from(want), "{name} ({i},{j})");
            }
        }
    }
}

#[test]
fn fundamental_cycle_generates_top_homology() {
    for name in standard_names() {
        let m = builtin(name).unwrap();
        let h3 = homology(&m.presentation, 3, Coefficients::Integers).unwrap();
        let cls = h3.express(m.presentation.fundamental_cycle()).unwrap();
        assert_eq!(cls.coords().len(), 1);
        assert_eq!(cls.coords()[0].magnitude(), &1u32.into(), "{name}");
    }
}
