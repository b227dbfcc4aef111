mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symtrace_core::derivation::{bracket_der, commutator_span, h_basis, h_dim_formula};
use symtrace_core::linalg::kernel_basis;
use symtrace_core::tensor::BasisContext;
use symtrace_core::trace::trace_matrix;
use symtrace_core::{omega_action, Derivation, Rational};

/// Witt dimension by Möbius inversion, independent of the library.
fn witt(n: usize, k: usize) -> usize {
    fn mobius(mut m: usize) -> i64 {
        let mut r = 1;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                m /= p;
                if m.is_multiple_of(p) {
                    return 0;
                }
                r = -r;
            }
            p += 1;
        }
        if m > 1 {
            -r
        } else {
            r
        }
    }
    let s: i64 = (1..=k).filter(|d| k.is_multiple_of(*d)).map(|d| mobius(d) * (n as i64).pow((k / d) as u32)).sum();
    (s / k as i64) as usize
}

fn random_h(g: usize, k: usize, rng: &mut ChaCha8Rng) -> Derivation {
    let h = h_basis(g, k).unwrap();
    h.combine(&random_coords(h.dim(), 4, rng))
}

#[test]
fn h_dimension_formula_by_rank() {
    for (g, kmax) in [(1, 5), (2, 4), (3, 2)] {
        for k in 1..=kmax {
            let h = h_basis(g, k).unwrap();
            let n = 2 * g;
            let formula = n * witt(n, k + 1) - witt(n, k + 2);
            assert_eq!(h.ambient_dim() - h.omega_rank(), formula, "g={g} k={k}");
            assert_eq!(h.dim(), formula, "g={g} k={k}");
            assert_eq!(h_dim_formula(g, k), formula, "g={g} k={k}");
        }
    }
}

#[test]
fn commutators_lie_in_trace_kernel() {
    for n in 2..=4 {
        let ctx = BasisContext::free(n).unwrap();
        let dmax = if n == 4 { 3 } else { 5 };
        for d in 2..=dmax {
            let span = commutator_span(n, d).unwrap();
            let ker = kernel_basis(&trace_matrix(&ctx, d));
            assert!(span.is_subspace_of(&ker).unwrap(), "n={n} d={d}");
            if d <= n * (n - 1) {
                assert_eq!(span.dim(), ker.dim(), "n={n} d={d}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_antisymmetry_and_jacobi(seed in any::<u64>(), n in 2usize..=4, a in 1usize..=2, b in 1usize..=2, c in 1usize..=2) {
        prop_assume!(a + b + c <= 6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = BasisContext::free(n).unwrap();
        let x = random_derivation(ctx, a, 3, &mut rng);
        let y = random_derivation(ctx, b, 3, &mut rng);
        let z = random_derivation(ctx, c, 3, &mut rng);
        let xy = bracket_der(&x, &y).unwrap();
        prop_assert_eq!(&xy, &bracket_der(&y, &x).unwrap().scaled(&Rational::from_int(-1)));
        let j1 = bracket_der(&x, &bracket_der(&y, &z).unwrap()).unwrap();
        let j2 = bracket_der(&y, &bracket_der(&z, &x).unwrap()).unwrap();
        let j3 = bracket_der(&z, &xy).unwrap();
        prop_assert!(j1.plus(&j2).unwrap().plus(&j3).unwrap().is_zero());
    }

    #[test]
    fn h_is_a_subalgebra(seed in any::<u64>(), g in 1usize..=3, a in 1usize..=2, b in 1usize..=2) {
        prop_assume!(g < 3 || a + b <= 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_h(g, a, &mut rng);
        let y = random_h(g, b, &mut rng);
        prop_assert!(omega_action(&x).unwrap().is_zero());
        prop_assert!(omega_action(&bracket_der(&x, &y).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn derivation_action_matches_images(seed in any::<u64>(), n in 2usize..=3, k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = BasisContext::free(n).unwrap();
        let d = random_derivation(ctx, k, 4, &mut rng);
        prop_assert_eq!(Derivation::from_coords(ctx, k, &d.coords()), d);
    }
}
