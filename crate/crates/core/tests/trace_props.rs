mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symtrace_core::derivation::{bracket_der, h_basis};
use symtrace_core::linalg::rank;
use symtrace_core::rep::{induced_action, Space};
use symtrace_core::tensor::{gl_generators, sym_dim, BasisContext};
use symtrace_core::trace::{sym_coords, trace_k, trace_matrix};

#[test]
fn trace_is_surjective() {
    for n in 2..=4 {
        let ctx = BasisContext::free(n).unwrap();
        for k in 1..=6 {
            assert_eq!(rank(&trace_matrix(&ctx, k)), sym_dim(n, k), "n={n} k={k}");
        }
    }
}

#[test]
fn even_traces_vanish_on_h() {
    for g in 1..=3 {
        for k in [2, 4] {
            let h = h_basis(g, k).unwrap();
            for (i, d) in h.basis_derivations().iter().enumerate() {
                assert!(trace_k(d).is_zero(), "g={g} k={k} basis vector {i}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trace_is_gl_equivariant(seed in any::<u64>(), n in 2usize..=3, k in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = BasisContext::free(n).unwrap();
        let d = random_derivation(ctx, k, 4, &mut rng);
        let t = sym_coords(&trace_k(&d));
        for x in gl_generators(n) {
            let acted = sym_coords(&trace_k(&d.act_by(&x)));
            let m = induced_action(&ctx, &x, Space::Sym(k)).unwrap();
            prop_assert_eq!(acted, m.mul_vec(&t));
        }
    }

    #[test]
    fn trace_kills_brackets(seed in any::<u64>(), n in 2usize..=4, a in 1usize..=3, b in 1usize..=3) {
        prop_assume!(n < 4 || a + b <= 5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = BasisContext::free(n).unwrap();
        let x = random_derivation(ctx, a, 4, &mut rng);
        let y = random_derivation(ctx, b, 4, &mut rng);
        prop_assert!(trace_k(&bracket_der(&x, &y).unwrap()).is_zero());
    }
}
