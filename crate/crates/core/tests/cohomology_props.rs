use symtrace_core::graph::{bidegree, enumerate_graphs, phi_cochain};
use symtrace_core::{Error, HComplex};

#[test]
fn delta_squared_and_equivariance_low_weight() {
    for (g, n_max) in [(1usize, 6usize), (2, 4)] {
        let mut cx = HComplex::new(g).unwrap();
        for d in 1..=3 {
            for n in d..=n_max {
                assert!(cx.delta_squared_vanishes(d, n).unwrap(), "g={g} d={d} n={n}");
                assert!(cx.differential_commutes_with_sp(d, n).unwrap(), "g={g} d={d} n={n}");
            }
        }
    }
}

#[test]
fn characteristic_cocycles_are_invariant() {
    let mut cx3 = HComplex::new(3).unwrap();
    let e1 = cx3.build_e1().unwrap();
    assert!(!e1.is_zero());
    assert!(cx3.is_invariant(&e1).unwrap());
    assert!(cx3.coboundary(&e1).unwrap().is_zero());
    let mut cx2 = HComplex::new(2).unwrap();
    let t3 = cx2.build_t(1).unwrap();
    assert!(!t3.is_zero());
    assert!(cx2.is_invariant(&t3).unwrap());
    assert!(cx2.coboundary(&t3).unwrap().is_zero());
    // U ⊂ Λ³H is zero at g = 2, so e1 vanishes there.
    assert!(cx2.build_e1().unwrap().is_zero());
}

#[test]
fn e1_has_a_nonzero_class_at_genus_three() {
    let mut cx = HComplex::new(3).unwrap();
    let coh = cx.invariant_cohomology(2, 2).unwrap();
    assert_eq!(coh.dim(), 1);
    let e1 = cx.build_e1().unwrap();
    let class = cx.class_of(&e1, &coh).unwrap();
    assert!(class.iter().any(|c| !c.is_zero()));
}

#[test]
fn oversized_slices_hit_the_cap() {
    let mut cx = HComplex::new(2).unwrap();
    assert!(matches!(cx.build_t(2), Err(Error::ResourceCap { .. })));
    let mut tiny = HComplex::with_cap(2, 10).unwrap();
    assert!(matches!(tiny.slice(2, 6), Err(Error::ResourceCap { .. })));
}

#[test]
fn graph_cochains_sit_in_their_bidegree() {
    let mut cx = HComplex::new(3).unwrap();
    for graph in enumerate_graphs(2, 4).unwrap() {
        let b = bidegree(&graph).unwrap();
        let c = phi_cochain(&graph, &mut cx).unwrap();
        assert_eq!((c.g, c.d, c.n), (3, b.d, b.n), "{graph}");
    }
}
