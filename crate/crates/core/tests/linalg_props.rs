use proptest::prelude::*;
use symtrace_core::linalg::{kernel_basis, rank, SparseMatrix};
use symtrace_core::Rational;

fn to_matrix(rows: &[Vec<i64>]) -> SparseMatrix {
    let dense: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
    SparseMatrix::from_dense(&dense)
}

/// Fraction-free Bareiss elimination over i128.
fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (nr, nc) = (m.len(), m.first().map_or(0, |r| r.len()));
    let mut prev = 1i128;
    let mut r = 0;
    for c in 0..nc {
        let Some(p) = (r..nr).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in r + 1..nr {
            for j in c + 1..nc {
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
    }
    r
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], c), r)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_matches_integer_elimination(rows in matrix_strategy()) {
        prop_assert_eq!(rank(&to_matrix(&rows)), bareiss_rank(&rows));
    }

    #[test]
    fn rank_nullity(rows in matrix_strategy()) {
        let m = to_matrix(&rows);
        prop_assert_eq!(rank(&m) + kernel_basis(&m).dim(), m.ncols());
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in matrix_strategy()) {
        let m = to_matrix(&rows);
        let ker = kernel_basis(&m);
        prop_assert!(ker.check_invariants());
        for v in ker.basis() {
            prop_assert!(m.mul_vec(v).is_empty());
        }
    }

    #[test]
    fn rank_is_permutation_invariant(
        rows in matrix_strategy(),
        seed in any::<u64>(),
    ) {
        let (nr, nc) = (rows.len(), rows[0].len());
        let mut rp: Vec<usize> = (0..nr).collect();
        let mut cp: Vec<usize> = (0..nc).collect();
        let mut s = seed;
        let mut next = |k: usize| { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 33) as usize % k };
        for i in (1..nr).rev() { let j = next(i + 1); rp.swap(i, j); }
        for i in (1..nc).rev() { let j = next(i + 1); cp.swap(i, j); }
        let permuted: Vec<Vec<i64>> = rp.iter().map(|&i| cp.iter().map(|&j| rows[i][j]).collect()).collect();
        prop_assert_eq!(rank(&to_matrix(&rows)), rank(&to_matrix(&permuted)));
    }

    #[test]
    fn results_are_reproducible(rows in matrix_strategy()) {
        let m = to_matrix(&rows);
        prop_assert_eq!(kernel_basis(&m), kernel_basis(&m.clone()));
    }
}
