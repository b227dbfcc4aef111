//! Induced actions of linear maps of `H` on tensor constructions, and
//! sp-invariants as common kernels.

use rustc_hash::FxHashMap;

use crate::derivation::{der_dim, h_basis, Derivation};
use crate::error::{Error, Result};
use crate::linalg::{kernel_of_rows, SparseMatrix, SparseVec, Subspace};
use crate::rational::Rational;
use crate::tensor::{
    decode_word, encode_word, ext_basis, pow_n, sp_generators, sym_basis, wedge_normalize,
    BasisContext, LinearOp,
};

/// A representation built from `H`, with a fixed coordinate basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// `H^{⊗k}`, all words in lexicographic order.
    Tensor(usize),
    /// `S^k H`, non-decreasing words.
    Sym(usize),
    /// `Λ^k H`, strictly increasing words.
    Ext(usize),
    /// `Hom(H, L(k+1))` in derivation coordinates.
    Der(usize),
    /// `Λ^outer(Λ^inner H)`, strictly increasing tuples of `Λ^inner` indices.
    ExtOfExt { inner: usize, outer: usize },
    /// `h_{g,1}(k)` in its echelon coordinates.
    HSlice(usize),
}

impl Space {
    pub fn dim(&self, ctx: &BasisContext) -> Result<usize> {
        let n = ctx.n();
        Ok(match *self {
            Space::Tensor(k) => pow_n(n, k) as usize,
            Space::Sym(k) => sym_basis(n, k).len(),
            Space::Ext(k) => ext_basis(n, k).len(),
            Space::Der(k) => der_dim(n, k),
            Space::ExtOfExt { inner, outer } => {
                crate::tensor::binomial(ext_basis(n, inner).len(), outer)
            }
            Space::HSlice(k) => h_basis(ctx.require_symplectic()?, k)?.dim(),
        })
    }
}

fn letter_action_rows(x: &LinearOp) -> Vec<Vec<(u8, Rational)>> {
    // images[j] = nonzero entries of X e_j
    (0..x.dim())
        .map(|j| {
            (0..x.dim())
                .filter_map(|i| {
                    let c = x.entry(i, j);
                    (!c.is_zero()).then(|| (i as u8, c.clone()))
                })
                .collect()
        })
        .collect()
}

/// Derivation (Leibniz) action on words: replaces one letter at a time.
fn word_action(
    n: usize,
    basis: &[u64],
    k: usize,
    x: &LinearOp,
    canon: impl Fn(&[u8]) -> Option<(u64, i64)>,
) -> SparseMatrix {
    let img = letter_action_rows(x);
    let index: FxHashMap<u64, usize> = basis.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let mut trip = Vec::new();
    for (col, code) in basis.iter().enumerate() {
        let w = decode_word(n, k, *code);
        for p in 0..k {
            for (i, c) in &img[w[p] as usize] {
                let mut v = w.clone();
                v[p] = *i;
                if let Some((code2, s)) = canon(&v) {
                    trip.push((index[&code2], col, c * &Rational::from_int(s)));
                }
            }
        }
    }
    SparseMatrix::from_triplets(basis.len(), basis.len(), trip)
}

/// Matrix of `X` acting on `space` in that space's coordinates.
pub fn induced_action(ctx: &BasisContext, x: &LinearOp, space: Space) -> Result<SparseMatrix> {
    let n = ctx.n();
    if x.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.dim() });
    }
    Ok(match space {
        Space::Tensor(k) => {
            let basis: Vec<u64> = (0..pow_n(n, k)).collect();
            word_action(n, &basis, k, x, |v| Some((encode_word(n, v), 1)))
        }
        Space::Sym(k) => word_action(n, &sym_basis(n, k), k, x, |v| {
            let mut s = v.to_vec();
            s.sort_unstable();
            Some((encode_word(n, &s), 1))
        }),
        Space::Ext(k) => word_action(n, &ext_basis(n, k), k, x, |v| wedge_normalize(n, v)),
        Space::Der(k) => {
            let cols: Vec<SparseVec> = (0..der_dim(n, k))
                .map(|j| Derivation::basis_element(*ctx, k, j).act_by(x).coords())
                .collect();
            SparseMatrix::from_columns(der_dim(n, k), &cols)
        }
        Space::ExtOfExt { inner, outer } => {
            let a = induced_action(ctx, x, Space::Ext(inner))?;
            exterior_power_action(&a, outer)
        }
        Space::HSlice(k) => h_basis(ctx.require_symplectic()?, k)?.action_matrix(x),
    })
}

/// Given the matrix of `X` on `V`, the matrix on `Λ^m V` in the basis of
/// strictly increasing index tuples.
pub fn exterior_power_action(a: &SparseMatrix, m: usize) -> SparseMatrix {
    let dim = a.ncols();
    assert!(dim <= u8::MAX as usize + 1, "exterior_power_action: base dimension too large");
    let basis = ext_basis(dim, m);
    let index: FxHashMap<u64, usize> = basis.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let at = a.transpose();
    let mut trip = Vec::new();
    for (col, code) in basis.iter().enumerate() {
        let w = decode_word(dim, m, *code);
        for p in 0..m {
            for (i, c) in at.row(w[p] as usize) {
                let mut v = w.clone();
                v[p] = *i as u8;
                if let Some((code2, s)) = wedge_normalize(dim, &v) {
                    trip.push((index[&code2], col, c * &Rational::from_int(s)));
                }
            }
        }
    }
    SparseMatrix::from_triplets(basis.len(), basis.len(), trip)
}

fn stacked_kernel(mats: &[SparseMatrix], dim: usize) -> Subspace {
    let rows: Vec<SparseVec> = mats.iter().flat_map(|m| m.rows().to_vec()).collect();
    kernel_of_rows(rows, dim)
}

/// Common kernel of all sp generators acting on `space`.
pub fn invariant_subspace(ctx: &BasisContext, space: Space) -> Result<Subspace> {
    let gens = sp_generators(ctx)?;
    let dim = space.dim(ctx)?;
    let mats = gens.iter().map(|x| induced_action(ctx, x, space)).collect::<Result<Vec<_>>>()?;
    Ok(stacked_kernel(&mats, dim))
}

/// Invariant linear functionals on `space`: `f` with `f(X·v) = 0` for all
/// generators `X`.
pub fn invariant_functionals(ctx: &BasisContext, space: Space) -> Result<Subspace> {
    let gens = sp_generators(ctx)?;
    let dim = space.dim(ctx)?;
    let mats = gens
        .iter()
        .map(|x| Ok(induced_action(ctx, x, space)?.transpose()))
        .collect::<Result<Vec<_>>>()?;
    Ok(stacked_kernel(&mats, dim))
}

/// Raising operators for the simple roots of `sp(2g)`: `a_{i+1} ↦ a_i`,
/// `b_i ↦ −b_{i+1}` for `i < g`, and `b_g ↦ a_g`.
///
/// A torus-weight-zero vector killed by all of these spans a trivial
/// submodule, so together with the weight condition they cut out the
/// invariants.
pub fn simple_raising_operators(ctx: &BasisContext) -> Result<Vec<LinearOp>> {
    let g = ctx.require_symplectic()?;
    let n = ctx.n();
    let mut out = Vec::new();
    for i in 0..g - 1 {
        let (ai, bi, aj, bj) = (2 * i, 2 * i + 1, 2 * i + 2, 2 * i + 3);
        out.push(LinearOp::from_fn(n, |r, c| {
            if r == ai && c == aj {
                Rational::ONE
            } else if r == bj && c == bi {
                Rational::from_int(-1)
            } else {
                Rational::ZERO
            }
        }));
    }
    out.push(LinearOp::unit(n, 2 * g - 2, 2 * g - 1));
    Ok(out)
}

/// Torus weight change of a raising operator, as a vector in `Z^g`.
pub fn raising_weight(g: usize, idx: usize) -> Vec<i32> {
    let mut w = vec![0; g];
    if idx + 1 < g {
        w[idx] = 1;
        w[idx + 1] = -1;
    } else {
        w[g - 1] = 2;
    }
    w
}
