//! Fox partial derivatives of Lie tensors and the trace maps
//! `trace(k): Der(k) → S^k H`.

use crate::derivation::{der_dim, h_basis_capped, Derivation, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::free_lie::lyndon_table;
use crate::linalg::{rank, SparseMatrix};
use crate::rational::Rational;
use crate::tensor::{abelianize, binomial, pow_n, sym_basis, sym_dim, BasisContext, SymPoly, TensorPoly};

/// The decomposition `η = Σ_i η_i ⊗ x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoxRow {
    pub partials: Vec<TensorPoly>,
}

impl FoxRow {
    pub fn partial(&self, i: usize) -> &TensorPoly {
        &self.partials[i]
    }

    /// `Σ_i η_i ⊗ x_i`.
    pub fn reconstruct(&self) -> TensorPoly {
        let ctx = self.partials[0].context();
        let mut t = TensorPoly::zero(ctx, self.partials[0].degree() + 1);
        for (i, p) in self.partials.iter().enumerate() {
            t.add_scaled(&p.concat(&TensorPoly::letter(ctx, i as u8)), &Rational::ONE);
        }
        t
    }
}

/// Splits off the last tensor factor.
pub fn fox_partials(eta: &TensorPoly) -> Result<FoxRow> {
    if eta.degree() == 0 {
        return Err(Error::Invalid("fox_partials needs degree >= 1".into()));
    }
    let ctx = eta.context();
    let n = ctx.n() as u64;
    let mut partials: Vec<TensorPoly> = (0..ctx.n()).map(|_| TensorPoly::zero(ctx, eta.degree() - 1)).collect();
    for (w, c) in eta.terms() {
        partials[(w % n) as usize].add_term(w / n, c.clone());
    }
    Ok(FoxRow { partials })
}

/// Which tensor slot is contracted against the dual generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contraction {
    /// The first slot; yields `(−1)^k trace(k)`.
    First,
    /// The last slot, `C_{k+1}`; yields `trace(k)`.
    Last,
}

/// `trace(k)(D) = (Σ_i ∂D(x_i)/∂x_i)^{ab}`.
pub fn trace_k(d: &Derivation) -> SymPoly {
    trace_via_contraction(d, Contraction::Last)
}

pub fn trace_via_contraction(d: &Derivation, which: Contraction) -> SymPoly {
    let ctx = d.context();
    let k = d.degree();
    let n = ctx.n() as u64;
    let lead = pow_n(ctx.n(), k);
    let mut t = TensorPoly::zero(ctx, k);
    for (i, im) in d.images().iter().enumerate() {
        if im.is_zero() {
            continue;
        }
        for (w, c) in im.embed_to_tensor().terms() {
            match which {
                Contraction::Last if w % n == i as u64 => t.add_term(w / n, c.clone()),
                Contraction::First if w / lead == i as u64 => t.add_term(w % lead, c.clone()),
                _ => {}
            }
        }
    }
    abelianize(&t)
}

/// Matrix of `trace(k)` from `Der(k)` coordinates to the monomial basis of
/// `S^k H` (order of [`sym_basis`]).
pub fn trace_matrix(ctx: &BasisContext, k: usize) -> SparseMatrix {
    let n = ctx.n();
    let table = lyndon_table(n, k + 1);
    let w = table.len();
    let monos = sym_basis(n, k);
    let mut trip = Vec::new();
    for l in 0..n {
        for i in 0..w {
            let mut t = TensorPoly::zero(*ctx, k);
            for (u, c) in table.expansion(i) {
                if u % n as u64 == l as u64 {
                    t.add_term(u / n as u64, Rational::from_int(*c));
                }
            }
            for (code, c) in abelianize(&t).terms() {
                let row = monos.binary_search(code).expect("sorted monomial");
                trip.push((row, l * w + i, c.clone()));
            }
        }
    }
    SparseMatrix::from_triplets(monos.len(), der_dim(n, k), trip)
}

/// Coordinates of a symmetric polynomial in the monomial basis.
pub fn sym_coords(s: &SymPoly) -> Vec<(u32, Rational)> {
    let monos = sym_basis(s.context().n(), s.degree());
    s.terms()
        .map(|(code, c)| (monos.binary_search(code).expect("sorted monomial") as u32, c.clone()))
        .collect()
}

/// Rank of `trace(k)` restricted to `h_{g,1}(k)`.
pub fn trace_rank_on_h(g: usize, k: usize) -> Result<usize> {
    trace_rank_on_h_capped(g, k, DEFAULT_CAP)
}

pub fn trace_rank_on_h_capped(g: usize, k: usize, cap: usize) -> Result<usize> {
    let h = h_basis_capped(g, k, cap)?;
    let tm = trace_matrix(&h.context(), k);
    let cols: Vec<_> = h.subspace().basis().iter().map(|b| tm.mul_vec(b)).collect();
    Ok(rank(&SparseMatrix::from_columns(tm.nrows(), &cols)))
}

/// Rank of `trace(2k+1)` on `h_{g,1}(2k+1)`; `degree` must be odd.
pub fn trace_odd_rank(g: usize, degree: usize) -> Result<usize> {
    if degree.is_multiple_of(2) {
        return Err(Error::Invalid(format!("trace_odd_rank needs an odd degree, got {degree}")));
    }
    trace_rank_on_h(g, degree)
}

/// `dim S^m H` for `n = 2g`, the target of the odd traces.
pub fn odd_trace_target_dim(g: usize, degree: usize) -> usize {
    binomial(2 * g + degree - 1, degree)
}

/// `dim S^k H_n`.
pub fn trace_target_dim(n: usize, k: usize) -> usize {
    sym_dim(n, k)
}

/// The derivation `x_2 ↦ ad(x_1)^k (x_2)`, other generators fixed at zero.
pub fn ad_power_example(n: usize, k: usize) -> Result<Derivation> {
    let ctx = BasisContext::free(n)?;
    let x1 = crate::free_lie::LiePoly::generator(ctx, 0);
    let mut img = crate::free_lie::LiePoly::generator(ctx, 1);
    for _ in 0..k {
        img = x1.bracket(&img)?;
    }
    Derivation::single(ctx, 1, img)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_lie::LiePoly;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn fox_examples() {
        let ctx = BasisContext::free(2).unwrap();
        let (x1, x2) = (LiePoly::generator(ctx, 0), LiePoly::generator(ctx, 1));
        let c = x1.bracket(&x2).unwrap();
        let row = fox_partials(&c.embed_to_tensor()).unwrap();
        assert_eq!(row.partial(0), &TensorPoly::word(ctx, &[1], q(-1)));
        assert_eq!(row.partial(1), &TensorPoly::word(ctx, &[0], q(1)));
        let eta = x1.bracket(&c).unwrap().embed_to_tensor();
        let row = fox_partials(&eta).unwrap();
        assert_eq!(row.partial(1), &TensorPoly::word(ctx, &[0, 0], q(1)));
        assert_eq!(row.reconstruct(), eta);
    }

    #[test]
    fn ad_power_traces() {
        for k in 2..=6 {
            let d = ad_power_example(2, k).unwrap();
            let expect = SymPoly::monomial(d.context(), &vec![0; k], q(1));
            assert_eq!(trace_k(&d), expect);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(trace_via_contraction(&d, Contraction::First), expect.scaled(&q(sign)));
        }
        let d = ad_power_example(2, 3).unwrap();
        assert_eq!(trace_k(&d).to_string(), "x1^3");
        assert_eq!(trace_via_contraction(&d, Contraction::First).to_string(), "-x1^3");
    }

    #[test]
    fn matrix_matches_direct_trace() {
        let ctx = BasisContext::free(3).unwrap();
        for k in 1..=3 {
            let m = trace_matrix(&ctx, k);
            for j in 0..der_dim(3, k) {
                let d = Derivation::basis_element(ctx, k, j);
                let col: Vec<_> = (0..m.nrows()).map(|r| m.get(r, j)).collect();
                let direct = crate::linalg::sparse_to_dense(&sym_coords(&trace_k(&d)), m.nrows());
                assert_eq!(col, direct);
            }
        }
    }

    #[test]
    fn small_odd_rank() {
        assert_eq!(trace_odd_rank(2, 3).unwrap(), 20);
        assert!(trace_odd_rank(2, 2).is_err());
        assert_eq!(trace_rank_on_h(2, 2).unwrap(), 0);
    }
}
