//! Weight-graded Chevalley–Eilenberg cochains on `h_{g,1}`, the
//! sp-invariant subcomplex, and the cocycles `e₁` and `t_{2k+1}`.
//!
//! A slice `(d, n)` has as basis the wedges `D_1 ∧ ⋯ ∧ D_d` of echelon basis
//! vectors of `h_{g,1}` with degrees summing to `n`, each tuple sorted by
//! `(degree, index)` with no repeats. A cochain is its vector of values on
//! these tuples. The differential uses
//! `δf(D_0,…,D_d) = Σ_{i<j} (−1)^{i+j} f([D_i,D_j], D_0,…,D̂_i,…,D̂_j,…,D_d)`.

use std::collections::HashMap;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::derivation::{
    bracket_from_tensors, der_dim, h_basis_capped, h_dim_formula, tau1_iso, HSlice, Tau1Iso, Weight, DEFAULT_CAP,
};
use crate::error::{Error, Result};
use crate::linalg::{kernel_of_rows, rank_of_rows, Accumulator, SparseMatrix, SparseVec, SpanCoordinates, Subspace};
use crate::rational::Rational;
use crate::rep::{raising_weight, simple_raising_operators};
use crate::tensor::{det_pairing3, iota_sym, sp_generators, u_projection, BasisContext, LinearOp, SymPoly, TensorPoly};
use crate::trace::trace_k;

/// Basis element of `h`: `(degree, index in the echelon basis)`.
pub type HIndex = (u8, u32);
pub type Tuple = Vec<HIndex>;

/// Basis of `(Λ^d h_{g,1})_n`.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    pub g: usize,
    pub d: usize,
    pub n: usize,
    tuples: Vec<Tuple>,
    index: FxHashMap<Tuple, u32>,
}

impl ComplexSlice {
    pub fn dim(&self) -> usize {
        self.tuples.len()
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn tuple(&self, i: usize) -> &Tuple {
        &self.tuples[i]
    }

    pub fn index_of(&self, t: &Tuple) -> Option<usize> {
        self.index.get(t).map(|&i| i as usize)
    }
}

/// Sorts a tuple with one entry out of place, returning the sign of the
/// permutation, or `None` on a repeat.
fn insert_sorted(rest: &[HIndex], x: HIndex) -> Option<(Tuple, i64)> {
    let pos = rest.partition_point(|y| *y < x);
    if pos < rest.len() && rest[pos] == x {
        return None;
    }
    let mut t = Vec::with_capacity(rest.len() + 1);
    t.extend_from_slice(&rest[..pos]);
    t.push(x);
    t.extend_from_slice(&rest[pos..]);
    Some((t, if pos % 2 == 0 { 1 } else { -1 }))
}

/// Replaces position `p` of a sorted tuple by `x` and re-sorts.
fn replace_sorted(t: &[HIndex], p: usize, x: HIndex) -> Option<(Tuple, i64)> {
    let mut rest: Tuple = t.to_vec();
    rest.remove(p);
    let (out, s) = insert_sorted(&rest, x)?;
    // moving x from slot p to the front first costs (−1)^p
    Some((out, if p.is_multiple_of(2) { s } else { -s }))
}

/// A cochain: values on the basis tuples of slice `(d, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub g: usize,
    pub d: usize,
    pub n: usize,
    pub values: SparseVec,
}

impl Cochain {
    pub fn zero(g: usize, d: usize, n: usize) -> Self {
        Cochain { g, d, n, values: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, i: usize) -> Rational {
        crate::linalg::sparse_get(&self.values, i as u32).cloned().unwrap_or_default()
    }

    /// `λ` with `self = λ · other`, if the two are proportional and `other ≠ 0`.
    pub fn ratio_to(&self, other: &Cochain) -> Option<Rational> {
        if (self.g, self.d, self.n) != (other.g, other.d, other.n) || other.is_zero() {
            return None;
        }
        let (j, x) = &other.values[0];
        let lambda = &self.value(*j as usize) / x;
        let scaled = crate::linalg::scale_vec(&other.values, &lambda);
        (scaled == self.values).then_some(lambda)
    }
}

/// Invariant cochains of a slice, supported on the torus-weight-zero tuples.
#[derive(Clone, Debug)]
pub struct InvariantCochains {
    /// Slice indices of the weight-zero tuples.
    pub support: Vec<usize>,
    /// Basis over `support` positions.
    pub space: Subspace,
}

impl InvariantCochains {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn cochain(&self, g: usize, d: usize, n: usize, i: usize) -> Cochain {
        let values = self.space.basis()[i].iter().map(|(p, c)| (self.support[*p as usize] as u32, c.clone())).collect();
        Cochain { g, d, n, values }
    }
}

/// `H^d(h_{g,1})^{Sp}_n` with representatives of a basis.
#[derive(Clone, Debug)]
pub struct InvariantCohomology {
    pub g: usize,
    pub d: usize,
    pub n: usize,
    pub dim_slice: usize,
    pub dim_invariant: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    support: Vec<usize>,
    /// Class representatives over `support` positions.
    reps: Vec<SparseVec>,
    solver: SpanCoordinates,
    n_boundary: usize,
}

impl InvariantCohomology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representative(&self, i: usize) -> Cochain {
        let values = self.reps[i].iter().map(|(p, c)| (self.support[*p as usize] as u32, c.clone())).collect();
        Cochain { g: self.g, d: self.d, n: self.n, values }
    }
}

/// Identifies an operator whose chain action is cached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum OpKey {
    Sp(usize),
    Raise(usize),
}

/// Lazily built cochain complex of `h_{g,1}` with memoized structure
/// constants and actions.
pub struct HComplex {
    g: usize,
    ctx: BasisContext,
    cap: usize,
    slices: HashMap<(usize, usize), Arc<ComplexSlice>>,
    brackets: FxHashMap<(HIndex, HIndex), SparseVec>,
    images: FxHashMap<HIndex, Arc<Vec<Option<TensorPoly>>>>,
    weights: FxHashMap<HIndex, Weight>,
    actions: HashMap<(usize, OpKey), Arc<SparseMatrix>>,
    sp: Vec<LinearOp>,
    raise: Vec<LinearOp>,
    differentials: HashMap<(usize, usize), Arc<SparseMatrix>>,
    tau1: Option<Tau1Iso>,
}

impl HComplex {
    pub fn new(g: usize) -> Result<Self> {
        Self::with_cap(g, DEFAULT_CAP)
    }

    pub fn with_cap(g: usize, cap: usize) -> Result<Self> {
        let ctx = BasisContext::symplectic(g)?;
        Ok(HComplex {
            g,
            ctx,
            cap,
            slices: HashMap::new(),
            brackets: FxHashMap::default(),
            images: FxHashMap::default(),
            weights: FxHashMap::default(),
            actions: HashMap::new(),
            sp: sp_generators(&ctx)?,
            raise: simple_raising_operators(&ctx)?,
            differentials: HashMap::new(),
            tau1: None,
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn context(&self) -> BasisContext {
        self.ctx
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn sp_generator_count(&self) -> usize {
        self.sp.len()
    }

    pub fn h(&self, k: usize) -> Result<Arc<HSlice>> {
        h_basis_capped(self.g, k, self.cap)
    }

    /// Multigraded count `Σ_partitions Π_k C(dim h(k), mult_k)`.
    pub fn slice_dim_formula(&self, d: usize, n: usize) -> Result<usize> {
        fn rec(cx: &HComplex, d: usize, n: usize, min: usize) -> Result<u128> {
            if d == 0 {
                return Ok((n == 0) as u128);
            }
            let mut total = 0u128;
            for k in min..=n / d {
                let dim = h_dim_formula(cx.g, k);
                for m in 1..=d {
                    if m * k > n {
                        break;
                    }
                    let c = crate::tensor::binomial(dim, m) as u128;
                    if c == 0 {
                        break;
                    }
                    total += c * rec(cx, d - m, n - m * k, k + 1)?;
                }
            }
            Ok(total)
        }
        Ok(rec(self, d, n, 1)? as usize)
    }

    pub fn slice(&mut self, d: usize, n: usize) -> Result<Arc<ComplexSlice>> {
        if let Some(s) = self.slices.get(&(d, n)) {
            return Ok(s.clone());
        }
        let expected = self.slice_dim_formula(d, n)?;
        if expected > self.cap {
            return Err(Error::ResourceCap { what: format!("slice (d={d}, n={n})"), needed: expected, cap: self.cap });
        }
        let kmax = (n + 1).saturating_sub(d);
        for k in 1..=kmax {
            let ambient = der_dim(2 * self.g, k);
            if ambient > self.cap {
                return Err(Error::ResourceCap { what: format!("h_{{{},1}}({k})", self.g), needed: ambient, cap: self.cap });
            }
        }
        let dims: Vec<usize> = (0..=n)
            .map(|k| if k == 0 || k > kmax { Ok(0) } else { self.h(k).map(|h| h.dim()) })
            .collect::<Result<_>>()?;
        let mut tuples = Vec::with_capacity(expected);
        let mut cur: Tuple = Vec::with_capacity(d);
        fn rec(dims: &[usize], d: usize, left: usize, cur: &mut Tuple, out: &mut Vec<Tuple>) {
            if cur.len() == d {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let slots = d - cur.len();
            let (k0, i0) = match cur.last() {
                Some(&(k, i)) => (k as usize, i as usize + 1),
                None => (1, 0),
            };
            for k in k0..=left / slots {
                let start = if k == k0 { i0 } else { 0 };
                for i in start..dims[k] {
                    cur.push((k as u8, i as u32));
                    rec(dims, d, left - k, cur, out);
                    cur.pop();
                }
            }
        }
        if d > 0 {
            rec(&dims, d, n, &mut cur, &mut tuples);
        } else if n == 0 {
            tuples.push(Vec::new());
        }
        debug_assert_eq!(tuples.len(), expected);
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
        let s = Arc::new(ComplexSlice { g: self.g, d, n, tuples, index });
        self.slices.insert((d, n), s.clone());
        Ok(s)
    }

    fn tensor_images(&mut self, x: HIndex) -> Result<Arc<Vec<Option<TensorPoly>>>> {
        if let Some(t) = self.images.get(&x) {
            return Ok(t.clone());
        }
        let h = self.h(x.0 as usize)?;
        let t = Arc::new(h.basis_derivation(x.1 as usize).tensor_images());
        self.images.insert(x, t.clone());
        Ok(t)
    }

    /// `[D_a, D_b]` in the echelon coordinates of `h(deg a + deg b)`.
    pub fn bracket(&mut self, a: HIndex, b: HIndex) -> Result<SparseVec> {
        if a == b {
            return Ok(Vec::new());
        }
        let (x, y, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        if let Some(v) = self.brackets.get(&(x, y)) {
            return Ok(if sign == 1 { v.clone() } else { crate::linalg::scale_vec(v, &Rational::from_int(-1)) });
        }
        let target = self.h(x.0 as usize + y.0 as usize)?;
        let ix = self.tensor_images(x)?;
        let iy = self.tensor_images(y)?;
        let br = bracket_from_tensors(self.ctx, (&ix, x.0 as usize), (&iy, y.0 as usize));
        let v = target.coords_of(&br.coords());
        self.brackets.insert((x, y), v.clone());
        Ok(if sign == 1 { v } else { crate::linalg::scale_vec(&v, &Rational::from_int(-1)) })
    }

    pub fn basis_weight(&mut self, x: HIndex) -> Result<Weight> {
        if let Some(w) = self.weights.get(&x) {
            return Ok(w.clone());
        }
        let w = self.h(x.0 as usize)?.basis_weight(x.1 as usize);
        self.weights.insert(x, w.clone());
        Ok(w)
    }

    pub fn tuple_weight(&mut self, t: &Tuple) -> Result<Weight> {
        let mut w = vec![0; self.g];
        for x in t {
            for (a, b) in w.iter_mut().zip(self.basis_weight(*x)?) {
                *a += b;
            }
        }
        Ok(w)
    }

    fn weight_indices(&mut self, d: usize, n: usize, target: &Weight) -> Result<Vec<usize>> {
        let s = self.slice(d, n)?;
        let mut out = Vec::new();
        for (i, t) in s.tuples().iter().enumerate() {
            if &self.tuple_weight(t)? == target {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Row of `δ` for one target tuple of slice `(d+1, n)`: the coefficients
    /// of `f` on slice `(d, n)` in `(δf)(tuple)`.
    pub fn differential_row(&mut self, target: &Tuple, n: usize) -> Result<SparseVec> {
        let d = target.len() - 1;
        let src = self.slice(d, n)?;
        let mut acc = Accumulator::new(src.dim());
        for i in 0..target.len() {
            for j in i + 1..target.len() {
                let br = self.bracket(target[i], target[j])?;
                if br.is_empty() {
                    continue;
                }
                let rest: Tuple = target.iter().enumerate().filter(|(p, _)| *p != i && *p != j).map(|(_, x)| *x).collect();
                let deg = target[i].0 + target[j].0;
                let s0 = if (i + j) % 2 == 0 { 1 } else { -1 };
                for (m, c) in &br {
                    if let Some((t, s)) = insert_sorted(&rest, (deg, *m)) {
                        let col = src.index_of(&t).expect("tuple in slice");
                        acc.add(col as u32, &(c * &Rational::from_int(s0 * s)));
                    }
                }
            }
        }
        Ok(acc.drain())
    }

    /// Full matrix of `δ: C^d_n → C^{d+1}_n` on cochain coordinates.
    pub fn differential(&mut self, d: usize, n: usize) -> Result<Arc<SparseMatrix>> {
        if let Some(m) = self.differentials.get(&(d, n)) {
            return Ok(m.clone());
        }
        let src = self.slice(d, n)?;
        let tgt = self.slice(d + 1, n)?;
        let mut rows = Vec::with_capacity(tgt.dim());
        for t in tgt.tuples() {
            rows.push(self.differential_row(t, n)?);
        }
        let m = Arc::new(SparseMatrix::from_rows(src.dim(), rows));
        self.differentials.insert((d, n), m.clone());
        Ok(m)
    }

    fn h_action(&mut self, k: usize, op: OpKey) -> Result<Arc<SparseMatrix>> {
        if let Some(m) = self.actions.get(&(k, op)) {
            return Ok(m.clone());
        }
        let x = match op {
            OpKey::Sp(i) => self.sp[i].clone(),
            OpKey::Raise(i) => self.raise[i].clone(),
        };
        let m = Arc::new(self.h(k)?.action_matrix(&x).transpose());
        self.actions.insert((k, op), m.clone());
        Ok(m)
    }

    /// `X·(D_1∧⋯∧D_d)` in slice coordinates.
    fn act_on_tuple(&mut self, op: OpKey, t: &Tuple, slice: &ComplexSlice) -> Result<SparseVec> {
        let mut acc = Accumulator::new(slice.dim());
        for (p, x) in t.iter().enumerate() {
            // rows of the transposed action matrix are images of basis vectors
            let m = self.h_action(x.0 as usize, op)?;
            for (j, c) in m.row(x.1 as usize) {
                if let Some((t2, s)) = replace_sorted(t, p, (x.0, *j)) {
                    let col = slice.index_of(&t2).expect("tuple in slice");
                    acc.add(col as u32, &(c * &Rational::from_int(s)));
                }
            }
        }
        Ok(acc.drain())
    }

    /// Matrix of the `i`-th sp generator acting on chains of slice `(d, n)`
    /// (column `j` is the image of tuple `j`).
    pub fn sp_chain_action(&mut self, i: usize, d: usize, n: usize) -> Result<SparseMatrix> {
        let s = self.slice(d, n)?;
        let mut cols = Vec::with_capacity(s.dim());
        for t in s.tuples() {
            cols.push(self.act_on_tuple(OpKey::Sp(i), t, &s)?);
        }
        Ok(SparseMatrix::from_columns(s.dim(), &cols))
    }

    /// Exact check that `∂ = δᵀ` commutes with every sp generator between
    /// slices `(d, n)` and `(d+1, n)`.
    pub fn differential_commutes_with_sp(&mut self, d: usize, n: usize) -> Result<bool> {
        let delta = self.differential(d, n)?;
        let boundary = delta.transpose();
        for i in 0..self.sp.len() {
            let a_lo = self.sp_chain_action(i, d, n)?;
            let a_hi = self.sp_chain_action(i, d + 1, n)?;
            if a_lo.mul(&boundary) != boundary.mul(&a_hi) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `δ_{d+1} ∘ δ_d = 0` on slice `(d, n)`.
    pub fn delta_squared_vanishes(&mut self, d: usize, n: usize) -> Result<bool> {
        let a = self.differential(d, n)?;
        let b = self.differential(d + 1, n)?;
        Ok(b.mul(&a).is_zero())
    }

    /// Whether `f(X·w) = 0` for every sp generator `X` and basis tuple `w`.
    pub fn is_invariant(&mut self, c: &Cochain) -> Result<bool> {
        let s = self.slice(c.d, c.n)?;
        for i in 0..self.sp.len() {
            for t in s.tuples() {
                let v = self.act_on_tuple(OpKey::Sp(i), t, &s)?;
                if !crate::linalg::dot(&c.values, &v).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn coboundary(&mut self, c: &Cochain) -> Result<Cochain> {
        let m = self.differential(c.d, c.n)?;
        Ok(Cochain { g: self.g, d: c.d + 1, n: c.n, values: m.mul_vec(&c.values) })
    }

    pub fn is_cocycle(&mut self, c: &Cochain) -> Result<bool> {
        Ok(self.coboundary(c)?.is_zero())
    }

    /// Invariant cochains on slice `(d, n)`: weight-zero functionals killed by
    /// the simple raising operators.
    pub fn invariant_cochains(&mut self, d: usize, n: usize) -> Result<InvariantCochains> {
        let s = self.slice(d, n)?;
        let zero = vec![0; self.g];
        let support = self.weight_indices(d, n, &zero)?;
        let pos: FxHashMap<usize, u32> = support.iter().enumerate().map(|(p, i)| (*i, p as u32)).collect();
        let mut rows = Vec::new();
        for r in 0..self.raise.len() {
            let target: Weight = raising_weight(self.g, r).iter().map(|x| -x).collect();
            for i in self.weight_indices(d, n, &target)? {
                let v = self.act_on_tuple(OpKey::Raise(r), &s.tuples()[i].clone(), &s)?;
                let row: SparseVec = v.into_iter().map(|(j, c)| (pos[&(j as usize)], c)).collect();
                let mut row = row;
                row.sort_by_key(|(j, _)| *j);
                rows.push(row);
            }
        }
        let space = kernel_of_rows(rows, support.len());
        Ok(InvariantCochains { support, space })
    }

    /// `δ` applied to each invariant basis cochain, restricted to weight-zero
    /// target tuples and expressed over the target's support positions.
    fn delta_on_invariants(&mut self, inv: &InvariantCochains, d: usize, n: usize, tgt_support: &[usize]) -> Result<Vec<SparseVec>> {
        let tgt = self.slice(d + 1, n)?;
        let src_pos: FxHashMap<usize, u32> = inv.support.iter().enumerate().map(|(p, i)| (*i, p as u32)).collect();
        let mut rows: Vec<SparseVec> = Vec::with_capacity(tgt_support.len());
        for &ti in tgt_support {
            let row = self.differential_row(&tgt.tuples()[ti].clone(), n)?;
            let mapped: SparseVec = row
                .into_iter()
                .map(|(j, c)| (*src_pos.get(&(j as usize)).expect("weight is preserved"), c))
                .collect();
            let mut mapped = mapped;
            mapped.sort_by_key(|(j, _)| *j);
            rows.push(mapped);
        }
        let m = SparseMatrix::from_rows(inv.support.len(), rows);
        Ok(inv.space.basis().iter().map(|b| m.mul_vec(b)).collect())
    }

    pub fn invariant_cohomology(&mut self, d: usize, n: usize) -> Result<InvariantCohomology> {
        if d == 0 {
            return Err(Error::Invalid("cohomological degree must be >= 1".into()));
        }
        let dim_slice = self.slice(d, n)?.dim();
        let inv = self.invariant_cochains(d, n)?;
        let zero = vec![0; self.g];
        let up_support = self.weight_indices(d + 1, n, &zero)?;
        let images = self.delta_on_invariants(&inv, d, n, &up_support)?;
        // cocycles: kernel of the map I_d → C^{d+1}, in I_d coordinates
        let img_matrix = SparseMatrix::from_columns(up_support.len(), &images);
        let z_coords = kernel_of_rows(img_matrix.into_rows(), inv.dim());
        let cocycles: Vec<SparseVec> = z_coords.basis().iter().map(|c| inv.space.combine(c)).collect();
        let boundaries: Vec<SparseVec> = if d >= 2 {
            let lower = self.invariant_cochains(d - 1, n)?;
            self.delta_on_invariants(&lower, d - 1, n, &inv.support)?
        } else {
            Vec::new()
        };
        let b_space = Subspace::span(inv.support.len(), boundaries);
        let mut family: Vec<SparseVec> = b_space.basis().to_vec();
        let mut reps = Vec::new();
        let mut current = b_space.clone();
        for z in &cocycles {
            if !current.contains(z) {
                reps.push(z.clone());
                family.push(z.clone());
                current = Subspace::span(inv.support.len(), family.clone());
            }
        }
        let solver = SpanCoordinates::new(inv.support.len(), &family)?;
        Ok(InvariantCohomology {
            g: self.g,
            d,
            n,
            dim_slice,
            dim_invariant: inv.dim(),
            dim_cocycles: cocycles.len(),
            dim_coboundaries: b_space.dim(),
            support: inv.support,
            n_boundary: b_space.dim(),
            reps,
            solver,
        })
    }

    /// Coordinates of the class of an invariant cocycle in the basis of
    /// `coh` (which must be the cohomology of the cochain's slice).
    pub fn class_of(&mut self, c: &Cochain, coh: &InvariantCohomology) -> Result<Vec<Rational>> {
        if (c.d, c.n, c.g) != (coh.d, coh.n, coh.g) {
            return Err(Error::Invalid("cochain and cohomology bidegrees differ".into()));
        }
        if !self.is_cocycle(c)? {
            return Err(Error::NotACocycle);
        }
        let pos: FxHashMap<usize, u32> = coh.support.iter().enumerate().map(|(p, i)| (*i, p as u32)).collect();
        let mut v = Vec::with_capacity(c.values.len());
        for (j, x) in &c.values {
            match pos.get(&(*j as usize)) {
                Some(p) => v.push((*p, x.clone())),
                None => return Err(Error::Precondition("cochain is not sp-invariant".into())),
            }
        }
        v.sort_by_key(|(j, _)| *j);
        let x = coh
            .solver
            .solve(&v)
            .ok_or_else(|| Error::Precondition("cochain is not sp-invariant".into()))?;
        Ok(x[coh.n_boundary..].to_vec())
    }

    fn tau1(&mut self) -> Result<&Tau1Iso> {
        if self.tau1.is_none() {
            self.tau1 = Some(tau1_iso(self.g)?);
        }
        Ok(self.tau1.as_ref().unwrap())
    }

    /// `τ̄₁` of the degree-1 basis vectors: U-projection of `τ₁`.
    pub fn tau1_bar_basis(&mut self) -> Result<Vec<crate::tensor::ExtPoly>> {
        let h1 = self.h(1)?;
        let iso = self.tau1()?.clone();
        h1.basis_derivations().iter().map(|d| u_projection(&iso.inverse(d)?)).collect()
    }

    /// `trace(k)` of the degree-`k` basis vectors.
    pub fn trace_basis(&mut self, k: usize) -> Result<Vec<SymPoly>> {
        Ok(self.h(k)?.basis_derivations().iter().map(trace_k).collect())
    }

    /// `e₁(D₁∧D₂) = ι₁(τ̄₁D₁, τ̄₁D₂)` on slice `(2, 2)`.
    pub fn build_e1(&mut self) -> Result<Cochain> {
        let s = self.slice(2, 2)?;
        let tb = self.tau1_bar_basis()?;
        let mut values = Vec::new();
        for (i, t) in s.tuples().iter().enumerate() {
            let v = det_pairing3(&tb[t[0].1 as usize], &tb[t[1].1 as usize])?;
            if !v.is_zero() {
                values.push((i as u32, v));
            }
        }
        Ok(Cochain { g: self.g, d: 2, n: 2, values })
    }

    /// `t_{2k+1}(D₁∧D₂) = ι_{2k+1}(trace D₁, trace D₂)` on slice
    /// `(2, 4k+2)`, zero unless both arguments have degree `2k+1`.
    pub fn build_t(&mut self, k: usize) -> Result<Cochain> {
        let m = 2 * k + 1;
        let n = 4 * k + 2;
        let s = self.slice(2, n)?;
        let tr = self.trace_basis(m)?;
        let mut values = Vec::new();
        for (i, t) in s.tuples().iter().enumerate() {
            if t[0].0 as usize == m && t[1].0 as usize == m {
                let v = iota_sym(&tr[t[0].1 as usize], &tr[t[1].1 as usize])?;
                if !v.is_zero() {
                    values.push((i as u32, v));
                }
            }
        }
        Ok(Cochain { g: self.g, d: 2, n, values })
    }

    /// Rank of a family of cochains on one slice.
    pub fn rank_of(&self, cochains: &[Cochain], dim: usize) -> usize {
        rank_of_rows(cochains.iter().map(|c| c.values.clone()).collect(), dim)
    }
}

/// One row of the cohomology table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyRow {
    pub g: usize,
    pub d: usize,
    pub n: usize,
    pub dim_slice: usize,
    pub dim_invariant: usize,
    pub dim_h_invariant: usize,
    /// Named cocycles with their class coordinates.
    pub classes: Vec<(String, Vec<Rational>)>,
}

impl CohomologyRow {
    pub const HEADER: [&'static str; 7] =
        ["g", "d", "n", "dim_slice", "dim_invariant", "dim_H_invariant", "classes"];

    pub fn record(&self) -> Vec<String> {
        let classes = self
            .classes
            .iter()
            .map(|(name, c)| {
                let coords: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("{name}=[{}]", coords.join(" "))
            })
            .collect::<Vec<_>>()
            .join(";");
        vec![
            self.g.to_string(),
            self.d.to_string(),
            self.n.to_string(),
            self.dim_slice.to_string(),
            self.dim_invariant.to_string(),
            self.dim_h_invariant.to_string(),
            classes,
        ]
    }
}

/// Computes a table row, attaching the classes of `e₁` (weight 2) and
/// `t_{2k+1}` (weight `4k+2`) when they live in this bidegree.
pub fn cohomology_row(cx: &mut HComplex, d: usize, n: usize) -> Result<CohomologyRow> {
    let coh = cx.invariant_cohomology(d, n)?;
    let mut classes = Vec::new();
    if d == 2 && n == 2 && cx.g() >= 2 {
        let e1 = cx.build_e1()?;
        classes.push(("e1".to_string(), cx.class_of(&e1, &coh)?));
    }
    if d == 2 && n % 4 == 2 && n >= 6 {
        let k = (n - 2) / 4;
        let t = cx.build_t(k)?;
        classes.push((format!("t{}", 2 * k + 1), cx.class_of(&t, &coh)?));
    }
    Ok(CohomologyRow {
        g: cx.g(),
        d,
        n,
        dim_slice: coh.dim_slice,
        dim_invariant: coh.dim_invariant,
        dim_h_invariant: coh.dim(),
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slice_dims() {
        let mut cx = HComplex::new(2).unwrap();
        assert_eq!(cx.slice(2, 2).unwrap().dim(), 6);
        assert_eq!(cx.slice(1, 2).unwrap().dim(), 20);
        assert_eq!(cx.slice(3, 3).unwrap().dim(), 4);
        assert_eq!(cx.slice(2, 4).unwrap().dim(), 4 * 36 + 190);
    }

    #[test]
    fn tuple_sorting_signs() {
        let rest = vec![(1u8, 0u32), (1, 2)];
        assert_eq!(insert_sorted(&rest, (1, 1)), Some((vec![(1, 0), (1, 1), (1, 2)], -1)));
        assert_eq!(insert_sorted(&rest, (1, 2)), None);
        let t = vec![(1u8, 0u32), (1, 1), (1, 2)];
        assert_eq!(replace_sorted(&t, 0, (1, 3)), Some((vec![(1, 1), (1, 2), (1, 3)], 1)));
        assert_eq!(replace_sorted(&t, 1, (1, 3)), Some((vec![(1, 0), (1, 2), (1, 3)], -1)));
    }

    #[test]
    fn low_weight_pipeline() {
        let mut cx = HComplex::new(2).unwrap();
        assert!(cx.delta_squared_vanishes(1, 3).unwrap());
        assert!(cx.differential_commutes_with_sp(1, 3).unwrap());
        assert!(cx.build_e1().unwrap().is_zero());
        let coh = cx.invariant_cohomology(2, 2).unwrap();
        assert_eq!(coh.dim_slice, 6);
    }

    #[test]
    fn capped_slice_is_refused() {
        let mut cx = HComplex::with_cap(2, 10).unwrap();
        assert!(matches!(cx.slice(1, 2), Err(Error::ResourceCap { .. })));
    }
}
