//! Positive-degree derivations of free Lie algebras and the symplectic
//! derivation algebra `h_{g,1}`.
//!
//! A derivation of degree `k` is stored through its generator images in
//! `L(k+1)`. Coordinates on `Der(k) = Hom(H, L(k+1))` are generator-major:
//! index `l * witt(n, k+1) + i` is the derivation sending `x_l` to the `i`-th
//! Lyndon basis element and every other generator to zero.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_lie::{lie_coordinates, lyndon_table, witt_dim, LiePoly, LiePolyJson};
use crate::linalg::{kernel_basis, sparse_get, Accumulator, SparseMatrix, SparseVec, SpanCoordinates, Subspace};
use crate::rational::Rational;
use crate::tensor::{decode_word, ext_basis, BasisContext, ExtPoly, LinearOp, TensorPoly};

/// Default bound on ambient coordinates for a single derivation slice.
pub const DEFAULT_CAP: usize = 200_000;

pub fn der_dim(n: usize, k: usize) -> usize {
    n * witt_dim(n, k + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    ctx: BasisContext,
    degree: usize,
    images: Vec<LiePoly>,
}

impl Derivation {
    pub fn zero(ctx: BasisContext, degree: usize) -> Self {
        let images = (0..ctx.n()).map(|_| LiePoly::zero(ctx, degree + 1)).collect();
        Derivation { ctx, degree, images }
    }

    pub fn from_images(ctx: BasisContext, degree: usize, images: Vec<LiePoly>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Invalid("derivation degree must be positive".into()));
        }
        if images.len() != ctx.n() {
            return Err(Error::DimensionMismatch { expected: ctx.n(), found: images.len() });
        }
        for im in &images {
            im.context().check_same(&ctx)?;
            if im.degree() != degree + 1 {
                return Err(Error::DegreeMismatch { expected: degree + 1, found: im.degree() });
            }
        }
        Ok(Derivation { ctx, degree, images })
    }

    /// Sets the image of one generator, all others zero.
    pub fn single(ctx: BasisContext, l: u8, image: LiePoly) -> Result<Self> {
        let degree = image.degree().checked_sub(1).filter(|d| *d > 0).ok_or_else(|| {
            Error::Invalid("generator image must have degree >= 2".into())
        })?;
        let mut d = Self::zero(ctx, degree);
        d.images[l as usize] = image;
        Ok(d)
    }

    pub fn from_coords(ctx: BasisContext, degree: usize, coords: &SparseVec) -> Self {
        let w = witt_dim(ctx.n(), degree + 1);
        let mut d = Self::zero(ctx, degree);
        for (j, c) in coords {
            let (l, i) = (*j as usize / w, *j as usize % w);
            d.images[l].add_basis(i as u32, c.clone());
        }
        d
    }

    pub fn basis_element(ctx: BasisContext, degree: usize, idx: usize) -> Self {
        Self::from_coords(ctx, degree, &vec![(idx as u32, Rational::ONE)])
    }

    pub fn coords(&self) -> SparseVec {
        let w = witt_dim(self.ctx.n(), self.degree + 1) as u32;
        let mut out = Vec::new();
        for (l, im) in self.images.iter().enumerate() {
            for (i, c) in im.coords() {
                out.push((l as u32 * w + i, c));
            }
        }
        out
    }

    pub fn context(&self) -> BasisContext {
        self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn image(&self, l: u8) -> &LiePoly {
        &self.images[l as usize]
    }

    pub fn images(&self) -> &[LiePoly] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(LiePoly::is_zero)
    }

    pub fn add_scaled(&mut self, other: &Derivation, s: &Rational) {
        for (a, b) in self.images.iter_mut().zip(&other.images) {
            a.add_scaled(b, s);
        }
    }

    pub fn scaled(&self, s: &Rational) -> Derivation {
        let mut d = Self::zero(self.ctx, self.degree);
        d.add_scaled(self, s);
        d
    }

    pub fn plus(&self, other: &Derivation) -> Result<Derivation> {
        self.ctx.check_same(&other.ctx)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut d = self.clone();
        d.add_scaled(other, &Rational::ONE);
        Ok(d)
    }

    /// Generator images embedded in the tensor algebra.
    pub fn tensor_images(&self) -> Vec<Option<TensorPoly>> {
        self.images
            .iter()
            .map(|im| (!im.is_zero()).then(|| im.embed_to_tensor()))
            .collect()
    }

    /// Extends `D` to the tensor algebra as a derivation.
    pub fn apply_tensor(&self, t: &TensorPoly) -> TensorPoly {
        apply_images(&self.tensor_images(), self.degree, t)
    }

    pub fn apply(&self, u: &LiePoly) -> Result<LiePoly> {
        self.ctx.check_same(&u.context())?;
        let t = self.apply_tensor(&u.embed_to_tensor());
        Ok(LiePoly::from_tensor(&t).expect("derivations preserve Lie elements"))
    }

    /// Action of a linear map `X` of `H` by `(X·D)(x) = X(D x) − D(X x)`.
    pub fn act_by(&self, x: &LinearOp) -> Derivation {
        let n = self.ctx.n();
        let mut out = Self::zero(self.ctx, self.degree);
        for l in 0..n {
            let img = &self.images[l];
            if !img.is_zero() {
                let t = img.embed_to_tensor().apply_linear_derivation(x);
                out.images[l] = LiePoly::from_tensor(&t).expect("Lie");
            }
            for j in 0..n {
                let c = x.entry(j, l);
                if !c.is_zero() {
                    out.images[l].add_scaled(&self.images[j], &-c);
                }
            }
        }
        out
    }
}

/// Applies a derivation given by tensor images of degree `k+1`.
pub fn apply_images(images: &[Option<TensorPoly>], k: usize, t: &TensorPoly) -> TensorPoly {
    match t.apply_letter_derivation(images) {
        Some(r) => r,
        None => TensorPoly::zero(t.context(), t.degree() + k),
    }
}

/// `[D₁, D₂] = D₁D₂ − D₂D₁` on generators.
pub fn bracket_der(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    d1.ctx.check_same(&d2.ctx)?;
    Ok(bracket_from_tensors(
        d1.ctx,
        (&d1.tensor_images(), d1.degree),
        (&d2.tensor_images(), d2.degree),
    ))
}

pub(crate) fn bracket_from_tensors(
    ctx: BasisContext,
    (i1, k1): (&[Option<TensorPoly>], usize),
    (i2, k2): (&[Option<TensorPoly>], usize),
) -> Derivation {
    let degree = k1 + k2;
    let mut out = Derivation::zero(ctx, degree);
    for l in 0..ctx.n() {
        let mut t = TensorPoly::zero(ctx, degree + 1);
        if let Some(im2) = &i2[l] {
            t.add_scaled(&apply_images(i1, k1, im2), &Rational::ONE);
        }
        if let Some(im1) = &i1[l] {
            t.add_scaled(&apply_images(i2, k2, im1), &Rational::from_int(-1));
        }
        out.images[l] = LiePoly::from_tensor(&t).expect("bracket of derivations is a derivation");
    }
    out
}

/// `D(ω₀) = Σ_i [D a_i, b_i] + [a_i, D b_i]`.
pub fn omega_action(d: &Derivation) -> Result<LiePoly> {
    omega_action_with(d, OmegaConvention::Standard)
}

/// Sign convention for the ω₀-action. `FlippedSecondTerm` is a deliberately
/// wrong variant used to exercise the self-check's failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OmegaConvention {
    Standard,
    FlippedSecondTerm,
}

impl OmegaConvention {
    fn second_sign(self) -> i64 {
        match self {
            OmegaConvention::Standard => 1,
            OmegaConvention::FlippedSecondTerm => -1,
        }
    }
}

pub fn omega_action_with(d: &Derivation, conv: OmegaConvention) -> Result<LiePoly> {
    let g = d.ctx.require_symplectic()?;
    let mut t = TensorPoly::zero(d.ctx, d.degree + 2);
    for i in 0..g {
        let (a, b) = (2 * i as u8, 2 * i as u8 + 1);
        let da = d.images[a as usize].embed_to_tensor();
        let db = d.images[b as usize].embed_to_tensor();
        t.add_scaled(&da.commutator(&TensorPoly::letter(d.ctx, b)), &Rational::ONE);
        t.add_scaled(
            &TensorPoly::letter(d.ctx, a).commutator(&db),
            &Rational::from_int(conv.second_sign()),
        );
    }
    Ok(LiePoly::from_tensor(&t).expect("Lie"))
}

/// Matrix of `D ↦ D(ω₀)` from `Der(k)` coordinates to Lyndon coordinates of
/// `L(k+2)`.
pub fn omega_map_matrix(ctx: &BasisContext, k: usize, conv: OmegaConvention) -> Result<SparseMatrix> {
    ctx.require_symplectic()?;
    let n = ctx.n();
    let src = lyndon_table(n, k + 1);
    let w = src.len();
    let rows = witt_dim(n, k + 2);
    let mut trip = Vec::new();
    for l in 0..n as u8 {
        let partner = TensorPoly::letter(*ctx, ctx.partner(l));
        for i in 0..w {
            let p = TensorPoly::from_terms(
                *ctx,
                k + 1,
                src.expansion(i).iter().map(|(u, c)| (*u, Rational::from_int(*c))),
            );
            // l = a_j contributes [P, b_j]; l = b_j contributes ±[a_j, P]
            let t = if l % 2 == 0 {
                p.commutator(&partner)
            } else {
                partner.commutator(&p).scaled(&Rational::from_int(conv.second_sign()))
            };
            let col = l as usize * w + i;
            for (r, c) in lie_coordinates(&t).expect("Lie") {
                trip.push((r as usize, col, c));
            }
        }
    }
    Ok(SparseMatrix::from_triplets(rows, n * w, trip))
}

// ---------------------------------------------------------------------------
// Torus weights
// ---------------------------------------------------------------------------

/// Weight under the diagonal torus of `Sp(2g)`: `a_i ↦ +e_i`, `b_i ↦ −e_i`.
pub type Weight = Vec<i32>;

pub fn word_weight(g: usize, letters: &[u8]) -> Weight {
    let mut w = vec![0; g];
    for &l in letters {
        w[l as usize / 2] += if l % 2 == 0 { 1 } else { -1 };
    }
    w
}

/// Weight of the basis derivation with coordinate `idx` in `Der(k)`.
pub fn der_basis_weight(g: usize, k: usize, idx: usize) -> Weight {
    let n = 2 * g;
    let table = lyndon_table(n, k + 1);
    let (l, i) = (idx / table.len(), idx % table.len());
    let mut w = word_weight(g, &decode_word(n, k + 1, table.words[i]));
    w[l / 2] -= if l % 2 == 0 { 1 } else { -1 };
    w
}

// ---------------------------------------------------------------------------
// h_{g,1}
// ---------------------------------------------------------------------------

/// The degree-`k` part of `h_{g,1}` as a subspace of `Der(k)` coordinates.
#[derive(Clone, Debug)]
pub struct HSlice {
    ctx: BasisContext,
    g: usize,
    k: usize,
    space: Subspace,
    rank: usize,
}

impl HSlice {
    pub fn g(&self) -> usize {
        self.g
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn context(&self) -> BasisContext {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.ambient_dim()
    }

    /// Rank of the ω₀-map whose kernel this is.
    pub fn omega_rank(&self) -> usize {
        self.rank
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn basis_coords(&self, i: usize) -> &SparseVec {
        &self.space.basis()[i]
    }

    pub fn basis_derivation(&self, i: usize) -> Derivation {
        Derivation::from_coords(self.ctx, self.k, &self.space.basis()[i])
    }

    pub fn basis_derivations(&self) -> Vec<Derivation> {
        (0..self.dim()).map(|i| self.basis_derivation(i)).collect()
    }

    /// Coordinates in the echelon basis (read at pivots; assumes membership).
    pub fn coords_of(&self, der_coords: &SparseVec) -> SparseVec {
        self.space.pivot_coordinates(der_coords)
    }

    /// Coordinates with a membership check.
    pub fn checked_coords(&self, d: &Derivation) -> Result<Vec<Rational>> {
        if d.degree() != self.k {
            return Err(Error::DegreeMismatch { expected: self.k, found: d.degree() });
        }
        self.space
            .coordinates(&d.coords())
            .ok_or_else(|| Error::NotInSubspace("derivation does not kill omega0".into()))
    }

    pub fn combine(&self, coords: &SparseVec) -> Derivation {
        Derivation::from_coords(self.ctx, self.k, &self.space.combine(coords))
    }

    /// Torus weight of the `i`-th basis vector (each is a weight vector).
    pub fn basis_weight(&self, i: usize) -> Weight {
        let (j, _) = self.space.basis()[i][0];
        der_basis_weight(self.g, self.k, j as usize)
    }

    /// Matrix of a linear map of `H` acting on this slice, in slice
    /// coordinates.
    pub fn action_matrix(&self, x: &LinearOp) -> SparseMatrix {
        let cols: Vec<SparseVec> = (0..self.dim())
            .map(|i| self.coords_of(&self.basis_derivation(i).act_by(x).coords()))
            .collect();
        SparseMatrix::from_columns(self.dim(), &cols)
    }
}

type HCache = Mutex<HashMap<(usize, usize, OmegaConvention), Arc<HSlice>>>;

fn h_cache() -> &'static HCache {
    static CACHE: OnceLock<HCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `h_{g,1}(k)` with the default cap.
pub fn h_basis(g: usize, k: usize) -> Result<Arc<HSlice>> {
    h_basis_capped(g, k, DEFAULT_CAP)
}

pub fn h_basis_capped(g: usize, k: usize, cap: usize) -> Result<Arc<HSlice>> {
    h_basis_with(g, k, cap, OmegaConvention::Standard)
}

pub fn h_basis_with(g: usize, k: usize, cap: usize, conv: OmegaConvention) -> Result<Arc<HSlice>> {
    if g == 0 || k == 0 {
        return Err(Error::Invalid("h_basis needs g >= 1 and k >= 1".into()));
    }
    let ctx = BasisContext::symplectic(g)?;
    let ambient = der_dim(2 * g, k);
    if ambient > cap {
        return Err(Error::ResourceCap { what: format!("h_{{{g},1}}({k})"), needed: ambient, cap });
    }
    if let Some(h) = h_cache().lock().unwrap().get(&(g, k, conv)) {
        return Ok(h.clone());
    }
    let m = omega_map_matrix(&ctx, k, conv)?;
    let space = kernel_basis(&m);
    let rank = ambient - space.dim();
    let h = Arc::new(HSlice { ctx, g, k, space, rank });
    Ok(h_cache().lock().unwrap().entry((g, k, conv)).or_insert(h).clone())
}

/// Predicted `dim h_{g,1}(k)` if the ω₀-map is onto.
pub fn h_dim_formula(g: usize, k: usize) -> usize {
    der_dim(2 * g, k) - witt_dim(2 * g, k + 2)
}

// ---------------------------------------------------------------------------
// τ₁: Λ³H ≅ h_{g,1}(1)
// ---------------------------------------------------------------------------

/// The isomorphism `Λ³H → h_{g,1}(1)`,
/// `u∧v∧w ↦ (x ↦ ω(x,u)[v,w] + ω(x,v)[w,u] + ω(x,w)[u,v])`.
#[derive(Clone, Debug)]
pub struct Tau1Iso {
    ctx: BasisContext,
    ext: Vec<u64>,
    images: Vec<SparseVec>,
    solver: SpanCoordinates,
}

pub fn tau1_iso(g: usize) -> Result<Tau1Iso> {
    if g < 2 {
        return Err(Error::Invalid("tau1_iso needs g >= 2".into()));
    }
    let ctx = BasisContext::symplectic(g)?;
    let n = ctx.n();
    let ext = ext_basis(n, 3);
    let images: Vec<SparseVec> = ext
        .iter()
        .map(|code| {
            let l = decode_word(n, 3, *code);
            wedge3_to_derivation(&ctx, l[0], l[1], l[2]).coords()
        })
        .collect();
    let solver = SpanCoordinates::new(der_dim(n, 1), &images)?;
    Ok(Tau1Iso { ctx, ext, images, solver })
}

fn wedge3_to_derivation(ctx: &BasisContext, u: u8, v: u8, w: u8) -> Derivation {
    let mut d = Derivation::zero(*ctx, 1);
    let br = |p: u8, q: u8| {
        LiePoly::generator(*ctx, p).bracket(&LiePoly::generator(*ctx, q)).unwrap()
    };
    for x in 0..ctx.n() as u8 {
        for (p, q, r) in [(u, v, w), (v, w, u), (w, u, v)] {
            let f = ctx.omega(x, p);
            if f != 0 {
                d.images[x as usize].add_scaled(&br(q, r), &Rational::from_int(f));
            }
        }
    }
    d
}

impl Tau1Iso {
    pub fn context(&self) -> BasisContext {
        self.ctx
    }

    pub fn forward(&self, e: &ExtPoly) -> Result<Derivation> {
        self.ctx.check_same(&e.context())?;
        if e.degree() != 3 {
            return Err(Error::DegreeMismatch { expected: 3, found: e.degree() });
        }
        let mut acc = Accumulator::new(der_dim(self.ctx.n(), 1));
        for (code, c) in e.terms() {
            let j = self.ext.binary_search(code).expect("canonical wedge");
            acc.add_scaled(&self.images[j], c);
        }
        Ok(Derivation::from_coords(self.ctx, 1, &acc.drain()))
    }

    /// `τ₁`: the inverse on `h_{g,1}(1)`.
    pub fn inverse(&self, d: &Derivation) -> Result<ExtPoly> {
        if d.degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: d.degree() });
        }
        let x = self
            .solver
            .solve(&d.coords())
            .ok_or_else(|| Error::NotInSubspace("derivation is not in h_{g,1}(1)".into()))?;
        let mut e = ExtPoly::zero(self.ctx, 3);
        for (code, c) in self.ext.iter().zip(x) {
            e.add_canonical(*code, c);
        }
        Ok(e)
    }

    pub fn image_subspace(&self) -> Subspace {
        Subspace::span(der_dim(self.ctx.n(), 1), self.images.clone())
    }
}

// ---------------------------------------------------------------------------
// commutator ideal
// ---------------------------------------------------------------------------

/// Span of `[E_a, E_b]` over basis derivations with `deg a + deg b = d`.
pub fn commutator_span(n: usize, d: usize) -> Result<Subspace> {
    if d < 2 {
        return Err(Error::Invalid("commutator_span needs d >= 2".into()));
    }
    let ctx = BasisContext::free(n)?;
    let basis_tensors = |k: usize| -> Vec<Vec<Option<TensorPoly>>> {
        (0..der_dim(n, k))
            .map(|i| Derivation::basis_element(ctx, k, i).tensor_images())
            .collect()
    };
    let mut vectors = Vec::new();
    for a in 1..=d / 2 {
        let b = d - a;
        let ta = basis_tensors(a);
        let tb = if a == b { ta.clone() } else { basis_tensors(b) };
        for (i, x) in ta.iter().enumerate() {
            let start = if a == b { i + 1 } else { 0 };
            for y in &tb[start..] {
                let br = bracket_from_tensors(ctx, (x, a), (y, b));
                if !br.is_zero() {
                    vectors.push(br.coords());
                }
            }
        }
    }
    Ok(Subspace::span(der_dim(n, d), vectors))
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivationJson {
    pub n: usize,
    #[serde(default)]
    pub symplectic: bool,
    pub degree: usize,
    pub images: std::collections::BTreeMap<String, LiePolyJson>,
}

impl Derivation {
    pub fn to_json(&self) -> DerivationJson {
        let images = self
            .images
            .iter()
            .enumerate()
            .filter(|(_, im)| !im.is_zero())
            .map(|(l, im)| (self.ctx.letter_name(l as u8), im.to_json()))
            .collect();
        DerivationJson {
            n: self.ctx.n(),
            symplectic: self.ctx.is_symplectic(),
            degree: self.degree,
            images,
        }
    }

    /// Generators missing from `images` map to zero.
    pub fn from_json(j: &DerivationJson) -> Result<Self> {
        let ctx = BasisContext::new(j.n, j.symplectic)?;
        let mut images: Vec<LiePoly> = (0..ctx.n()).map(|_| LiePoly::zero(ctx, j.degree + 1)).collect();
        for (name, pj) in &j.images {
            let l = ctx.parse_letter(name)?;
            images[l as usize] = LiePoly::from_json_in(ctx, pj)?;
        }
        Derivation::from_images(ctx, j.degree, images)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, im) in self.images.iter().enumerate() {
            if im.is_zero() {
                continue;
            }
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "{} ↦ {}", self.ctx.letter_name(l as u8), im)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Reads a coordinate of a sparse `Der(k)` vector.
pub fn der_coord(v: &SparseVec, j: usize) -> Rational {
    sparse_get(v, j as u32).cloned().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn gen(ctx: BasisContext, l: u8) -> LiePoly {
        LiePoly::generator(ctx, l)
    }

    #[test]
    fn ad_example() {
        let ctx = BasisContext::free(2).unwrap();
        let (x1, x2) = (gen(ctx, 0), gen(ctx, 1));
        let img = x1.bracket(&x1.bracket(&x2).unwrap()).unwrap();
        let d = Derivation::single(ctx, 1, img.clone()).unwrap();
        assert_eq!(d.apply(&x2).unwrap(), img);
        let x12 = x1.bracket(&x2).unwrap();
        assert_eq!(d.apply(&x12).unwrap(), x1.bracket(&img).unwrap());
        assert!(d.apply(&x12.bracket(&x12).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn omega_action_example() {
        let ctx = BasisContext::symplectic(1).unwrap();
        let (a, b) = (gen(ctx, 0), gen(ctx, 1));
        let img = a.bracket(&a.bracket(&b).unwrap()).unwrap();
        let d = Derivation::single(ctx, 0, img.clone()).unwrap();
        let w = omega_action(&d).unwrap();
        assert_eq!(w, img.bracket(&b).unwrap());
        assert!(!w.is_zero());
        assert!(omega_action(&Derivation::zero(ctx, 2)).unwrap().is_zero());
    }

    #[test]
    fn small_h_dimensions() {
        let h = h_basis(2, 1).unwrap();
        assert_eq!(h.dim(), 4);
        assert_eq!(h.omega_rank(), 20);
        assert_eq!(h_basis(2, 2).unwrap().dim(), 20);
        assert_eq!(h_basis(3, 1).unwrap().dim(), 20);
        for d in h.basis_derivations() {
            assert!(omega_action(&d).unwrap().is_zero());
        }
    }

    #[test]
    fn tau1_roundtrip() {
        for g in [2, 3] {
            let iso = tau1_iso(g).unwrap();
            let h = h_basis(g, 1).unwrap();
            assert_eq!(iso.image_subspace(), *h.subspace());
            let ctx = iso.context();
            for code in ext_basis(ctx.n(), 3) {
                let mut e = ExtPoly::zero(ctx, 3);
                e.add_canonical(code, q(1));
                let d = iso.forward(&e).unwrap();
                assert!(omega_action(&d).unwrap().is_zero());
                assert_eq!(iso.inverse(&d).unwrap(), e);
            }
        }
    }

    #[test]
    fn bracket_grading_and_antisymmetry() {
        let ctx = BasisContext::free(3).unwrap();
        let d1 = Derivation::basis_element(ctx, 1, 2);
        let d2 = Derivation::basis_element(ctx, 1, 7);
        let b = bracket_der(&d1, &d2).unwrap();
        assert_eq!(b.degree(), 2);
        let c = bracket_der(&d2, &d1).unwrap();
        assert_eq!(b, c.scaled(&q(-1)));
        assert!(bracket_der(&d1, &d1).unwrap().is_zero());
    }

    #[test]
    fn json_roundtrip() {
        let ctx = BasisContext::symplectic(2).unwrap();
        let h = h_basis(2, 2).unwrap();
        let d = h.basis_derivation(3);
        let s = serde_json::to_string(&d.to_json()).unwrap();
        assert!(s.contains("\"images\""));
        let back = Derivation::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.context(), ctx);
    }
}
