//! Free-group words, truncated Magnus expansions, lower central series
//! depth, the Andreadakis filtration and Johnson homomorphisms.
//!
//! The lower central series is indexed so that `Γ_1 = [Γ, Γ]`: a word lies
//! in `Γ_k` iff its Magnus expansion minus one starts in degree `k+1`.
//! Group commutators are `[x, y] = x y x⁻¹ y⁻¹`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::free_lie::{project_to_lie, LiePoly};
use crate::rational::Rational;
use crate::tensor::{BasisContext, TensorPoly};

/// Freely reduced word; letter `+(l+1)` is generator `l`, `-(l+1)` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord {
    ctx: BasisContext,
    letters: Vec<i8>,
}

impl GroupWord {
    pub fn identity(ctx: BasisContext) -> Self {
        GroupWord { ctx, letters: Vec::new() }
    }

    pub fn generator(ctx: BasisContext, l: u8) -> Self {
        GroupWord { ctx, letters: vec![l as i8 + 1] }
    }

    /// Builds and freely reduces a word from signed 1-based letters.
    pub fn from_letters(ctx: BasisContext, letters: &[i8]) -> Result<Self> {
        let mut w = Self::identity(ctx);
        for &x in letters {
            if x == 0 || x.unsigned_abs() as usize > ctx.n() {
                return Err(Error::Invalid(format!("letter {x} out of range")));
            }
            w.push(x);
        }
        Ok(w)
    }

    fn push(&mut self, x: i8) {
        if self.letters.last() == Some(&-x) {
            self.letters.pop();
        } else {
            self.letters.push(x);
        }
    }

    pub fn context(&self) -> BasisContext {
        self.ctx
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for &x in &other.letters {
            w.push(x);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { ctx: self.ctx, letters: self.letters.iter().rev().map(|x| -x).collect() }
    }

    /// `x y x⁻¹ y⁻¹`.
    pub fn commutator(&self, other: &GroupWord) -> GroupWord {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    pub fn pow(&self, e: i32) -> GroupWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = GroupWord::identity(self.ctx);
        for _ in 0..e.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// The boundary word `γ = [a_1, b_1] ⋯ [a_g, b_g]`.
    pub fn boundary(ctx: BasisContext) -> Result<Self> {
        let g = ctx.require_symplectic()?;
        let mut w = GroupWord::identity(ctx);
        for i in 0..g {
            let a = GroupWord::generator(ctx, 2 * i as u8);
            let b = GroupWord::generator(ctx, 2 * i as u8 + 1);
            w = w.mul(&a.commutator(&b));
        }
        Ok(w)
    }

    /// Parses dotted letters, capitals meaning inverses: `x2.x1.X2`.
    /// The empty string and `1` denote the identity.
    pub fn parse(ctx: BasisContext, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Self::identity(ctx));
        }
        let mut w = Self::identity(ctx);
        for tok in s.split('.') {
            let tok = tok.trim();
            let inverse = tok.chars().next().is_some_and(|c| c.is_ascii_uppercase());
            let l = ctx.parse_letter(&tok.to_ascii_lowercase())?;
            w.push(if inverse { -(l as i8 + 1) } else { l as i8 + 1 });
        }
        Ok(w)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&x| {
                let name = self.ctx.letter_name(x.unsigned_abs() - 1);
                if x < 0 {
                    name.to_ascii_uppercase()
                } else {
                    name
                }
            })
            .collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Endomorphism of the free group given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    ctx: BasisContext,
    images: Vec<GroupWord>,
}

impl Endomorphism {
    pub fn identity(ctx: BasisContext) -> Self {
        Endomorphism { ctx, images: (0..ctx.n() as u8).map(|l| GroupWord::generator(ctx, l)).collect() }
    }

    pub fn from_images(ctx: BasisContext, images: Vec<GroupWord>) -> Result<Self> {
        if images.len() != ctx.n() {
            return Err(Error::DimensionMismatch { expected: ctx.n(), found: images.len() });
        }
        for w in &images {
            w.ctx.check_same(&ctx)?;
        }
        Ok(Endomorphism { ctx, images })
    }

    /// Identity except on the listed generators.
    pub fn with_images(ctx: BasisContext, changes: &[(u8, GroupWord)]) -> Result<Self> {
        let mut e = Self::identity(ctx);
        for (l, w) in changes {
            w.ctx.check_same(&ctx)?;
            e.images[*l as usize] = w.clone();
        }
        Ok(e)
    }

    pub fn context(&self) -> BasisContext {
        self.ctx
    }

    pub fn image(&self, l: u8) -> &GroupWord {
        &self.images[l as usize]
    }

    pub fn apply(&self, w: &GroupWord) -> GroupWord {
        let mut out = GroupWord::identity(self.ctx);
        for &x in &w.letters {
            let img = &self.images[x.unsigned_abs() as usize - 1];
            if x > 0 {
                out = out.mul(img);
            } else {
                out = out.mul(&img.inverse());
            }
        }
        out
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism { ctx: self.ctx, images: other.images.iter().map(|w| self.apply(w)).collect() }
    }

    /// Integer matrix of the induced map on `H` (column `j` = image of `x_j`).
    pub fn abelianization(&self) -> Vec<Vec<i64>> {
        let n = self.ctx.n();
        let mut m = vec![vec![0i64; n]; n];
        for (j, w) in self.images.iter().enumerate() {
            for &x in &w.letters {
                m[x.unsigned_abs() as usize - 1][j] += x.signum() as i64;
            }
        }
        m
    }

    /// Whether the induced map on `H` lies in `GL(n, Z)`, which makes `φ` an
    /// automorphism of every nilpotent quotient.
    pub fn is_invertible_on_quotients(&self) -> bool {
        let m = self.abelianization();
        let rows: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&v| Rational::from_int(v)).collect()).collect();
        let det = determinant(rows);
        det == Rational::ONE || det == Rational::from_int(-1)
    }
}

fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::ONE;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::ZERO;
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].recip();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for j in c..n {
                let v = &a[c][j] * &f;
                a[r][j] -= &v;
            }
        }
    }
    det
}

// ---------------------------------------------------------------------------
// Magnus expansion
// ---------------------------------------------------------------------------

/// Truncated Magnus expansion: components of degree `0..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnusSeries {
    ctx: BasisContext,
    components: Vec<TensorPoly>,
}

impl MagnusSeries {
    pub fn one(ctx: BasisContext, m: usize) -> Self {
        let mut components: Vec<TensorPoly> = (0..=m).map(|k| TensorPoly::zero(ctx, k)).collect();
        components[0] = TensorPoly::one(ctx);
        MagnusSeries { ctx, components }
    }

    pub fn truncation(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, k: usize) -> &TensorPoly {
        &self.components[k]
    }

    pub fn mul(&self, other: &MagnusSeries) -> MagnusSeries {
        let m = self.truncation().min(other.truncation());
        let mut out = MagnusSeries::one(self.ctx, m);
        out.components[0] = TensorPoly::zero(self.ctx, 0);
        for i in 0..=m {
            for j in 0..=m - i {
                let p = self.components[i].concat(&other.components[j]);
                out.components[i + j].add_scaled(&p, &Rational::ONE);
            }
        }
        out
    }

    /// Right multiplication by the series of a single signed letter.
    fn mul_letter(&mut self, x: i8) {
        let m = self.truncation();
        let l = x.unsigned_abs() - 1;
        let letter = TensorPoly::letter(self.ctx, l);
        // x ↦ 1 + X ; x⁻¹ ↦ Σ_j (−X)^j
        for k in (1..=m).rev() {
            let mut add = TensorPoly::zero(self.ctx, k);
            if x > 0 {
                add.add_scaled(&self.components[k - 1].concat(&letter), &Rational::ONE);
            } else {
                let mut pow = letter.clone();
                for j in 1..=k {
                    let sign = if j % 2 == 0 { Rational::ONE } else { Rational::from_int(-1) };
                    add.add_scaled(&self.components[k - j].concat(&pow), &sign);
                    if j < k {
                        pow = pow.concat(&letter);
                    }
                }
            }
            self.components[k].add_scaled(&add, &Rational::ONE);
        }
    }
}

pub fn magnus(w: &GroupWord, m: usize) -> MagnusSeries {
    let mut s = MagnusSeries::one(w.ctx, m);
    for &x in &w.letters {
        s.mul_letter(x);
    }
    s
}

/// Lower-central-series depth with its Lie certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LcsDepth {
    /// `w ∈ Γ_k \ Γ_{k+1}`; the certificate is the degree-`k+1` Magnus
    /// component as a Lie element.
    Exact { k: usize, certificate: LiePoly },
    /// No nonzero component up to degree `m_max + 1`.
    AtLeast(usize),
}

impl LcsDepth {
    pub fn value(&self) -> usize {
        match self {
            LcsDepth::Exact { k, .. } => *k,
            LcsDepth::AtLeast(m) => *m,
        }
    }
}

pub fn lcs_depth(w: &GroupWord, m_max: usize) -> Result<LcsDepth> {
    let s = magnus(w, m_max + 1);
    for j in 1..=m_max + 1 {
        let c = s.component(j);
        if !c.is_zero() {
            let certificate = project_to_lie(c).map_err(|_| {
                Error::Invalid("leading Magnus component failed the Lie test".into())
            })?;
            return Ok(LcsDepth::Exact { k: j - 1, certificate });
        }
    }
    Ok(LcsDepth::AtLeast(m_max))
}

/// Level in the Andreadakis filtration, saturated at `k_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationLevel {
    pub level: usize,
    pub saturated: bool,
    /// The abelianization lies in `GL(n, Z)`.
    pub invertible: bool,
}

pub fn filtration_level(phi: &Endomorphism, k_max: usize) -> Result<FiltrationLevel> {
    let mut level = k_max;
    let mut saturated = true;
    for l in 0..phi.ctx.n() as u8 {
        let x = GroupWord::generator(phi.ctx, l);
        let defect = phi.apply(&x).mul(&x.inverse());
        if let LcsDepth::Exact { k, .. } = lcs_depth(&defect, k_max)? {
            if k <= level {
                saturated = saturated && k >= k_max;
                level = k;
            }
        }
    }
    if level < k_max {
        saturated = false;
    }
    Ok(FiltrationLevel { level, saturated, invertible: phi.is_invertible_on_quotients() })
}

/// `τ_k(φ)`: `x_i ↦` class of `φ(x_i) x_i⁻¹` in `L(k+1)`.
pub fn johnson_tau(phi: &Endomorphism, k: usize) -> Result<Derivation> {
    if k == 0 {
        return Err(Error::Invalid("Johnson homomorphisms start at k = 1".into()));
    }
    let ctx = phi.ctx;
    let mut images = Vec::with_capacity(ctx.n());
    for l in 0..ctx.n() as u8 {
        let x = GroupWord::generator(ctx, l);
        let defect = phi.apply(&x).mul(&x.inverse());
        let s = magnus(&defect, k + 1);
        if (1..=k).any(|j| !s.component(j).is_zero()) {
            return Err(Error::Precondition(format!("filtration level is below {k}")));
        }
        let img = project_to_lie(s.component(k + 1))
            .map_err(|_| Error::Invalid("Magnus component is not a Lie element".into()))?;
        images.push(img);
    }
    Derivation::from_images(ctx, k, images)
}

/// Whether `φ(γ) γ⁻¹ ∈ Γ_{k+1}`.
pub fn fixes_boundary(phi: &Endomorphism, k: usize) -> Result<bool> {
    let gamma = GroupWord::boundary(phi.ctx)?;
    let defect = phi.apply(&gamma).mul(&gamma.inverse());
    let s = magnus(&defect, k + 1);
    Ok((1..=k + 1).all(|j| s.component(j).is_zero()))
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EndomorphismJson {
    pub n: usize,
    #[serde(default)]
    pub symplectic: bool,
    pub images: BTreeMap<String, String>,
}

impl Endomorphism {
    pub fn to_json(&self) -> EndomorphismJson {
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(l, w)| (self.ctx.letter_name(l as u8), w.to_string()))
            .collect();
        EndomorphismJson { n: self.ctx.n(), symplectic: self.ctx.is_symplectic(), images }
    }

    /// Generators missing from `images` are fixed.
    pub fn from_json(j: &EndomorphismJson) -> Result<Self> {
        let ctx = BasisContext::new(j.n, j.symplectic)?;
        let mut e = Endomorphism::identity(ctx);
        for (name, w) in &j.images {
            let l = ctx.parse_letter(name)?;
            e.images[l as usize] = GroupWord::parse(ctx, w)?;
        }
        Ok(e)
    }
}
