//! The space `H = Q^n` with a distinguished basis, its tensor, symmetric and
//! exterior powers, and the symplectic form.
//!
//! Basis words of length `k` are packed into a `u64` as base-`n` digits with
//! the first letter most significant, so numeric order is lexicographic order
//! for words of equal length.

use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Rank and labelling of the generators. In the symplectic case `n = 2g` and
/// letter `2i` is `a_{i+1}`, letter `2i+1` is `b_{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisContext {
    n: u8,
    symplectic: bool,
}

pub const MAX_RANK: usize = 16;

impl BasisContext {
    pub fn new(n: usize, symplectic: bool) -> Result<Self> {
        if !(2..=MAX_RANK).contains(&n) {
            return Err(Error::Invalid(format!("rank must be in 2..={MAX_RANK}, got {n}")));
        }
        if symplectic && !n.is_multiple_of(2) {
            return Err(Error::Invalid(format!("symplectic rank must be even, got {n}")));
        }
        Ok(BasisContext { n: n as u8, symplectic })
    }

    pub fn free(n: usize) -> Result<Self> {
        Self::new(n, false)
    }

    pub fn symplectic(g: usize) -> Result<Self> {
        Self::new(2 * g, true)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn is_symplectic(&self) -> bool {
        self.symplectic
    }

    pub fn genus(&self) -> Option<usize> {
        self.symplectic.then(|| self.n() / 2)
    }

    pub fn require_symplectic(&self) -> Result<usize> {
        self.genus().ok_or(Error::NotSymplectic)
    }

    pub fn letter_name(&self, i: u8) -> String {
        if self.symplectic {
            let kind = if i.is_multiple_of(2) { 'a' } else { 'b' };
            format!("{kind}{}", i / 2 + 1)
        } else {
            format!("x{}", i + 1)
        }
    }

    /// Parses `x3`, or `a2`/`b2` in a symplectic context. `x`-names are
    /// accepted in both cases and refer to positions.
    pub fn parse_letter(&self, s: &str) -> Result<u8> {
        let bad = || Error::Parse(format!("unknown generator {s:?}"));
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let idx: usize = tail.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        let letter = match head {
            "x" => idx - 1,
            "a" if self.symplectic => 2 * (idx - 1),
            "b" if self.symplectic => 2 * (idx - 1) + 1,
            _ => return Err(bad()),
        };
        if letter >= self.n() {
            return Err(bad());
        }
        Ok(letter as u8)
    }

    /// The symplectic form on basis letters: `ω(a_i, b_i) = 1 = -ω(b_i, a_i)`.
    #[inline]
    pub fn omega(&self, i: u8, j: u8) -> i64 {
        debug_assert!(self.symplectic);
        if i / 2 != j / 2 || i == j {
            0
        } else if i.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The unique letter pairing nontrivially with `i`.
    #[inline]
    pub fn partner(&self, i: u8) -> u8 {
        i ^ 1
    }

    pub fn check_same(&self, other: &BasisContext) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// `n^k`, or an error if the packed code would overflow.
    pub fn word_count(&self, k: usize) -> Result<u64> {
        (self.n() as u64)
            .checked_pow(k as u32)
            .ok_or_else(|| Error::Invalid(format!("words of length {k} do not fit the packed code")))
    }
}

// ---------------------------------------------------------------------------
// packed words
// ---------------------------------------------------------------------------

pub fn encode_word(n: usize, letters: &[u8]) -> u64 {
    letters.iter().fold(0u64, |acc, &l| acc * n as u64 + l as u64)
}

pub fn decode_word(n: usize, k: usize, mut code: u64) -> Vec<u8> {
    let mut out = vec![0u8; k];
    for slot in out.iter_mut().rev() {
        *slot = (code % n as u64) as u8;
        code /= n as u64;
    }
    out
}

#[inline]
pub fn pow_n(n: usize, k: usize) -> u64 {
    (n as u64).pow(k as u32)
}

/// Sort the letters of a word (multiset canonical form).
pub fn sorted_code(n: usize, k: usize, code: u64) -> u64 {
    let mut w = decode_word(n, k, code);
    w.sort_unstable();
    encode_word(n, &w)
}

/// Canonical form of a wedge of letters: strictly increasing code and sign,
/// or `None` if a letter repeats.
pub fn wedge_normalize(n: usize, letters: &[u8]) -> Option<(u64, i64)> {
    let mut w = letters.to_vec();
    let mut sign = 1i64;
    // insertion sort counting transpositions
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            w.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((encode_word(n, &w), sign))
}

fn format_word(ctx: &BasisContext, k: usize, code: u64) -> String {
    decode_word(ctx.n(), k, code)
        .iter()
        .map(|&l| ctx.letter_name(l))
        .collect::<Vec<_>>()
        .join(".")
}

fn parse_word(ctx: &BasisContext, s: &str) -> Result<Vec<u8>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split('.').map(|t| ctx.parse_letter(t.trim())).collect()
}

// ---------------------------------------------------------------------------
// TensorPoly
// ---------------------------------------------------------------------------

/// Homogeneous element of `H^{⊗k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly {
    ctx: BasisContext,
    degree: usize,
    terms: FxHashMap<u64, Rational>,
}

impl TensorPoly {
    pub fn zero(ctx: BasisContext, degree: usize) -> Self {
        TensorPoly { ctx, degree, terms: FxHashMap::default() }
    }

    /// Degree-0 unit.
    pub fn one(ctx: BasisContext) -> Self {
        let mut t = Self::zero(ctx, 0);
        t.terms.insert(0, Rational::ONE);
        t
    }

    pub fn letter(ctx: BasisContext, l: u8) -> Self {
        Self::word(ctx, &[l], Rational::ONE)
    }

    pub fn word(ctx: BasisContext, letters: &[u8], coeff: Rational) -> Self {
        let mut t = Self::zero(ctx, letters.len());
        t.add_term(encode_word(ctx.n(), letters), coeff);
        t
    }

    pub fn from_terms(
        ctx: BasisContext,
        degree: usize,
        terms: impl IntoIterator<Item = (u64, Rational)>,
    ) -> Self {
        let mut t = Self::zero(ctx, degree);
        for (w, c) in terms {
            t.add_term(w, c);
        }
        t
    }

    pub fn context(&self) -> BasisContext {
        self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, code: u64) -> Rational {
        self.terms.get(&code).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &Rational)> {
        self.terms.iter()
    }

    /// Terms in lexicographic word order.
    pub fn sorted_terms(&self) -> Vec<(u64, Rational)> {
        let mut v: Vec<(u64, Rational)> =
            self.terms.iter().map(|(w, c)| (*w, c.clone())).collect();
        v.sort_unstable_by_key(|(w, _)| *w);
        v
    }

    #[inline]
    pub fn add_term(&mut self, code: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(code) {
            Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v += &c;
                if v.is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorPoly, s: &Rational) {
        debug_assert_eq!(self.degree, other.degree);
        if s.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(*w, c * s);
        }
    }

    pub fn scaled(&self, s: &Rational) -> TensorPoly {
        let mut t = Self::zero(self.ctx, self.degree);
        t.add_scaled(self, s);
        t
    }

    pub fn plus(&self, other: &TensorPoly) -> Result<TensorPoly> {
        self.ctx.check_same(&other.ctx)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut t = self.clone();
        t.add_scaled(other, &Rational::ONE);
        Ok(t)
    }

    pub fn minus(&self, other: &TensorPoly) -> Result<TensorPoly> {
        self.plus(&other.scaled(&Rational::from_int(-1)))
    }

    /// Tensor (concatenation) product.
    pub fn concat(&self, other: &TensorPoly) -> TensorPoly {
        let shift = pow_n(self.ctx.n(), other.degree);
        let mut t = Self::zero(self.ctx, self.degree + other.degree);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                t.add_term(w1 * shift + w2, c1 * c2);
            }
        }
        t
    }

    /// `self ⊗ other − other ⊗ self`.
    pub fn commutator(&self, other: &TensorPoly) -> TensorPoly {
        let mut t = self.concat(other);
        t.add_scaled(&other.concat(self), &Rational::from_int(-1));
        t
    }

    /// Applies the derivation of the tensor algebra determined by the images
    /// of the letters. `images[l]` must all share one degree.
    pub fn apply_letter_derivation(&self, images: &[Option<TensorPoly>]) -> Option<TensorPoly> {
        let n = self.ctx.n();
        let k = self.degree;
        let img_deg = images.iter().flatten().map(|t| t.degree).next()?;
        let mut out = Self::zero(self.ctx, k - 1 + img_deg);
        let shift_img = pow_n(n, img_deg);
        for (w, c) in &self.terms {
            let letters = decode_word(n, k, *w);
            for p in 0..k {
                let Some(img) = &images[letters[p] as usize] else { continue };
                let prefix = encode_word(n, &letters[..p]);
                let suffix = encode_word(n, &letters[p + 1..]);
                let suffix_shift = pow_n(n, k - p - 1);
                for (iw, ic) in &img.terms {
                    let code = (prefix * shift_img + iw) * suffix_shift + suffix;
                    out.add_term(code, c * ic);
                }
            }
        }
        Some(out)
    }

    /// Applies a linear map of `H` as a derivation (Leibniz rule).
    pub fn apply_linear_derivation(&self, op: &LinearOp) -> TensorPoly {
        let images: Vec<Option<TensorPoly>> = (0..self.ctx.n() as u8)
            .map(|j| {
                let t = op.image_of(self.ctx, j);
                (!t.is_zero()).then_some(t)
            })
            .collect();
        if self.degree == 0 || images.iter().all(Option::is_none) {
            return Self::zero(self.ctx, self.degree);
        }
        self.apply_letter_derivation(&images).expect("some image is nonzero")
    }

    /// Applies a linear map of `H` diagonally (`u⊗v ↦ Xu⊗Xv`).
    pub fn apply_linear_group(&self, op: &LinearOp) -> TensorPoly {
        let n = self.ctx.n();
        let mut out = Self::zero(self.ctx, self.degree);
        for (w, c) in &self.terms {
            let letters = decode_word(n, self.degree, *w);
            let mut partial: Vec<(u64, Rational)> = vec![(0, c.clone())];
            for &l in &letters {
                let mut next = Vec::new();
                for (code, v) in &partial {
                    for i in 0..n {
                        let x = op.entry(i, l as usize);
                        if !x.is_zero() {
                            next.push((code * n as u64 + i as u64, v * x));
                        }
                    }
                }
                partial = next;
            }
            for (code, v) in partial {
                out.add_term(code, v);
            }
        }
        out
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(String, Rational)> = self
            .sorted_terms()
            .into_iter()
            .map(|(w, c)| {
                let s = decode_word(self.ctx.n(), self.degree, w)
                    .iter()
                    .map(|&l| self.ctx.letter_name(l))
                    .collect::<Vec<_>>()
                    .join("⊗");
                (s, c)
            })
            .collect();
        write_linear_combination(f, &parts)
    }
}

pub(crate) fn write_linear_combination(
    f: &mut fmt::Formatter<'_>,
    parts: &[(String, Rational)],
) -> fmt::Result {
    if parts.is_empty() {
        return write!(f, "0");
    }
    for (i, (basis, c)) in parts.iter().enumerate() {
        let neg = c.signum() < 0;
        let mag = c.abs();
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        if basis.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{basis}")?;
        } else {
            write!(f, "{mag}*{basis}")?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Symmetric and exterior powers
// ---------------------------------------------------------------------------

/// Homogeneous element of `S^k H`; keys are codes of non-decreasing words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    ctx: BasisContext,
    degree: usize,
    terms: BTreeMap<u64, Rational>,
}

/// Homogeneous element of `Λ^k H`; keys are codes of strictly increasing words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtPoly {
    ctx: BasisContext,
    degree: usize,
    terms: BTreeMap<u64, Rational>,
}

macro_rules! common_poly_impl {
    ($t:ident) => {
        impl $t {
            pub fn zero(ctx: BasisContext, degree: usize) -> Self {
                $t { ctx, degree, terms: BTreeMap::new() }
            }

            pub fn context(&self) -> BasisContext {
                self.ctx
            }

            pub fn degree(&self) -> usize {
                self.degree
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn len(&self) -> usize {
                self.terms.len()
            }

            pub fn is_empty(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn terms(&self) -> impl Iterator<Item = (&u64, &Rational)> {
                self.terms.iter()
            }

            pub fn coeff(&self, code: u64) -> Rational {
                self.terms.get(&code).cloned().unwrap_or_default()
            }

            /// Adds `c` to a canonical key.
            pub fn add_canonical(&mut self, code: u64, c: Rational) {
                if c.is_zero() {
                    return;
                }
                let e = self.terms.entry(code).or_default();
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&code);
                }
            }

            pub fn add_scaled(&mut self, other: &$t, s: &Rational) {
                for (w, c) in &other.terms {
                    self.add_canonical(*w, c * s);
                }
            }

            pub fn scaled(&self, s: &Rational) -> Self {
                let mut t = Self::zero(self.ctx, self.degree);
                t.add_scaled(self, s);
                t
            }

            pub fn plus(&self, other: &$t) -> Result<$t> {
                self.ctx.check_same(&other.ctx)?;
                if self.degree != other.degree {
                    return Err(Error::DegreeMismatch {
                        expected: self.degree,
                        found: other.degree,
                    });
                }
                let mut t = self.clone();
                t.add_scaled(other, &Rational::ONE);
                Ok(t)
            }
        }
    };
}

common_poly_impl!(SymPoly);
common_poly_impl!(ExtPoly);

impl SymPoly {
    /// Monomial from letters in any order.
    pub fn monomial(ctx: BasisContext, letters: &[u8], coeff: Rational) -> Self {
        let mut w = letters.to_vec();
        w.sort_unstable();
        let mut s = Self::zero(ctx, letters.len());
        s.add_canonical(encode_word(ctx.n(), &w), coeff);
        s
    }

    /// Letters of a monomial key, non-decreasing.
    pub fn letters(&self, code: u64) -> Vec<u8> {
        decode_word(self.ctx.n(), self.degree, code)
    }

    /// Symmetrization: each monomial becomes the sum of its word over all
    /// `m!` orderings, so distinct arrangements carry `Π mult!`. This is the
    /// equivariant section of abelianization up to the factor `m!`.
    pub fn to_tensor(&self) -> TensorPoly {
        let n = self.ctx.n();
        let mut t = TensorPoly::zero(self.ctx, self.degree);
        for (code, c) in &self.terms {
            let mut w = decode_word(n, self.degree, *code);
            let mut weight = Rational::ONE;
            let mut run = 0;
            for i in 0..w.len() {
                run = if i > 0 && w[i] == w[i - 1] { run + 1 } else { 1 };
                weight = &weight * &Rational::from_int(run);
            }
            let c = c * &weight;
            loop {
                t.add_term(encode_word(n, &w), c.clone());
                if !next_permutation(&mut w) {
                    break;
                }
            }
        }
        t
    }
}

impl ExtPoly {
    /// `e_{l1} ∧ … ∧ e_{lk}` with sign normalization (zero on repeats).
    pub fn wedge_of_letters(ctx: BasisContext, letters: &[u8], coeff: Rational) -> Self {
        let mut e = Self::zero(ctx, letters.len());
        if let Some((code, sign)) = wedge_normalize(ctx.n(), letters) {
            e.add_canonical(code, &coeff * &Rational::from_int(sign));
        }
        e
    }

    pub fn letters(&self, code: u64) -> Vec<u8> {
        decode_word(self.ctx.n(), self.degree, code)
    }

    pub fn wedge(&self, other: &ExtPoly) -> ExtPoly {
        let n = self.ctx.n();
        let mut out = Self::zero(self.ctx, self.degree + other.degree);
        for (w1, c1) in &self.terms {
            let l1 = decode_word(n, self.degree, *w1);
            for (w2, c2) in &other.terms {
                let mut l = l1.clone();
                l.extend(decode_word(n, other.degree, *w2));
                if let Some((code, sign)) = wedge_normalize(n, &l) {
                    out.add_canonical(code, &(c1 * c2) * &Rational::from_int(sign));
                }
            }
        }
        out
    }

    /// Antisymmetric tensor `Σ_σ sgn(σ) e_{σ(1)} ⊗ …`.
    pub fn to_tensor(&self) -> TensorPoly {
        let n = self.ctx.n();
        let mut t = TensorPoly::zero(self.ctx, self.degree);
        for (code, c) in &self.terms {
            let mut w = decode_word(n, self.degree, *code);
            // w is strictly increasing; walk permutations tracking parity
            loop {
                let (_, sign) = wedge_normalize(n, &w).expect("distinct letters");
                t.add_term(encode_word(n, &w), c * &Rational::from_int(sign));
                if !next_permutation(&mut w) {
                    break;
                }
            }
        }
        t
    }

    /// Projection of an antisymmetric tensor back to `Λ^k` (reads the sorted
    /// words, so it inverts [`ExtPoly::to_tensor`]).
    pub fn from_antisymmetric_tensor(t: &TensorPoly) -> ExtPoly {
        let n = t.context().n();
        let mut e = Self::zero(t.context(), t.degree());
        for (w, c) in t.terms() {
            let letters = decode_word(n, t.degree(), *w);
            if letters.windows(2).all(|p| p[0] < p[1]) {
                e.add_canonical(*w, c.clone());
            }
        }
        e
    }
}

/// Lexicographic next permutation; `false` when `w` was the last one.
pub fn next_permutation(w: &mut [u8]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

fn write_monomial(ctx: &BasisContext, letters: &[u8]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let name = ctx.letter_name(letters[i]);
        if j - i == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join("*")
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(String, Rational)> = self
            .terms
            .iter()
            .map(|(w, c)| (write_monomial(&self.ctx, &self.letters(*w)), c.clone()))
            .collect();
        write_linear_combination(f, &parts)
    }
}

impl fmt::Display for ExtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(String, Rational)> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let s = self
                    .letters(*w)
                    .iter()
                    .map(|&l| self.ctx.letter_name(l))
                    .collect::<Vec<_>>()
                    .join("∧");
                (s, c.clone())
            })
            .collect();
        write_linear_combination(f, &parts)
    }
}

/// `Σ_k S^k`-projection `H^{⊗k} → S^k H`: each word goes to its sorted multiset.
pub fn abelianize(t: &TensorPoly) -> SymPoly {
    let n = t.context().n();
    let mut s = SymPoly::zero(t.context(), t.degree());
    for (w, c) in t.terms() {
        s.add_canonical(sorted_code(n, t.degree(), *w), c.clone());
    }
    s
}

/// Number of non-decreasing words of length `k` on `n` letters.
pub fn sym_dim(n: usize, k: usize) -> usize {
    binomial(n + k - 1, k)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Non-decreasing words of length `k`, lexicographic.
pub fn sym_basis(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut w = vec![0u8; k];
    fn rec(n: usize, pos: usize, min: u8, w: &mut Vec<u8>, out: &mut Vec<u64>) {
        if pos == w.len() {
            out.push(encode_word(n, w));
            return;
        }
        for l in min..n as u8 {
            w[pos] = l;
            rec(n, pos + 1, l, w, out);
        }
    }
    rec(n, 0, 0, &mut w, &mut out);
    out
}

/// Strictly increasing words of length `k`, lexicographic.
pub fn ext_basis(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut w = vec![0u8; k];
    fn rec(n: usize, pos: usize, min: u8, w: &mut Vec<u8>, out: &mut Vec<u64>) {
        if pos == w.len() {
            out.push(encode_word(n, w));
            return;
        }
        for l in min..n as u8 {
            w[pos] = l;
            rec(n, pos + 1, l + 1, w, out);
        }
    }
    rec(n, 0, 0, &mut w, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Linear operators on H, the symplectic form, sp(2g)
// ---------------------------------------------------------------------------

/// Linear endomorphism of `H`: `X e_j = Σ_i entry(i, j) e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOp {
    n: usize,
    m: Vec<Rational>,
}

impl LinearOp {
    pub fn zero(n: usize) -> Self {
        LinearOp { n, m: vec![Rational::ZERO; n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut m = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                m.push(f(i, j));
            }
        }
        LinearOp { n, m }
    }

    /// Elementary matrix unit `E_{ij}` (sends `e_j` to `e_i`).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        Self::from_fn(n, |a, b| if a == i && b == j { Rational::ONE } else { Rational::ZERO })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.m[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(Rational::is_zero)
    }

    /// `X e_j` as a degree-1 tensor.
    pub fn image_of(&self, ctx: BasisContext, j: u8) -> TensorPoly {
        let mut t = TensorPoly::zero(ctx, 1);
        for i in 0..self.n {
            t.add_term(i as u64, self.entry(i, j as usize).clone());
        }
        t
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn compose(&self, other: &LinearOp) -> LinearOp {
        let n = self.n;
        LinearOp::from_fn(n, |i, j| (0..n).map(|k| self.entry(i, k) * other.entry(k, j)).sum())
    }

    pub fn bracket(&self, other: &LinearOp) -> LinearOp {
        let a = self.compose(other);
        let b = other.compose(self);
        LinearOp::from_fn(self.n, |i, j| a.entry(i, j) - b.entry(i, j))
    }
}

/// Symplectic pairing of two vectors of `H`.
pub fn omega_pairing(ctx: &BasisContext, u: &[Rational], v: &[Rational]) -> Result<Rational> {
    ctx.require_symplectic()?;
    if u.len() != ctx.n() || v.len() != ctx.n() {
        return Err(Error::DimensionMismatch { expected: ctx.n(), found: u.len().max(v.len()) });
    }
    let mut acc = Rational::ZERO;
    for i in 0..ctx.n() {
        let j = ctx.partner(i as u8) as usize;
        let w = ctx.omega(i as u8, j as u8);
        acc += &(&(&u[i] * &v[j]) * &Rational::from_int(w));
    }
    Ok(acc)
}

/// Basis of `sp(2g, Q)`: `X = -Ω S` for `S` running over the symmetric matrix
/// units `E_ii` and `E_ij + E_ji` (`i < j`), where `Ω_{ij} = ω(e_i, e_j)`.
pub fn sp_generators(ctx: &BasisContext) -> Result<Vec<LinearOp>> {
    ctx.require_symplectic()?;
    let n = ctx.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let s = |a: usize, b: usize| -> i64 {
                ((a == i && b == j) || (a == j && b == i)) as i64
            };
            let x = LinearOp::from_fn(n, |a, b| {
                let mut acc = 0i64;
                for k in 0..n {
                    acc -= ctx.omega(a as u8, k as u8) * s(k, b);
                }
                Rational::from_int(acc)
            });
            out.push(x);
        }
    }
    Ok(out)
}

/// Elementary units `E_ij` spanning `gl(n)`.
pub fn gl_generators(n: usize) -> Vec<LinearOp> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(LinearOp::unit(n, i, j));
        }
    }
    out
}

/// `ω₀ = Σ a_i ∧ b_i`.
pub fn omega0_ext(ctx: &BasisContext) -> Result<ExtPoly> {
    let g = ctx.require_symplectic()?;
    let mut e = ExtPoly::zero(*ctx, 2);
    for i in 0..g {
        e.add_scaled(
            &ExtPoly::wedge_of_letters(*ctx, &[2 * i as u8, 2 * i as u8 + 1], Rational::ONE),
            &Rational::ONE,
        );
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// U ⊂ Λ³H and the higher intersection pairings
// ---------------------------------------------------------------------------

/// Contraction `Λ³H → H`, `u∧v∧w ↦ ω(u,v)w + ω(v,w)u + ω(w,u)v`, as a vector.
pub fn contraction3(t: &ExtPoly) -> Result<Vec<Rational>> {
    let ctx = t.context();
    ctx.require_symplectic()?;
    if t.degree() != 3 {
        return Err(Error::DegreeMismatch { expected: 3, found: t.degree() });
    }
    let mut out = vec![Rational::ZERO; ctx.n()];
    for (w, c) in t.terms() {
        let l = t.letters(*w);
        let (u, v, x) = (l[0], l[1], l[2]);
        for (p, q, r) in [(u, v, x), (v, x, u), (x, u, v)] {
            let f = ctx.omega(p, q);
            if f != 0 {
                out[r as usize] += &(c * &Rational::from_int(f));
            }
        }
    }
    Ok(out)
}

/// The subspace `U = ker(Λ³H → H)` in the coordinates of [`ext_basis`]`(n, 3)`.
pub fn u_subspace(ctx: &BasisContext) -> Result<crate::linalg::Subspace> {
    ctx.require_symplectic()?;
    let basis = ext_basis(ctx.n(), 3);
    let mut trip = Vec::new();
    for (col, code) in basis.iter().enumerate() {
        let mut e = ExtPoly::zero(*ctx, 3);
        e.add_canonical(*code, Rational::ONE);
        for (row, v) in contraction3(&e)?.into_iter().enumerate() {
            if !v.is_zero() {
                trip.push((row, col, v));
            }
        }
    }
    let m = crate::linalg::SparseMatrix::from_triplets(ctx.n(), basis.len(), trip);
    Ok(crate::linalg::kernel_basis(&m))
}

/// Sp-equivariant projection `Λ³H → U` along `ω₀ ∧ H`:
/// `t ↦ t − ω₀ ∧ c(t)/(g−1)`, using `c(ω₀ ∧ h) = (g−1) h`.
pub fn u_projection(t: &ExtPoly) -> Result<ExtPoly> {
    let ctx = t.context();
    let g = ctx.require_symplectic()?;
    if g < 2 {
        return Err(Error::Invalid("U-projection needs g >= 2".into()));
    }
    let c = contraction3(t)?;
    let inv = Rational::new(1, g as i64 - 1);
    let mut h = ExtPoly::zero(ctx, 1);
    for (i, v) in c.iter().enumerate() {
        h.add_canonical(i as u64, v * &inv);
    }
    let corr = omega0_ext(&ctx)?.wedge(&h);
    let mut out = t.clone();
    out.add_scaled(&corr, &Rational::from_int(-1));
    Ok(out)
}

/// Which higher intersection pairing to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IotaFlavor {
    /// Determinant pairing on `U ⊂ Λ³H`.
    Iota1,
    /// Permanent-type pairing on `S^m H`, `m` odd.
    Sym,
}

/// `ι_m(u, v) = Σ_{σ∈S_m} Π ω(u_i, v_{σ(i)})`, extended bilinearly.
///
/// For monomials the sum is nonzero only when `v` is the letterwise partner of
/// `u`, in which case it equals `Π_x mult(x)! · ω(x, x̄)^{mult(x)}`.
pub fn iota_sym(u: &SymPoly, v: &SymPoly) -> Result<Rational> {
    let ctx = u.context();
    ctx.require_symplectic()?;
    ctx.check_same(&v.context())?;
    if u.degree() != v.degree() {
        return Err(Error::DegreeMismatch { expected: u.degree(), found: v.degree() });
    }
    let n = ctx.n();
    let m = u.degree();
    let mut acc = Rational::ZERO;
    for (w, c) in u.terms() {
        let letters = decode_word(n, m, *w);
        let mut partner: Vec<u8> = letters.iter().map(|&l| ctx.partner(l)).collect();
        partner.sort_unstable();
        let pc = v.coeff(encode_word(n, &partner));
        if pc.is_zero() {
            continue;
        }
        let mut val: i64 = 1;
        let mut i = 0;
        while i < m {
            let mut j = i;
            while j < m && letters[j] == letters[i] {
                j += 1;
            }
            let mult = (j - i) as i64;
            let fact: i64 = (1..=mult).product();
            let s = ctx.omega(letters[i], ctx.partner(letters[i])).pow(mult as u32);
            val *= fact * s;
            i = j;
        }
        acc += &(&(c * &pc) * &Rational::from_int(val));
    }
    Ok(acc)
}

/// Determinant pairing `(u₁∧u₂∧u₃, v₁∧v₂∧v₃) ↦ det[ω(u_i, v_j)]` on `Λ³H`.
pub fn det_pairing3(u: &ExtPoly, v: &ExtPoly) -> Result<Rational> {
    let ctx = u.context();
    ctx.require_symplectic()?;
    ctx.check_same(&v.context())?;
    for e in [u, v] {
        if e.degree() != 3 {
            return Err(Error::DegreeMismatch { expected: 3, found: e.degree() });
        }
    }
    let mut acc = Rational::ZERO;
    for (w1, c1) in u.terms() {
        let a = u.letters(*w1);
        for (w2, c2) in v.terms() {
            let b = v.letters(*w2);
            let m = |i: usize, j: usize| ctx.omega(a[i], b[j]);
            let det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
            if det != 0 {
                acc += &(&(c1 * c2) * &Rational::from_int(det));
            }
        }
    }
    Ok(acc)
}

/// `ι₁` on `U`: the determinant pairing, after checking both arguments lie in
/// `U` (zero contraction).
pub fn iota1(u: &ExtPoly, v: &ExtPoly) -> Result<Rational> {
    for e in [u, v] {
        if contraction3(e)?.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotInSubspace("iota1 argument is not in U".into()));
        }
    }
    det_pairing3(u, v)
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub word: String,
    pub coeff: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub symplectic: bool,
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

fn poly_json<'a>(
    ctx: &BasisContext,
    degree: usize,
    terms: impl Iterator<Item = (u64, &'a Rational)>,
) -> PolyJson {
    PolyJson {
        n: ctx.n(),
        symplectic: ctx.is_symplectic(),
        degree,
        terms: terms
            .map(|(w, c)| TermJson { word: format_word(ctx, degree, w), coeff: c.clone() })
            .collect(),
    }
}

fn parse_poly_json(p: &PolyJson) -> Result<(BasisContext, Vec<(Vec<u8>, Rational)>)> {
    let ctx = BasisContext::new(p.n, p.symplectic)?;
    let mut out = Vec::new();
    for t in &p.terms {
        let w = parse_word(&ctx, &t.word)?;
        if w.len() != p.degree {
            return Err(Error::Parse(format!("word {:?} has length != degree {}", t.word, p.degree)));
        }
        out.push((w, t.coeff.clone()));
    }
    Ok((ctx, out))
}

impl TensorPoly {
    pub fn to_json(&self) -> PolyJson {
        let terms = self.sorted_terms();
        poly_json(&self.ctx, self.degree, terms.iter().map(|(w, c)| (*w, c)))
    }

    pub fn from_json(p: &PolyJson) -> Result<Self> {
        let (ctx, terms) = parse_poly_json(p)?;
        let mut t = TensorPoly::zero(ctx, p.degree);
        for (w, c) in terms {
            t.add_term(encode_word(ctx.n(), &w), c);
        }
        Ok(t)
    }
}

impl SymPoly {
    pub fn to_json(&self) -> PolyJson {
        poly_json(&self.ctx, self.degree, self.terms.iter().map(|(w, c)| (*w, c)))
    }

    pub fn from_json(p: &PolyJson) -> Result<Self> {
        let (ctx, terms) = parse_poly_json(p)?;
        let mut s = SymPoly::zero(ctx, p.degree);
        for (w, c) in terms {
            s.add_scaled(&SymPoly::monomial(ctx, &w, c), &Rational::ONE);
        }
        Ok(s)
    }
}

impl ExtPoly {
    pub fn to_json(&self) -> PolyJson {
        poly_json(&self.ctx, self.degree, self.terms.iter().map(|(w, c)| (*w, c)))
    }

    pub fn from_json(p: &PolyJson) -> Result<Self> {
        let (ctx, terms) = parse_poly_json(p)?;
        let mut e = ExtPoly::zero(ctx, p.degree);
        for (w, c) in terms {
            e.add_scaled(&ExtPoly::wedge_of_letters(ctx, &w, c), &Rational::ONE);
        }
        Ok(e)
    }
}
