//! The free graded Lie algebra on `n` generators, in the Lyndon basis.
//!
//! A Lyndon word `w` stands for its standard bracketing `P_w`, obtained from
//! the standard factorization `w = uv` (`v` the longest proper Lyndon suffix)
//! as `P_w = [P_u, P_v]`. Expanded in the tensor algebra, `P_w` is `w` plus
//! lexicographically larger words, which makes conversion from tensors
//! triangular.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::rational::Rational;
use crate::tensor::{decode_word, encode_word, pow_n, BasisContext, TensorPoly};

fn mobius(mut d: usize) -> i64 {
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            d /= p;
            if d.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if d > 1 {
        mu = -mu;
    }
    mu
}

/// Dimension of `L_n(k)` by the necklace formula.
pub fn witt_dim(n: usize, k: usize) -> usize {
    assert!(n >= 1 && k >= 1, "witt_dim needs n, k >= 1");
    let mut acc: i128 = 0;
    for d in 1..=k {
        if k.is_multiple_of(d) {
            acc += mobius(d) as i128 * (n as i128).pow((k / d) as u32);
        }
    }
    (acc / k as i128) as usize
}

pub fn is_lyndon(w: &[u8]) -> bool {
    let k = w.len();
    if k == 0 {
        return false;
    }
    (1..k).all(|i| {
        let rot = w[i..].iter().chain(&w[..i]);
        w.iter().lt(rot)
    })
}

/// Lyndon words of length `k` on `n` letters in lexicographic order (Duval).
pub fn lyndon_words(n: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if n == 0 || k == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == k {
            out.push(w.clone());
        }
        // extend periodically to length k
        let m = w.len();
        while w.len() < k {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last as usize == n - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// Packed codes of [`lyndon_words`].
pub fn lyndon_basis(n: usize, k: usize) -> Vec<u64> {
    lyndon_table(n, k).words.clone()
}

/// Position of the standard factorization: the start of the longest proper
/// Lyndon suffix.
pub fn standard_split(w: &[u8]) -> usize {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("words of length >= 2 have a Lyndon suffix")
}

/// Lyndon basis of `L_n(k)` with the tensor expansions of each `P_w`.
#[derive(Debug)]
pub struct LyndonTable {
    pub n: usize,
    pub k: usize,
    pub words: Vec<u64>,
    index: FxHashMap<u64, u32>,
    expansions: Vec<Vec<(u64, i64)>>,
}

impl LyndonTable {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, code: u64) -> Option<usize> {
        self.index.get(&code).map(|&i| i as usize)
    }

    /// Tensor expansion of `P_w` for the `i`-th Lyndon word; the first entry
    /// is `(w, 1)` and all others are larger words.
    pub fn expansion(&self, i: usize) -> &[(u64, i64)] {
        &self.expansions[i]
    }
}

type TableCache = Mutex<HashMap<(usize, usize), Arc<LyndonTable>>>;

fn table_cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared, lazily built Lyndon table for `(n, k)`.
pub fn lyndon_table(n: usize, k: usize) -> Arc<LyndonTable> {
    if let Some(t) = table_cache().lock().unwrap().get(&(n, k)) {
        return t.clone();
    }
    let built = Arc::new(build_table(n, k));
    table_cache().lock().unwrap().entry((n, k)).or_insert(built).clone()
}

fn build_table(n: usize, k: usize) -> LyndonTable {
    let words_l = lyndon_words(n, k);
    let words: Vec<u64> = words_l.iter().map(|w| encode_word(n, w)).collect();
    let index = words.iter().enumerate().map(|(i, w)| (*w, i as u32)).collect();
    let expansions = words_l
        .iter()
        .map(|w| {
            if k == 1 {
                return vec![(w[0] as u64, 1)];
            }
            let s = standard_split(w);
            let (u, v) = (&w[..s], &w[s..]);
            let tu = lyndon_table(n, u.len());
            let tv = lyndon_table(n, v.len());
            let eu = tu.expansion(tu.index_of(encode_word(n, u)).unwrap());
            let ev = tv.expansion(tv.index_of(encode_word(n, v)).unwrap());
            let su = pow_n(n, u.len());
            let sv = pow_n(n, v.len());
            let mut acc: FxHashMap<u64, i64> = FxHashMap::default();
            for (a, ca) in eu {
                for (b, cb) in ev {
                    *acc.entry(a * sv + b).or_default() += ca * cb;
                    *acc.entry(b * su + a).or_default() -= ca * cb;
                }
            }
            let mut e: Vec<(u64, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
            e.sort_unstable_by_key(|(w, _)| *w);
            debug_assert_eq!(e[0], (encode_word(n, w), 1));
            e
        })
        .collect();
    LyndonTable { n, k, words, index, expansions }
}

/// Lyndon coordinates of a homogeneous tensor, if it is a Lie element.
///
/// Repeatedly strips the smallest word, which for a Lie element is Lyndon and
/// carries exactly the coefficient of its basis element.
pub fn lie_coordinates(t: &TensorPoly) -> Option<SparseVec> {
    if t.degree() == 0 {
        return if t.is_zero() { Some(Vec::new()) } else { None };
    }
    let n = t.context().n();
    let table = lyndon_table(n, t.degree());
    let mut rest: BTreeMap<u64, Rational> = t.terms().map(|(w, c)| (*w, c.clone())).collect();
    let mut out = Vec::new();
    while let Some((w, c)) = rest.pop_first() {
        let idx = table.index_of(w)?;
        for (u, cu) in &table.expansion(idx)[1..] {
            let e = rest.entry(*u).or_default();
            *e -= &(&c * &Rational::from_int(*cu));
            if e.is_zero() {
                rest.remove(u);
            }
        }
        out.push((idx as u32, c));
    }
    Some(out)
}

// ---------------------------------------------------------------------------
// LiePoly
// ---------------------------------------------------------------------------

/// Homogeneous element of `L_n(k)`; keys index the Lyndon basis of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiePoly {
    ctx: BasisContext,
    degree: usize,
    terms: BTreeMap<u32, Rational>,
}

impl LiePoly {
    pub fn zero(ctx: BasisContext, degree: usize) -> Self {
        LiePoly { ctx, degree, terms: BTreeMap::new() }
    }

    pub fn generator(ctx: BasisContext, l: u8) -> Self {
        let mut p = Self::zero(ctx, 1);
        p.terms.insert(l as u32, Rational::ONE);
        p
    }

    /// Basis element `P_w` for a Lyndon word.
    pub fn lyndon(ctx: BasisContext, word: &[u8]) -> Result<Self> {
        let table = lyndon_table(ctx.n(), word.len());
        let idx = table
            .index_of(encode_word(ctx.n(), word))
            .ok_or_else(|| Error::Invalid(format!("{word:?} is not a Lyndon word")))?;
        let mut p = Self::zero(ctx, word.len());
        p.terms.insert(idx as u32, Rational::ONE);
        Ok(p)
    }

    pub fn from_coords(ctx: BasisContext, degree: usize, coords: &SparseVec) -> Self {
        let mut p = Self::zero(ctx, degree);
        for (i, c) in coords {
            p.add_basis(*i, c.clone());
        }
        p
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

    pub fn coords(&self) -> SparseVec {
        self.terms.iter().map(|(i, c)| (*i, c.clone())).collect()
    }

    /// `(lyndon word code, coefficient)` pairs in basis order.
    pub fn terms(&self) -> Vec<(u64, Rational)> {
        let table = lyndon_table(self.ctx.n(), self.degree);
        self.terms.iter().map(|(i, c)| (table.words[*i as usize], c.clone())).collect()
    }

    pub fn add_basis(&mut self, idx: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(idx).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn add_scaled(&mut self, other: &LiePoly, s: &Rational) {
        debug_assert_eq!(self.degree, other.degree);
        for (i, c) in &other.terms {
            self.add_basis(*i, c * s);
        }
    }

    pub fn scaled(&self, s: &Rational) -> LiePoly {
        let mut p = Self::zero(self.ctx, self.degree);
        p.add_scaled(self, s);
        p
    }

    pub fn plus(&self, other: &LiePoly) -> Result<LiePoly> {
        self.ctx.check_same(&other.ctx)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut p = self.clone();
        p.add_scaled(other, &Rational::ONE);
        Ok(p)
    }

    pub fn minus(&self, other: &LiePoly) -> Result<LiePoly> {
        self.plus(&other.scaled(&Rational::from_int(-1)))
    }

    pub fn embed_to_tensor(&self) -> TensorPoly {
        let table = lyndon_table(self.ctx.n(), self.degree);
        let mut t = TensorPoly::zero(self.ctx, self.degree);
        for (i, c) in &self.terms {
            for (w, cw) in table.expansion(*i as usize) {
                t.add_term(*w, c * &Rational::from_int(*cw));
            }
        }
        t
    }

    /// Reads a Lie element off a tensor; `None` if it is not one.
    pub fn from_tensor(t: &TensorPoly) -> Option<LiePoly> {
        let coords = lie_coordinates(t)?;
        Some(LiePoly::from_coords(t.context(), t.degree(), &coords))
    }

    pub fn bracket(&self, other: &LiePoly) -> Result<LiePoly> {
        self.ctx.check_same(&other.ctx)?;
        let t = self.embed_to_tensor().commutator(&other.embed_to_tensor());
        Ok(LiePoly::from_tensor(&t).expect("commutator of Lie elements is Lie"))
    }
}

/// Bracket in the free Lie algebra.
pub fn bracket(u: &LiePoly, v: &LiePoly) -> Result<LiePoly> {
    u.bracket(v)
}

pub fn embed_to_tensor(u: &LiePoly) -> TensorPoly {
    u.embed_to_tensor()
}

/// Dynkin left-bracketing `x_{i1}⋯x_{ik} ↦ [⋯[x_{i1}, x_{i2}], ⋯, x_{ik}]`
/// on tensors.
pub fn dynkin(t: &TensorPoly) -> TensorPoly {
    let ctx = t.context();
    let n = ctx.n();
    let k = t.degree();
    let mut out = TensorPoly::zero(ctx, k);
    if k == 0 {
        return out;
    }
    for (w, c) in t.terms() {
        let letters = decode_word(n, k, *w);
        let mut acc: Vec<(u64, i64)> = vec![(letters[0] as u64, 1)];
        for (len, &y) in letters.iter().enumerate().skip(1) {
            let shift = pow_n(n, len);
            let mut next = Vec::with_capacity(acc.len() * 2);
            for (u, cu) in &acc {
                next.push((u * n as u64 + y as u64, *cu));
                next.push((y as u64 * shift + u, -cu));
            }
            acc = next;
        }
        for (u, cu) in acc {
            out.add_term(u, c * &Rational::from_int(cu));
        }
    }
    out
}

/// A tensor that failed the Lie test, with the defect `θ(t) − k·t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotLie {
    pub defect: TensorPoly,
}

/// Recognizes Lie elements via the Dynkin–Specht–Wever criterion
/// `θ(t) = k·t` and returns `θ(t)/k` in the Lyndon basis.
pub fn project_to_lie(t: &TensorPoly) -> std::result::Result<LiePoly, NotLie> {
    let k = t.degree();
    let theta = dynkin(t);
    let mut defect = theta.clone();
    defect.add_scaled(t, &Rational::from_int(-(k as i64)));
    if !defect.is_zero() || k == 0 {
        return Err(NotLie { defect });
    }
    let scaled = theta.scaled(&Rational::new(1, k as i64));
    LiePoly::from_tensor(&scaled).ok_or(NotLie { defect })
}

// ---------------------------------------------------------------------------
// Bracket expressions
// ---------------------------------------------------------------------------

/// Binary bracket tree with generator leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketExpr {
    Leaf(u8),
    Node(Box<BracketExpr>, Box<BracketExpr>),
}

impl BracketExpr {
    pub fn node(l: BracketExpr, r: BracketExpr) -> Self {
        BracketExpr::Node(Box::new(l), Box::new(r))
    }

    pub fn degree(&self) -> usize {
        match self {
            BracketExpr::Leaf(_) => 1,
            BracketExpr::Node(l, r) => l.degree() + r.degree(),
        }
    }

    /// Standard bracketing of a Lyndon word.
    pub fn standard(word: &[u8]) -> Self {
        if word.len() == 1 {
            return BracketExpr::Leaf(word[0]);
        }
        let s = standard_split(word);
        Self::node(Self::standard(&word[..s]), Self::standard(&word[s..]))
    }

    pub fn to_tensor(&self, ctx: BasisContext) -> TensorPoly {
        match self {
            BracketExpr::Leaf(l) => TensorPoly::letter(ctx, *l),
            BracketExpr::Node(a, b) => a.to_tensor(ctx).commutator(&b.to_tensor(ctx)),
        }
    }

    pub fn evaluate(&self, ctx: BasisContext) -> Result<LiePoly> {
        if let Some(l) = self.max_letter() {
            if l as usize >= ctx.n() {
                return Err(Error::Invalid(format!("generator index {l} out of range")));
            }
        }
        Ok(LiePoly::from_tensor(&self.to_tensor(ctx)).expect("brackets are Lie"))
    }

    fn max_letter(&self) -> Option<u8> {
        match self {
            BracketExpr::Leaf(l) => Some(*l),
            BracketExpr::Node(a, b) => a.max_letter().max(b.max_letter()),
        }
    }

    pub fn to_json(&self, ctx: &BasisContext) -> serde_json::Value {
        match self {
            BracketExpr::Leaf(l) => serde_json::Value::String(ctx.letter_name(*l)),
            BracketExpr::Node(a, b) => serde_json::Value::Array(vec![a.to_json(ctx), b.to_json(ctx)]),
        }
    }

    pub fn from_json(ctx: &BasisContext, v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::String(s) => Ok(BracketExpr::Leaf(ctx.parse_letter(s)?)),
            serde_json::Value::Array(a) if a.len() == 2 => {
                Ok(Self::node(Self::from_json(ctx, &a[0])?, Self::from_json(ctx, &a[1])?))
            }
            _ => Err(Error::Parse(format!("malformed bracket expression {v}"))),
        }
    }

    pub fn format(&self, ctx: &BasisContext) -> String {
        match self {
            BracketExpr::Leaf(l) => ctx.letter_name(*l),
            BracketExpr::Node(a, b) => format!("[{},{}]", a.format(ctx), b.format(ctx)),
        }
    }
}

impl fmt::Display for LiePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.ctx.n();
        let parts: Vec<(String, Rational)> = self
            .terms()
            .into_iter()
            .map(|(w, c)| {
                let word = decode_word(n, self.degree, w);
                (BracketExpr::standard(&word).format(&self.ctx), c)
            })
            .collect();
        crate::tensor::write_linear_combination(f, &parts)
    }
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LyndonTermJson {
    pub lyndon: String,
    pub coeff: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiePolyJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub symplectic: bool,
    pub degree: usize,
    pub terms: Vec<LyndonTermJson>,
}

/// Lyndon words print compactly as `a`, `b`, `c`, … by letter position.
pub fn format_lyndon(n: usize, k: usize, code: u64) -> String {
    decode_word(n, k, code).iter().map(|&l| (b'a' + l) as char).collect()
}

/// Parses either the compact form `aab` or dotted generator names `a1.a1.b1`.
pub fn parse_lyndon(ctx: &BasisContext, s: &str) -> Result<Vec<u8>> {
    if s.contains('.') || s.chars().any(|c| c.is_ascii_digit()) {
        return s.split('.').map(|t| ctx.parse_letter(t.trim())).collect();
    }
    s.bytes()
        .map(|b| {
            let l = b.wrapping_sub(b'a');
            if b.is_ascii_lowercase() && (l as usize) < ctx.n() {
                Ok(l)
            } else {
                Err(Error::Parse(format!("bad letter in Lyndon word {s:?}")))
            }
        })
        .collect()
}

impl LiePoly {
    pub fn to_json(&self) -> LiePolyJson {
        LiePolyJson {
            n: self.ctx.n(),
            symplectic: self.ctx.is_symplectic(),
            degree: self.degree,
            terms: self
                .terms()
                .into_iter()
                .map(|(w, c)| LyndonTermJson {
                    lyndon: format_lyndon(self.ctx.n(), self.degree, w),
                    coeff: c,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &LiePolyJson) -> Result<Self> {
        let ctx = BasisContext::new(j.n, j.symplectic)?;
        Self::from_json_in(ctx, j)
    }

    /// Parses in a given context (used when the enclosing document fixes it).
    pub fn from_json_in(ctx: BasisContext, j: &LiePolyJson) -> Result<Self> {
        if j.n != ctx.n() {
            return Err(Error::DimensionMismatch { expected: ctx.n(), found: j.n });
        }
        let mut p = LiePoly::zero(ctx, j.degree);
        for t in &j.terms {
            let w = parse_lyndon(&ctx, &t.lyndon)?;
            if w.len() != j.degree {
                return Err(Error::Parse(format!("{:?} has wrong length", t.lyndon)));
            }
            p.add_scaled(&LiePoly::lyndon(ctx, &w)?, &t.coeff);
        }
        Ok(p)
    }
}
