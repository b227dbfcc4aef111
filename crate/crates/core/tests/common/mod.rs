#![allow(dead_code)]

use rand::Rng;
use symtrace_core::johnson::{Endomorphism, GroupWord};
use symtrace_core::{BasisContext, Derivation, Rational, SparseVec};

pub fn q(v: i64) -> Rational {
    Rational::from_int(v)
}

pub fn word(ctx: BasisContext, letters: &[i8]) -> GroupWord {
    GroupWord::from_letters(ctx, letters).unwrap()
}

/// Endomorphism changing only the listed generators (signed 1-based letters).
pub fn endo(ctx: BasisContext, changes: &[(u8, &[i8])]) -> Endomorphism {
    let ch: Vec<(u8, GroupWord)> = changes.iter().map(|(l, w)| (*l, word(ctx, w))).collect();
    Endomorphism::with_images(ctx, &ch).unwrap()
}

/// A twist as a pair (map, inverse).
pub type Twist = (Endomorphism, Endomorphism);

/// Boundary-fixing twists of the genus-`g` surface group: `a_i ↦ a_i b_i`,
/// `b_i ↦ b_i a_i⁻¹` (indices `2i`, `2i+1`), then one twist joining each pair of
/// neighbouring handles (indices `2g + i`).
pub fn twists(g: usize) -> Vec<Twist> {
    let ctx = BasisContext::symplectic(g).unwrap();
    let mut out = Vec::new();
    for i in 0..g as i8 {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        out.push((endo(ctx, &[(a as u8 - 1, &[a, b])]), endo(ctx, &[(a as u8 - 1, &[a, -b])])));
        out.push((endo(ctx, &[(b as u8 - 1, &[b, -a])]), endo(ctx, &[(b as u8 - 1, &[b, a])])));
    }
    for i in 0..g as i8 - 1 {
        let s = 2 * i;
        let (a1, b1, a2, b2) = (s + 1, s + 2, s + 3, s + 4);
        out.push((
            endo(ctx, &[(b1 as u8 - 1, &[b1, -a1, -b1, a2, b2, -a2, b1]), (a2 as u8 - 1, &[b1, -a1, -b1, a2, b2])]),
            endo(ctx, &[(b1 as u8 - 1, &[a2, -b2, -a2, b1, a1]), (a2 as u8 - 1, &[a2, -b2, -a2, b1, a1, -b1, a2])]),
        ));
    }
    out
}

/// Signed twist index: `i + 1` is twist `i`, `-(i + 1)` its inverse.
pub fn twist_word(ts: &[Twist], word: &[i32]) -> Twist {
    let ctx = ts[0].0.context();
    let mut f = Endomorphism::identity(ctx);
    let mut fi = Endomorphism::identity(ctx);
    for &s in word {
        let (t, ti) = &ts[s.unsigned_abs() as usize - 1];
        let (t, ti) = if s > 0 { (t, ti) } else { (ti, t) };
        f = f.compose(t);
        fi = ti.compose(&fi);
    }
    (f, fi)
}

pub fn conjugate(h: &Twist, x: &Twist) -> Twist {
    (h.0.compose(&x.0).compose(&h.1), h.0.compose(&x.1).compose(&h.1))
}

pub fn commutator(x: &Twist, y: &Twist) -> Twist {
    (x.0.compose(&y.0).compose(&x.1).compose(&y.1), y.0.compose(&x.0).compose(&y.1).compose(&x.1))
}

/// Two Torelli elements of the genus-3 surface group with nonzero `τ₁`:
/// commutators of a twist with a conjugate of another twist along a curve
/// of zero algebraic intersection.
pub fn torelli_seeds() -> Vec<Twist> {
    let ts = twists(3);
    let first = {
        let x = twist_word(&ts, &[4]);
        let y = twist_word(&ts, &[-7]);
        let h = twist_word(&ts, &[6, -3, -8]);
        commutator(&x, &conjugate(&h, &y))
    };
    let second = {
        let x = twist_word(&ts, &[-7]);
        let y = twist_word(&ts, &[-3]);
        let h = twist_word(&ts, &[1, 8, -4]);
        commutator(&x, &conjugate(&h, &y))
    };
    vec![first, second]
}

pub fn random_word(ctx: BasisContext, len: usize, rng: &mut impl Rng) -> GroupWord {
    let n = ctx.n() as i8;
    let letters: Vec<i8> = (0..len)
        .map(|_| {
            let l = rng.gen_range(1..=n);
            if rng.gen_bool(0.5) {
                l
            } else {
                -l
            }
        })
        .collect();
    word(ctx, &letters)
}

/// Random element of `Γ_k`: a product of iterated commutators of length `k+1`.
pub fn random_lcs_element(ctx: BasisContext, k: usize, rng: &mut impl Rng) -> GroupWord {
    let mut out = GroupWord::identity(ctx);
    for _ in 0..rng.gen_range(1..=2) {
        let mut c = random_word(ctx, rng.gen_range(1..=2), rng);
        for _ in 0..k {
            c = c.commutator(&random_word(ctx, rng.gen_range(1..=2), rng));
        }
        out = out.mul(&c);
    }
    out
}

/// `x_i ↦ x_i c_i` with random `c_i ∈ Γ_k`: filtration level at least `k`.
pub fn random_level_k(ctx: BasisContext, k: usize, rng: &mut impl Rng) -> Endomorphism {
    let images = (0..ctx.n() as u8)
        .map(|l| GroupWord::generator(ctx, l).mul(&random_lcs_element(ctx, k, rng)))
        .collect();
    Endomorphism::from_images(ctx, images).unwrap()
}

pub fn random_coords(dim: usize, terms: usize, rng: &mut impl Rng) -> SparseVec {
    let mut v: SparseVec = Vec::new();
    if dim == 0 {
        return v;
    }
    for _ in 0..terms {
        let j = rng.gen_range(0..dim) as u32;
        let c = rng.gen_range(-3i64..=3);
        if c != 0 && !v.iter().any(|(i, _)| *i == j) {
            v.push((j, q(c)));
        }
    }
    v.sort_by_key(|(i, _)| *i);
    v
}

pub fn random_derivation(ctx: BasisContext, k: usize, terms: usize, rng: &mut impl Rng) -> Derivation {
    symtrace_core::selfcheck::random_derivation(ctx, k, terms, rng)
}
