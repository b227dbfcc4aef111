//! Embedded identity suite: a quick end-to-end check of the conventions the
//! rest of the crate relies on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::HComplex;
use crate::derivation::{bracket_der, der_dim, h_basis_with, Derivation, OmegaConvention, DEFAULT_CAP};
use crate::error::Result;
use crate::linalg::SparseVec;
use crate::rational::Rational;
use crate::tensor::{BasisContext, SymPoly};
use crate::trace::{ad_power_example, trace_k, trace_via_contraction, Contraction};

#[derive(Clone, Copy, Debug)]
pub struct SelfcheckOptions {
    pub convention: OmegaConvention,
    pub cap: usize,
    pub seed: u64,
}

impl Default for SelfcheckOptions {
    fn default() -> Self {
        SelfcheckOptions { convention: OmegaConvention::Standard, cap: DEFAULT_CAP, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        CheckOutcome { name, passed, detail }
    }

    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// Random derivation with a few small integer coordinates.
pub fn random_derivation(ctx: BasisContext, k: usize, terms: usize, rng: &mut impl Rng) -> Derivation {
    let dim = der_dim(ctx.n(), k);
    let mut v: SparseVec = Vec::new();
    for _ in 0..terms {
        let j = rng.gen_range(0..dim) as u32;
        let c = rng.gen_range(-3i64..=3);
        if c != 0 && !v.iter().any(|(i, _)| *i == j) {
            v.push((j, Rational::from_int(c)));
        }
    }
    v.sort_by_key(|(i, _)| *i);
    Derivation::from_coords(ctx, k, &v)
}

fn check_ad_power() -> Result<CheckOutcome> {
    let mut bad = Vec::new();
    for n in 2..=4 {
        for k in 2..=6 {
            let d = ad_power_example(n, k)?;
            if trace_k(&d) != SymPoly::monomial(d.context(), &vec![0; k], Rational::ONE) {
                bad.push(format!("(n={n},k={k})"));
            }
        }
    }
    Ok(CheckOutcome::new(
        "ad_power_trace",
        bad.is_empty(),
        if bad.is_empty() { "trace(ad(x1)^k x2) = x1^k for n=2..4, k=2..6".into() } else { bad.join(" ") },
    ))
}

fn check_commutators(rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let pairs = 40;
    let mut bad = 0;
    for _ in 0..pairs {
        let n = rng.gen_range(2..=3);
        let ctx = BasisContext::free(n)?;
        let k1 = rng.gen_range(1..=3);
        let k2 = rng.gen_range(1..=5 - k1);
        let d1 = random_derivation(ctx, k1, 4, rng);
        let d2 = random_derivation(ctx, k2, 4, rng);
        if !trace_k(&bracket_der(&d1, &d2)?).is_zero() {
            bad += 1;
        }
    }
    Ok(CheckOutcome::new("commutator_vanishing", bad == 0, format!("{bad} of {pairs} random brackets with nonzero trace")))
}

fn check_even_trace_on_h(opts: &SelfcheckOptions) -> Result<CheckOutcome> {
    let mut nonzero = 0;
    let mut total = 0;
    for k in [2, 4] {
        let h = h_basis_with(2, k, opts.cap, opts.convention)?;
        for d in h.basis_derivations() {
            total += 1;
            if !trace_k(&d).is_zero() {
                nonzero += 1;
            }
        }
    }
    Ok(CheckOutcome::new(
        "even_trace_on_h",
        nonzero == 0,
        format!("{nonzero} of {total} basis vectors of h_2,1(2), h_2,1(4) with nonzero trace"),
    ))
}

fn check_contraction_sign(rng: &mut ChaCha8Rng) -> Result<CheckOutcome> {
    let mut bad = 0;
    let samples = 20;
    for _ in 0..samples {
        let ctx = BasisContext::free(rng.gen_range(2..=3))?;
        let k = rng.gen_range(1..=4);
        let d = random_derivation(ctx, k, 5, rng);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let first = trace_via_contraction(&d, Contraction::First);
        if first != trace_via_contraction(&d, Contraction::Last).scaled(&Rational::from_int(sign)) {
            bad += 1;
        }
    }
    Ok(CheckOutcome::new("contraction_sign", bad == 0, format!("{bad} of {samples} samples violate C_1 = (-1)^k C_(k+1)")))
}

fn check_delta_squared(opts: &SelfcheckOptions) -> Result<CheckOutcome> {
    let mut cx = HComplex::with_cap(2, opts.cap)?;
    let mut bad = Vec::new();
    for d in 1..=2 {
        for n in 2..=4 {
            if !cx.delta_squared_vanishes(d, n)? {
                bad.push(format!("(d={d},n={n})"));
            }
        }
    }
    Ok(CheckOutcome::new(
        "delta_squared",
        bad.is_empty(),
        if bad.is_empty() { "g=2, d<=2, n<=4".into() } else { bad.join(" ") },
    ))
}

fn check_invariant_cocycles(opts: &SelfcheckOptions) -> Result<CheckOutcome> {
    let mut cx3 = HComplex::with_cap(3, opts.cap)?;
    let e1 = cx3.build_e1()?;
    let e1_ok = !e1.is_zero() && cx3.is_invariant(&e1)? && cx3.is_cocycle(&e1)?;
    let mut cx2 = HComplex::with_cap(2, opts.cap)?;
    let t3 = cx2.build_t(1)?;
    let t3_ok = !t3.is_zero() && cx2.is_invariant(&t3)? && cx2.is_cocycle(&t3)?;
    Ok(CheckOutcome::new(
        "invariant_cocycles",
        e1_ok && t3_ok,
        format!("e1 at g=3: {}, t3 at g=2: {}", ok_word(e1_ok), ok_word(t3_ok)),
    ))
}

fn ok_word(b: bool) -> &'static str {
    if b {
        "invariant cocycle"
    } else {
        "FAILED"
    }
}

/// Runs every check; resource-cap errors abort the run.
pub fn run_selfcheck(opts: &SelfcheckOptions) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    Ok(vec![
        check_ad_power()?,
        check_commutators(&mut rng)?,
        check_even_trace_on_h(opts)?,
        check_contraction_sign(&mut rng)?,
        check_delta_squared(opts)?,
        check_invariant_cocycles(opts)?,
    ])
}
