//! Seeded generators for randomized checks.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::curve::{CurveSpec, Parity, RingElement};
use crate::exact::{ratio, LaurentPoly, ParamPoly, Rational};
use crate::lie::LoopElement;

pub type TrialRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TrialRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Nonzero integer in `[-bound, bound]`.
pub fn nonzero_int(rng: &mut TrialRng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// A rational `p/q` with `|p| <= 9`, `1 <= q <= 5`, possibly zero.
pub fn small_rational(rng: &mut TrialRng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn parity(rng: &mut TrialRng) -> Parity {
    if rng.gen_bool(0.5) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Sum of `1..=max_terms` monomials `c t^e [u]` with `|e| <= window`.
pub fn ring_element(
    rng: &mut TrialRng,
    window: i64,
    max_terms: usize,
    only: Option<Parity>,
) -> RingElement {
    let mut out = RingElement::zero();
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let c = ParamPoly::int(nonzero_int(rng, 3));
        let e = rng.gen_range(-window..=window);
        let mono = LaurentPoly::monomial(e, c);
        match only.unwrap_or_else(|| parity(rng)) {
            Parity::Even => out.even = &out.even + &mono,
            Parity::Odd => out.odd = &out.odd + &mono,
        }
    }
    if out.is_zero() {
        out = RingElement::t_pow(0);
    }
    out
}

/// A homogeneous loop element of the given parity with `1..=2` terms.
pub fn loop_element(
    rng: &mut TrialRng,
    dim: usize,
    n: usize,
    window: i64,
    p: Parity,
) -> LoopElement {
    let mut out = LoopElement::zero(n);
    for _ in 0..rng.gen_range(1..=2) {
        let a = rng.gen_range(0..dim);
        let e = rng.gen_range(-window..=window);
        out.add_term(a, e, p, ParamPoly::int(nonzero_int(rng, 3)));
    }
    if out.is_zero() {
        out.add_term(0, 0, p, ParamPoly::one());
    }
    out
}

/// Random rational values for every parameter of `spec`, retried until the
/// instantiated curve is separable with nonzero `a_0`.
pub fn separable_point(rng: &mut TrialRng, spec: &CurveSpec) -> BTreeMap<String, Rational> {
    let params: Vec<String> = spec.params().into_iter().collect();
    loop {
        let point: BTreeMap<String, Rational> = params
            .iter()
            .map(|p| (p.clone(), small_rational(rng)))
            .collect();
        let inst = spec.instantiate(&point);
        if CurveSpec::new(inst.coeffs().to_vec()).is_ok() {
            return point;
        }
    }
}

/// A random monic separable polynomial of degree `n` with small integer
/// coefficients and `a_0 != 0`.
pub fn separable_curve(rng: &mut TrialRng, n: usize) -> CurveSpec {
    loop {
        let mut coeffs: Vec<ParamPoly> = (0..n)
            .map(|_| ParamPoly::int(rng.gen_range(-4..=4)))
            .collect();
        coeffs[0] = ParamPoly::int(nonzero_int(rng, 4));
        coeffs.push(ParamPoly::one());
        if let Ok(spec) = CurveSpec::new(coeffs) {
            return spec;
        }
    }
}
