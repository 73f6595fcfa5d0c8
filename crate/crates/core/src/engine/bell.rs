//! Partial Bell polynomials and Faa di Bruno composition of Taylor series.

use num_bigint::BigInt;
use num_traits::One;

use crate::curve::CurveSpec;
use crate::exact::rational::{binomial, double_factorial, factorial};
use crate::exact::{rat, Exponent, HalfGridSeries, ParamPoly, Rational};

/// All `B_{m,k}(z_1, z_2, ...)` for `m <= max_n`, built with
/// `B_{m,k} = sum_j C(m-1, j-1) z_j B_{m-j,k-1}`.
#[derive(Clone, Debug)]
pub struct BellTable {
    rows: Vec<Vec<ParamPoly>>,
}

impl BellTable {
    /// `args[j-1]` is `z_j`; missing arguments are zero.
    pub fn new(max_n: usize, args: &[ParamPoly]) -> Self {
        let zero = ParamPoly::zero();
        let z = |j: usize| args.get(j - 1).unwrap_or(&zero);
        let mut rows: Vec<Vec<ParamPoly>> = Vec::with_capacity(max_n + 1);
        for m in 0..=max_n {
            let mut row = vec![ParamPoly::zero(); m + 1];
            if m == 0 {
                row[0] = ParamPoly::one();
            }
            for k in 1..=m {
                let mut acc = ParamPoly::zero();
                for j in 1..=(m - k + 1) {
                    let zj = z(j);
                    let prev = &rows[m - j][k - 1];
                    if zj.is_zero() || prev.is_zero() {
                        continue;
                    }
                    let c = Rational::from_integer(binomial((m - 1) as u64, (j - 1) as u64));
                    acc += &(zj * prev).scale(&c);
                }
                row[k] = acc;
            }
            rows.push(row);
        }
        BellTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> ParamPoly {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_default()
    }
}

/// Partial Bell polynomial `B_{n,k}(args)`.
pub fn bell(n: usize, k: usize, args: &[ParamPoly]) -> ParamPoly {
    BellTable::new(n, args).get(n, k)
}

/// Taylor series of `f(g(x))` at 0 up to `x^order` (exclusive), with
/// `outer_derivs(l) = f^(l)(g(0))` and `inner[k]` the Taylor coefficients of `g`.
pub fn faa_series(
    outer_derivs: impl Fn(usize) -> ParamPoly,
    inner: &[ParamPoly],
    order: usize,
) -> HalfGridSeries {
    if order == 0 {
        return HalfGridSeries::zero(Exponent::ZERO);
    }
    let top = order - 1;
    // g^(k)(0) = k! g_k
    let derivs: Vec<ParamPoly> = (1..=top)
        .map(|k| {
            inner
                .get(k)
                .map(|g| g.scale(&Rational::from_integer(factorial(k as u64))))
                .unwrap_or_default()
        })
        .collect();
    let table = BellTable::new(top, &derivs);
    let outer: Vec<ParamPoly> = (0..=top).map(&outer_derivs).collect();
    let terms = (0..=top).map(|nu| {
        let mut acc = ParamPoly::zero();
        for (l, f_l) in outer.iter().enumerate().take(nu + 1) {
            let b = table.get(nu, l);
            if !b.is_zero() && !f_l.is_zero() {
                acc += &(f_l * &b);
            }
        }
        let inv_fact = Rational::new(BigInt::one(), factorial(nu as u64));
        (Exponent::int(nu as i64), acc.scale(&inv_fact))
    });
    HalfGridSeries::from_terms(terms, Exponent::int(order as i64))
}

fn signed_over_power_of_two(sign_exp: usize, value: Rational, l: usize) -> ParamPoly {
    let sign = if sign_exp.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    };
    let denom = Rational::from_integer(BigInt::one() << l);
    ParamPoly::constant(sign * value / denom)
}

/// `d^l/dx^l x^(-3/2)` at `x = 1`: `(-1)^l (2l+1)!! / 2^l`.
pub fn neg_three_halves_deriv(l: usize) -> ParamPoly {
    signed_over_power_of_two(l, double_factorial(2 * l as i64 + 1), l)
}

/// `d^l/dx^l sqrt(x)` at `x = 1`: `(-1)^(l+1) (2l-3)!! / 2^l`, with `(-3)!! = -1`.
pub fn sqrt_deriv(l: usize) -> ParamPoly {
    signed_over_power_of_two(l + 1, double_factorial(2 * l as i64 - 3), l)
}

/// `d^l/dx^l x^(-1/2)` at `x = 1`: `(-1)^l (2l-1)!! / 2^l`.
pub fn neg_half_deriv(l: usize) -> ParamPoly {
    signed_over_power_of_two(l, double_factorial(2 * l as i64 - 1), l)
}

/// Taylor coefficients of `Pbar(z) = sum_j a_j z^(n-j)`.
pub fn pbar_taylor(spec: &CurveSpec) -> Vec<ParamPoly> {
    let n = spec.degree() as i64;
    (0..=n).map(|k| spec.coeff(n - k)).collect()
}

/// Taylor coefficient of `z^nu` in `1/Pbar(z)^(3/2)`, evaluated directly as
/// `(1/nu!) sum_l (-1)^l (2l+1)!!/2^l B_{nu,l}(a_{n-1}, 2! a_{n-2}, ...)`.
pub fn neg32_coeff(nu: usize, spec: &CurveSpec) -> ParamPoly {
    let n = spec.degree() as i64;
    let args: Vec<ParamPoly> = (1..=nu.max(1))
        .map(|k| {
            spec.coeff(n - k as i64)
                .scale(&Rational::from_integer(factorial(k as u64)))
        })
        .collect();
    let table = BellTable::new(nu, &args);
    let mut acc = ParamPoly::zero();
    for l in 0..=nu {
        acc += &(&neg_three_halves_deriv(l) * &table.get(nu, l));
    }
    acc.scale(&Rational::new(BigInt::one(), factorial(nu as u64)))
}
