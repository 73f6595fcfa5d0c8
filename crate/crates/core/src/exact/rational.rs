use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::parse::ParseError;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses the canonical `p/q` form (or a bare integer).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |msg: &str| Error::Parse(ParseError::new(s, 0, msg));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| bad("expected an integer numerator"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| bad("expected an integer denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Double factorial `m!!` extended to negative odd `m` through
/// `m!! = (m+2)!!/(m+2)`, so `(-1)!! = 1` and `(-3)!! = -1`.
pub fn double_factorial(m: i64) -> Rational {
    if m >= 0 {
        let mut acc = BigInt::one();
        let mut k = m;
        while k > 1 {
            acc *= BigInt::from(k);
            k -= 2;
        }
        return Rational::from_integer(acc);
    }
    assert!(
        m % 2 != 0,
        "double factorial undefined for negative even {m}"
    );
    let mut acc = Rational::one();
    let mut k = -1;
    while k > m {
        // (k-2)!! = k!!/k
        acc /= rat(k);
        k -= 2;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorial_conventions() {
        assert_eq!(double_factorial(-1), rat(1));
        assert_eq!(double_factorial(-3), rat(-1));
        assert_eq!(double_factorial(-5), ratio(1, 3));
        assert_eq!(double_factorial(0), rat(1));
        assert_eq!(double_factorial(7), rat(105));
        assert_eq!(double_factorial(8), rat(384));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("27/35").unwrap(), ratio(27, 35));
        assert_eq!(parse_rational("-4/2").unwrap(), rat(-2));
        assert_eq!(ratio(-4, 2).to_string(), "-2");
        assert_eq!(ratio(6, -4).to_string(), "-3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(factorial(6), BigInt::from(720));
    }
}
