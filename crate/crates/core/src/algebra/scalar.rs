//! Exact rational scalars.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Field element for every coefficient. `BigRational` keeps itself in lowest
/// terms with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `n` or `n/d` with `d > 0`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg}: {t:?}") };
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Scalar::from_integer).map_err(|_| bad("not an integer")),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad("bad denominator"))?;
            if !d.is_positive() {
                return Err(bad("denominator must be positive"));
            }
            Ok(Scalar::new(n, d))
        }
    }
}

pub fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Falling factorial x(x-1)...(x-k+1); equals 1 for k = 0.
pub fn falling(x: i64, k: u32) -> Scalar {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= BigInt::from(x - i);
    }
    Scalar::from_integer(acc)
}

/// Ordinary binomial coefficient C(n, j) for n >= 0.
pub fn binomial(n: u64, j: u64) -> Scalar {
    if j > n {
        return zero();
    }
    let mut acc = BigInt::one();
    for i in 0..j {
        acc *= BigInt::from(n - i);
        acc = acc.div_floor(&BigInt::from(i + 1));
    }
    Scalar::from_integer(acc)
}

/// Generalized binomial C(x, j) for any integer x.
pub fn gen_binomial(x: i64, j: u64) -> Scalar {
    let mut acc = one();
    for i in 0..j as i64 {
        acc *= int(x - i);
        acc /= int(i + 1);
    }
    acc
}

pub fn sign(k: i64) -> Scalar {
    if k.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

pub fn factorial(k: u32) -> Scalar {
    falling(k as i64, k)
}
