//! Exact scalars and vectors.
//!
//! Every quantity in the crate is a reduced `BigRational`; the helpers here
//! cover parsing, printing and scaling to primitive integer vectors.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = num::BigRational;
pub type Vector = Vec<Rational>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn ivec(v: &[i64]) -> Vector {
    v.iter().map(|&x| int(x)).collect()
}

pub fn zero_vec(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

/// Parses `"p/q"`, `"-p"` or `"p"`. A zero denominator is an error.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Rational]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Scales a nonzero vector to the unique primitive integer vector on the same
/// ray. Zero vectors are returned unchanged.
pub fn primitive(a: &[Rational]) -> Vector {
    if is_zero_vec(a) {
        return a.to_vec();
    }
    let mut l = BigInt::one();
    for x in a {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = a.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Primitive vector up to sign: the first nonzero coordinate is positive.
pub fn primitive_oriented(a: &[Rational]) -> Vector {
    let p = primitive(a);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => neg(&p),
        _ => p,
    }
}

pub fn to_bigints(a: &[Rational]) -> Option<Vec<BigInt>> {
    a.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
}

pub fn format_vec(a: &[Rational]) -> Vec<String> {
    a.iter().map(format_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(q, frac(-3, 2));
        assert!(q.denom() > &BigInt::zero());
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&frac(4, 6)), "2/3");
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive(&[frac(1, 2), frac(3, 4)]), ivec(&[2, 3]));
        assert_eq!(primitive(&ivec(&[-4, 6])), ivec(&[-2, 3]));
        assert_eq!(primitive_oriented(&ivec(&[0, -4, 6])), ivec(&[0, 2, -3]));
    }
}
