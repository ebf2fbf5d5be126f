//! Places of ℚ, square classes and the Hilbert symbol.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::BrauerError;

/// A place of ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Real,
    Prime(u64),
}

impl Place {
    pub fn prime(p: u64) -> Result<Self, BrauerError> {
        if is_prime(p) {
            Ok(Place::Prime(p))
        } else {
            Err(BrauerError::NotPrime(p))
        }
    }
}

/// Real place first, then primes in increasing order.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Real, Place::Real) => Ordering::Equal,
            (Place::Real, _) => Ordering::Less,
            (_, Place::Real) => Ordering::Greater,
            (Place::Prime(a), Place::Prime(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Place {
    type Err = BrauerError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "real" | "inf" | "infinity" | "oo" => Ok(Place::Real),
            other => {
                let p: u64 = other.parse().map_err(|_| BrauerError::BadPlace(s.to_string()))?;
                Place::prime(p)
            }
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization of `|n|` by trial division.
pub fn factorize(n: &BigInt) -> Vec<(u64, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d: u64 = 2;
    loop {
        let dd = BigInt::from(d);
        if &dd * &dd > n {
            break;
        }
        let mut k = 0;
        while (&n % &dd).is_zero() {
            n /= &dd;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        out.push((n.to_u64().expect("prime factor fits in u64"), 1));
    }
    out
}

/// The squarefree integer in the square class of a nonzero rational.
pub fn square_class(q: &BigRational) -> Result<BigInt, BrauerError> {
    if q.is_zero() {
        return Err(BrauerError::Zero);
    }
    let n = q.numer() * q.denom();
    let mut out = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, k) in factorize(&n) {
        if k % 2 == 1 {
            out *= p;
        }
    }
    Ok(out)
}

pub fn square_class_int(n: i64) -> BigInt {
    square_class(&BigRational::from_integer(n.into())).expect("nonzero")
}

/// Primes dividing the numerator or denominator.
pub fn prime_support(q: &BigRational) -> BTreeSet<u64> {
    factorize(q.numer())
        .into_iter()
        .chain(factorize(q.denom()))
        .map(|(p, _)| p)
        .collect()
}

/// `v_p(n)` and the `p`-free part of a nonzero integer.
fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        k += 1;
    }
    (k, n)
}

fn legendre(u: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let r = u.mod_floor(&pb);
    let e = BigInt::from((p - 1) / 2);
    if r.modpow(&e, &pb).is_one() {
        1
    } else {
        -1
    }
}

fn mod8(u: &BigInt) -> u64 {
    u.mod_floor(&BigInt::from(8)).to_u64().unwrap()
}

/// Hilbert symbol `(a, b)_v ∈ {±1}` for nonzero rationals.
///
/// Uses the classical closed formulas: sign analysis at the real place,
/// Legendre symbols at odd primes, and the `ε`/`ω` parity formula at 2.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8, BrauerError> {
    let a = square_class(a)?;
    let b = square_class(b)?;
    Ok(hilbert_symbol_int(&a, &b, place))
}

pub(crate) fn hilbert_symbol_int(a: &BigInt, b: &BigInt, place: Place) -> i8 {
    match place {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(a, 2);
            let (beta, v) = split_valuation(b, 2);
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let (u, v) = (mod8(&u), mod8(&v));
            let exp = eps(u) * eps(v) + (alpha as u64) * omega(v) + (beta as u64) * omega(u);
            if exp % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let mut sign: i8 = 1;
            if (alpha * beta) % 2 == 1 && ((p - 1) / 2) % 2 == 1 {
                sign = -sign;
            }
            if beta % 2 == 1 {
                sign *= legendre(&u, p);
            }
            if alpha % 2 == 1 {
                sign *= legendre(&v, p);
            }
            sign
        }
    }
}

/// Whether a nonzero rational is a square in the completion `ℚ_v`.
pub fn is_local_square(q: &BigRational, place: Place) -> Result<bool, BrauerError> {
    let d = square_class(q)?;
    Ok(match place {
        Place::Real => d.is_positive(),
        Place::Prime(2) => {
            let (k, u) = split_valuation(&d, 2);
            k % 2 == 0 && mod8(&u) == 1
        }
        Place::Prime(p) => {
            let (k, u) = split_valuation(&d, p);
            k % 2 == 0 && legendre(&u, p) == 1
        }
    })
}

/// Real place, 2, and every prime dividing one of the given rationals.
pub fn relevant_places<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BTreeSet<Place> {
    let mut out: BTreeSet<Place> = [Place::Real, Place::Prime(2)].into_iter().collect();
    for q in values {
        out.extend(prime_support(q).into_iter().map(Place::Prime));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn square_classes() {
        assert_eq!(square_class(&q(12)).unwrap(), BigInt::from(3));
        assert_eq!(square_class(&BigRational::new((-8).into(), 27.into())).unwrap(), BigInt::from(-6));
        assert_eq!(square_class(&q(1260)).unwrap(), BigInt::from(35));
        assert!(square_class(&q(0)).is_err());
    }

    #[test]
    fn textbook_symbols() {
        let h = |a, b, v| hilbert_symbol(&q(a), &q(b), v).unwrap();
        assert_eq!(h(-1, -1, Place::Prime(2)), -1);
        assert_eq!(h(-1, -1, Place::Real), -1);
        assert_eq!(h(-1, -1, Place::Prime(3)), 1);
        assert_eq!(h(2, 3, Place::Prime(3)), -1);
        assert_eq!(h(2, 3, Place::Prime(2)), -1);
        assert_eq!(h(2, 3, Place::Real), 1);
        assert_eq!(h(5, 7, Place::Prime(5)), -1);
        assert_eq!(h(1, -7, Place::Prime(7)), 1);
    }

    #[test]
    fn local_squares() {
        assert!(is_local_square(&q(17), Place::Prime(2)).unwrap());
        assert!(!is_local_square(&q(-1), Place::Prime(2)).unwrap());
        assert!(!is_local_square(&q(-1), Place::Real).unwrap());
        assert!(is_local_square(&q(-1), Place::Prime(5)).unwrap());
        assert!(!is_local_square(&q(3), Place::Prime(3)).unwrap());
    }

    #[test]
    fn place_parsing() {
        assert_eq!("real".parse::<Place>().unwrap(), Place::Real);
        assert_eq!("7".parse::<Place>().unwrap(), Place::Prime(7));
        assert!(matches!("9".parse::<Place>(), Err(BrauerError::NotPrime(9))));
        assert!("x".parse::<Place>().is_err());
    }
}
