//! Brute-force local solubility, independent of the closed Hilbert symbol
//! formulas.
//!
//! For squarefree `a, b` (valuations at most one), `z² = ax² + by²` has a
//! nontrivial solution in `ℚ_p` iff it has a primitive solution modulo `p³`
//! for odd `p` and modulo `2⁶` for `p = 2`. Primitive pairs `(x, y)` are
//! enumerated up to unit scaling: `(1, y)` for all `y` and `(x, 1)` for
//! `p | x`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::local::{square_class, Place};
use super::BrauerError;

pub fn modulus_for(p: u64) -> u64 {
    if p == 2 {
        64
    } else {
        p * p * p
    }
}

/// `+1` if `z² = ax² + by²` is nontrivially soluble over `ℚ_v`, else `−1`.
pub fn solubility_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8, BrauerError> {
    let a = square_class(a)?;
    let b = square_class(b)?;
    Ok(match place {
        // a real zero exists unless the right-hand side is negative definite
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => soluble_mod(&a, &b, p),
    })
}

fn soluble_mod(a: &BigInt, b: &BigInt, p: u64) -> i8 {
    let m = modulus_for(p);
    let mb = BigInt::from(m);
    let a = a.mod_floor(&mb).to_u64().unwrap();
    let b = b.mod_floor(&mb).to_u64().unwrap();
    let mut squares = vec![false; m as usize];
    for z in 0..m {
        squares[((z * z) % m) as usize] = true;
    }
    let value = |x: u64, y: u64| ((a * (x * x % m)) % m + (b * (y * y % m)) % m) % m;
    let hit = (0..m).any(|y| squares[value(1, y) as usize])
        || (0..m).step_by(p as usize).any(|x| squares[value(x, 1) as usize]);
    if hit {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn known_values() {
        assert_eq!(solubility_symbol(&q(-1), &q(-1), Place::Prime(2)).unwrap(), -1);
        assert_eq!(solubility_symbol(&q(2), &q(3), Place::Prime(3)).unwrap(), -1);
        assert_eq!(solubility_symbol(&q(-1), &q(-1), Place::Prime(3)).unwrap(), 1);
        assert_eq!(solubility_symbol(&q(-1), &q(-1), Place::Real).unwrap(), -1);
    }

    #[test]
    fn agrees_with_formula_on_all_two_adic_classes() {
        let reps = [1, 3, 5, 7, 2, 6, 10, 14, -1, -3, -2, -6];
        for &a in &reps {
            for &b in &reps {
                let f = super::super::hilbert_symbol(&q(a), &q(b), Place::Prime(2)).unwrap();
                let o = solubility_symbol(&q(a), &q(b), Place::Prime(2)).unwrap();
                assert_eq!(f, o, "({a},{b})_2");
            }
        }
    }
}
