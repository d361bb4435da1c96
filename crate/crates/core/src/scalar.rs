//! Exact ground fields.
//!
//! Everything in this crate is generic over a [`Field`]. Two families ship:
//! the rationals [`Q`] (arbitrary precision, the default) and the prime
//! fields [`Gf<P>`].

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use crate::error::{Error, Result};

/// An exact commutative field.
pub trait Field:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Multiplicative inverse; fails on zero.
    fn inv(&self) -> Result<Self>;

    fn from_bigint(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    /// A small random element, used by the randomized probes.
    fn sample(rng: &mut StdRng) -> Self;

    /// A random nonzero element.
    fn sample_nonzero(rng: &mut StdRng) -> Self {
        loop {
            let x = Self::sample(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Parses an integer or fraction literal such as `3`, `-2` or `5/7`.
    fn parse_literal(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            msg: format!("invalid scalar literal `{s}`"),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s.trim(), None),
        };
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let x = Self::from_bigint(&n);
        match den {
            None => Ok(x),
            Some(d) => {
                let d: BigInt = d.parse().map_err(|_| bad())?;
                x.div(&Self::from_bigint(&d))
            }
        }
    }

    /// Name used in reports, e.g. `Q` or `GF(5)`.
    fn name() -> String;
}

/// The rational numbers.
pub type Q = BigRational;

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn sample(rng: &mut StdRng) -> Self {
        let n: i64 = rng.gen_range(-3..=3);
        if rng.gen_bool(0.2) {
            let d: i64 = rng.gen_range(1..=3);
            BigRational::new(n.into(), d.into())
        } else {
            BigRational::from_integer(n.into())
        }
    }

    fn name() -> String {
        "Q".into()
    }
}

/// The prime field `Z/PZ`. `P` must be prime; this is checked when a value is
/// first built.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf<const P: u64>(u64);

impl<const P: u64> Gf<P> {
    pub fn new(v: u64) -> Self {
        debug_assert!(is_prime(P), "GF modulus {P} is not prime");
        Gf(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc = 1u128;
        let p = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Gf(acc as u64)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl<const P: u64> Add for Gf<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Gf(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Gf<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const P: u64> Neg for Gf<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Gf(P - self.0)
        }
    }
}

impl<const P: u64> Mul for Gf<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Gf(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Debug for Gf<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Gf<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Gf<P> {
    fn zero() -> Self {
        Gf(0)
    }

    fn one() -> Self {
        Gf(1 % P)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn inv(&self) -> Result<Self> {
        if self.0 == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.pow(P - 2))
        }
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Gf::new(r.to_u64().expect("residue fits in u64"))
    }

    fn sample(rng: &mut StdRng) -> Self {
        Gf::new(rng.gen_range(0..P))
    }

    fn name() -> String {
        format!("GF({P})")
    }
}

/// True when the printed form carries a minus sign; used to print `a - b`
/// instead of `a + -b`.
pub(crate) fn display_negative<F: Field>(c: &F) -> bool {
    c.to_string().starts_with('-')
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn rational_sum() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(matches!(<Q as Field>::zero().inv(), Err(Error::DivisionByZero)));
        assert!(matches!(Gf::<5>::new(0).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn gf5_product() {
        assert_eq!(Gf::<5>::new(3) * Gf::<5>::new(4), Gf::<5>::new(2));
    }

    #[test]
    fn literals() {
        assert_eq!(Q::parse_literal("5/7").unwrap(), q(5, 7));
        assert_eq!(Q::parse_literal("-2").unwrap(), q(-2, 1));
        assert_eq!(Gf::<7>::parse_literal("1/2").unwrap(), Gf::<7>::new(4));
        assert!(Q::parse_literal("1/0").is_err());
        assert!(Q::parse_literal("x").is_err());
    }

    proptest! {
        #[test]
        fn gf101_inverse(a in 1u64..101) {
            let x = Gf::<101>::new(a);
            prop_assert_eq!(x * x.inv().unwrap(), Gf::<101>::one());
        }

        #[test]
        fn gf101_distributive(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
            let (a, b, c) = (Gf::<101>::new(a), Gf::<101>::new(b), Gf::<101>::new(c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a - a, Gf::<101>::zero());
        }

        #[test]
        fn rational_inverse(n in -50i64..50, d in 1i64..50) {
            let x = q(n, d);
            prop_assume!(n != 0);
            prop_assert_eq!(x.clone() * Field::inv(&x).unwrap(), <Q as Field>::one());
        }
    }
}
