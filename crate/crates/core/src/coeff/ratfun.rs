//! Rational functions in one variable and the radical algebra
//! `A₀ = { f/g : f(0) = 0, g(0) = 1 }`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::Rng;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// A reduced fraction `num/den`.
///
/// Canonical form: `gcd(num, den) = 1`; if `den(0) ≠ 0` then `den(0) = 1`,
/// otherwise `den` is monic. Zero is `0/1`. Structural equality is therefore
/// equality of functions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RationalFunction<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RationalFunction<F> {
    /// Builds the canonical form of `f/g`.
    pub fn new(f: Poly<F>, g: Poly<F>) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if f.is_zero() {
            return Ok(Self::from_poly(Poly::zero()));
        }
        let d = Poly::gcd(&f, &g);
        let (f, _) = f.div_rem(&d)?;
        let (g, _) = g.div_rem(&d)?;
        let g0 = g.constant_term();
        let s = if g0.is_zero() { g.leading().inv()? } else { g0.inv()? };
        Ok(RationalFunction {
            num: f.scale(&s),
            den: g.scale(&s),
        })
    }

    pub fn from_poly(f: Poly<F>) -> Self {
        RationalFunction { num: f, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True iff the function lies in `A₀`: it vanishes at 0 and is defined there.
    pub fn in_a0(&self) -> bool {
        self.num.constant_term().is_zero() && !self.den.constant_term().is_zero()
    }

    /// True iff the function is defined at 0 (i.e. lies in `F·1 + A₀`).
    pub fn defined_at_zero(&self) -> bool {
        !self.den.constant_term().is_zero()
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Quasi-inverse in `A₀` for the circle product `x∘y = x + y + xy`: the
    /// unique `y` with `x∘y = y∘x = 0`. For `x = f/g` it is `-f/(g + f)`.
    pub fn a0_quasi_inverse(&self) -> Result<Self> {
        if !self.in_a0() {
            return Err(Error::Invalid(format!("{self} is not in A0")));
        }
        let f = &self.num;
        let g = &self.den;
        Self::new(-f, g + f)
    }

    /// Taylor coefficients at 0 up to (excluding) `order`; requires `den(0) ≠ 0`.
    pub fn taylor(&self, order: usize) -> Result<Vec<F>> {
        let g0 = self.den.constant_term();
        let g0_inv = g0.inv()?;
        let mut out: Vec<F> = Vec::with_capacity(order);
        for n in 0..order {
            // g·h = f  ⇒  h_n = (f_n - Σ_{k≥1} g_k h_{n-k}) / g_0
            let mut acc = self.num.coeff(n);
            for k in 1..=n.min(self.den.coeffs().len().saturating_sub(1)) {
                acc = acc - self.den.coeff(k) * out[n - k].clone();
            }
            out.push(acc * g0_inv.clone());
        }
        Ok(out)
    }

    /// A random element of `A₀` with small coefficients.
    pub fn sample_a0(rng: &mut StdRng) -> Self {
        let fdeg = rng.gen_range(1..=3usize);
        let gdeg = rng.gen_range(0..=2usize);
        let mut f = vec![F::zero()];
        f.extend((0..fdeg).map(|_| F::sample(rng)));
        let mut g = vec![F::one()];
        g.extend((0..gdeg).map(|_| F::sample(rng)));
        Self::new(Poly::new(f), Poly::new(g)).expect("g(0) = 1")
    }
}

impl<F: Field> Add for RationalFunction<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::new(n, &self.den * &o.den).expect("nonzero denominator")
    }
}

impl<F: Field> Sub for RationalFunction<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Field> Neg for RationalFunction<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl<F: Field> Mul for RationalFunction<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominator")
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly<F>| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

/// `F(t)` is itself a field; this lets the generic linear algebra solve
/// systems over it.
impl<F: Field> Field for RationalFunction<F> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn inv(&self) -> Result<Self> {
        self.inverse()
    }

    fn from_bigint(n: &BigInt) -> Self {
        Self::constant(F::from_bigint(n))
    }

    fn sample(rng: &mut StdRng) -> Self {
        let f = Poly::new((0..3).map(|_| F::sample(rng)).collect());
        let mut g = Poly::new((0..2).map(|_| F::sample(rng)).collect());
        if g.is_zero() {
            g = Poly::one();
        }
        Self::new(f, g).expect("nonzero denominator")
    }

    fn name() -> String {
        format!("{}(t)", F::name())
    }
}
