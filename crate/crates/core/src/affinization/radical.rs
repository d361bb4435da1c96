//! Quasi-regularity probes for `A₀` and `M_n(A₀)`, and the non-nilpotent
//! element `(t)_{0,0}` of the affine algebra over `F·1 + A₀`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::Affinization;
use crate::coeff::ratfun::RationalFunction;
use crate::coeff::{A0Algebra, LocalRationalAlgebra};
use crate::error::{Error, Result};
use crate::coeff::poly::Poly;
use crate::linalg::Matrix;
use crate::report::Report;
use crate::scalar::Field;

type Rf<F> = RationalFunction<F>;

/// `x + y + xy = 0` and `x + y + yx = 0`.
pub fn is_quasi_inverse_pair<F: Field>(x: &Rf<F>, y: &Rf<F>) -> bool {
    let s = x.clone() + y.clone();
    (s.clone() + x.clone() * y.clone()).is_zero() && (s + y.clone() * x.clone()).is_zero()
}

/// `y = X/δ` with polynomial `X` and `δ(0) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixQuasiInverse<F: Field> {
    pub num: Matrix<Poly<F>>,
    pub den: Poly<F>,
}

impl<F: Field> MatrixQuasiInverse<F> {
    /// The entries in lowest terms.
    pub fn entries(&self) -> Matrix<Rf<F>> {
        self.num
            .iter()
            .map(|r| r.iter().map(|x| Rf::new(x.clone(), self.den.clone()).expect("δ ≠ 0")).collect())
            .collect()
    }

    pub fn in_a0(&self) -> bool {
        !self.den.constant_term().is_zero() && self.num.iter().flatten().all(|x| x.constant_term().is_zero())
    }
}

/// Product of the distinct denominators of `xs`.
fn common_denominator<'a, F: Field>(xs: impl IntoIterator<Item = &'a Rf<F>>) -> Poly<F> {
    let mut seen: Vec<&Poly<F>> = Vec::new();
    for x in xs {
        if *x.den() != Poly::one() && !seen.contains(&x.den()) {
            seen.push(x.den());
        }
    }
    seen.into_iter().fold(Poly::one(), |acc, d| &acc * d)
}

/// `d·x` as a polynomial, for `d` a multiple of the denominator of `x`.
fn cleared<F: Field>(x: &Rf<F>, d: &Poly<F>) -> Poly<F> {
    let (q, r) = d.div_rem(x.den()).expect("nonzero denominator");
    debug_assert!(r.is_zero());
    x.num() * &q
}

fn poly_mat_mul<F: Field>(a: &Matrix<Poly<F>>, b: &Matrix<Poly<F>>) -> Matrix<Poly<F>> {
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(Poly::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

/// Fraction-free elimination for `p·x = b`: returns `(X, δ)` with
/// `p·X = δ·b` and `δ = ±det p ≠ 0`.
fn bareiss_solve<F: Field>(p: &Matrix<Poly<F>>, b: &Matrix<Poly<F>>) -> Result<(Matrix<Poly<F>>, Poly<F>)> {
    let n = p.len();
    let k = b.first().map_or(0, Vec::len);
    let mut a: Matrix<Poly<F>> = p.iter().zip(b).map(|(r, s)| r.iter().chain(s).cloned().collect()).collect();
    let mut prev = Poly::one();
    for c in 0..n {
        let pivot = (c..n)
            .find(|&r| !a[r][c].is_zero())
            .ok_or_else(|| Error::Invalid("singular matrix".into()))?;
        a.swap(c, pivot);
        for i in c + 1..n {
            for j in c + 1..n + k {
                let v = &(&a[i][j] * &a[c][c]) - &(&a[i][c] * &a[c][j]);
                a[i][j] = v.div_rem(&prev)?.0;
            }
            a[i][c] = Poly::zero();
        }
        prev = a[c][c].clone();
    }
    let det = prev;
    let mut x = vec![vec![Poly::zero(); k]; n];
    for col in 0..k {
        for i in (0..n).rev() {
            let mut acc = &det * &a[i][n + col];
            for j in i + 1..n {
                acc = &acc - &(&a[i][j] * &x[j][col]);
            }
            x[i][col] = acc.div_rem(&a[i][i])?.0;
        }
    }
    Ok((x, det))
}

/// `(1 + m)` with each row multiplied by the common denominator of that row
/// of `m`, together with those multipliers.
fn row_cleared<F: Field>(m: &Matrix<Rf<F>>) -> (Vec<Poly<F>>, Matrix<Poly<F>>) {
    let lambda: Vec<Poly<F>> = m.iter().map(|r| common_denominator(r)).collect();
    let p = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, x)| if i == j { &cleared(x, &lambda[i]) + &lambda[i] } else { cleared(x, &lambda[i]) })
                .collect()
        })
        .collect();
    (lambda, p)
}

/// `(1 + m)` with each column multiplied by the common denominator of that
/// column of `m`, together with those multipliers.
fn col_cleared<F: Field>(m: &Matrix<Rf<F>>) -> (Vec<Poly<F>>, Matrix<Poly<F>>) {
    let n = m.len();
    let gamma: Vec<Poly<F>> = (0..n).map(|j| common_denominator(m.iter().map(|r| &r[j]))).collect();
    let c = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = cleared(&m[i][j], &gamma[j]);
                    if i == j {
                        &x + &gamma[j]
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    (gamma, c)
}

fn scalar_plus<F: Field>(d: &Poly<F>, x: &Matrix<Poly<F>>) -> Matrix<Poly<F>> {
    x.iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, e)| if i == j { e + d } else { e.clone() }).collect())
        .collect()
}

fn is_scaled_diagonal<F: Field>(x: &Matrix<Poly<F>>, d: &Poly<F>, diag: &[Poly<F>]) -> bool {
    x.iter().enumerate().all(|(i, r)| {
        r.iter()
            .enumerate()
            .all(|(j, e)| if i == j { *e == d * &diag[i] } else { e.is_zero() })
    })
}

/// `m + y + m·y = 0` and `m + y + y·m = 0`, i.e. `(1+m)(1+y) = 1 = (1+y)(1+m)`,
/// checked after clearing denominators: with `Λ(1+m) = P`, `(1+m)Γ = C` and
/// `y = X/δ` these read `P(δ + X) = δΛ` and `(δ + X)C = δΓ`.
pub fn is_matrix_quasi_inverse_pair<F: Field>(m: &Matrix<Rf<F>>, y: &MatrixQuasiInverse<F>) -> bool {
    let (lambda, p) = row_cleared(m);
    let (gamma, c) = col_cleared(m);
    let one_plus_y = scalar_plus(&y.den, &y.num);
    is_scaled_diagonal(&poly_mat_mul(&p, &one_plus_y), &y.den, &lambda)
        && is_scaled_diagonal(&poly_mat_mul(&one_plus_y, &c), &y.den, &gamma)
}

/// Solves `(1 + m)·y = -m` over `F(t)` by fraction-free elimination and
/// checks that `y` has entries in `A₀`.
pub fn radical_matrix_quasi_inverse<F: Field>(m: &Matrix<Rf<F>>) -> Result<MatrixQuasiInverse<F>> {
    if let Some(bad) = m.iter().flatten().find(|x| !x.in_a0()) {
        return Err(Error::Invalid(format!("entry {bad} is not in A0")));
    }
    let (lambda, p) = row_cleared(m);
    let b: Matrix<Poly<F>> = m
        .iter()
        .zip(&lambda)
        .map(|(r, l)| r.iter().map(|x| -&cleared(x, l)).collect())
        .collect();
    let (num, den) = bareiss_solve(&p, &b)?;
    let y = MatrixQuasiInverse { num, den };
    assert!(y.in_a0(), "quasi-inverse left A0");
    Ok(y)
}

pub fn random_a0_matrix<F: Field>(rng: &mut StdRng, n: usize) -> Matrix<Rf<F>> {
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        <Rf<F> as Field>::zero()
                    } else {
                        Rf::sample_a0(rng)
                    }
                })
                .collect()
        })
        .collect()
}

/// The smallest `k ≤ n` for which `((t)_{0,0})ᵏ ≠ (tᵏ)_{0,0}` or the power
/// vanishes, if any.
pub fn non_nil_failure<F: Field>(aff: &Affinization<F, LocalRationalAlgebra>, n: u32) -> Option<u32> {
    let t = (F::zero(), Rf::t());
    let x = aff.unit(t, 0, 0);
    let mut power = x.clone();
    for k in 1..=n {
        if k > 1 {
            power = aff.mul(&power, &x);
        }
        let tk = (F::zero(), Rf::from_poly(Poly::monomial(F::one(), k as usize)));
        let expected = aff.unit(tk, 0, 0);
        if aff.eq_finite(&power, &expected) != Some(true) || power.matrix().finite_part().is_empty() {
            return Some(k);
        }
    }
    None
}

/// Two-sided quasi-inverses for `elements` random members of `A₀` and for
/// `matrices` random square matrices over `A₀` of size `1..=max_size`, and
/// non-nilpotence of `(t)_{0,0}` through the power `powers`.
pub fn radical_check<F: Field>(elements: usize, matrices: usize, max_size: usize, powers: u32, seed: u64) -> Report {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = Report::new();

    let mut fail = None;
    for _ in 0..elements {
        let x: Rf<F> = Rf::sample_a0(&mut rng);
        let ok = x.a0_quasi_inverse().is_ok_and(|y| y.in_a0() && is_quasi_inverse_pair(&x, &y));
        if !ok {
            fail = Some(x.to_string());
            break;
        }
    }
    report.push(
        "A0 quasi-inverses",
        fail.is_none(),
        fail.map_or_else(|| format!("{elements} random elements"), |x| format!("failed at {x}")),
    );

    let mut fail = None;
    for _ in 0..matrices {
        let n = rng.gen_range(1..=max_size);
        let m = random_a0_matrix::<F>(&mut rng, n);
        let ok = radical_matrix_quasi_inverse(&m).is_ok_and(|y| is_matrix_quasi_inverse_pair(&m, &y));
        if !ok {
            fail = Some(format!("{n}x{n}"));
            break;
        }
    }
    report.push(
        "matrix quasi-inverses",
        fail.is_none(),
        fail.map_or_else(
            || format!("{matrices} random matrices of size <= {max_size}"),
            |x| format!("failed at a {x} matrix"),
        ),
    );

    let aff = Affinization::new(LocalRationalAlgebra::new(A0Algebra::default())).expect("unital");
    let fail = non_nil_failure::<F>(&aff, powers);
    report.push(
        "non-nil witness",
        fail.is_none(),
        fail.map_or_else(
            || format!("((t)_{{0,0}})^n = (t^n)_{{0,0}} != 0 for n <= {powers}"),
            |k| format!("power {k}"),
        ),
    );
    report
}
