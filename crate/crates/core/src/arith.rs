//! Multiplicative functions on ideals and a Dirichlet coefficient algebra.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{IdealFactorization, IdealTable};
use crate::scalar::{Coefficient, Real};

/// Möbius function on ideals.
pub fn moebius(i: &IdealFactorization) -> i8 {
    if i.is_squarefree() {
        if i.factors().len() % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

/// A complex parameter `z = re + i·im`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexParam<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> ComplexParam<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn real(re: T) -> Self {
        Self { re, im: T::zero() }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_complex(self) -> Complex<T> {
        Complex::new(self.re, self.im)
    }
}

impl<T: Real> From<ComplexParam<T>> for Complex<T> {
    fn from(z: ComplexParam<T>) -> Self {
        z.to_complex()
    }
}

/// `n^z = exp(z log n)`.
pub fn norm_pow<T: Real>(n: u64, z: Complex<T>) -> Complex<T> {
    if n == 1 {
        return Complex::new(T::one(), T::zero());
    }
    (z * T::lit(n as f64).ln()).exp()
}

fn geometric_threshold<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon())
}

/// `σ_{K,z}(P^k) = 1 + w + … + w^k` with `w = N(P)^z`, via the closed form.
fn sigma_prime_power<T: Real>(norm: u64, k: u32, z: Complex<T>) -> Complex<T> {
    let w = norm_pow(norm, z);
    let one = Complex::new(T::one(), T::zero());
    if (w - one).norm() < geometric_threshold::<T>() {
        return Complex::new(T::lit((k + 1) as f64), T::zero());
    }
    (w.powu(k + 1) - one) / (w - one)
}

/// `σ_{K,z}(I) = Σ_{I₁ | I} N(I₁)^z`.
pub fn sigma_z<T: Real>(i: &IdealFactorization, z: ComplexParam<T>) -> Complex<T> {
    let z = z.to_complex();
    i.factors()
        .iter()
        .fold(Complex::new(T::one(), T::zero()), |acc, &(p, k)| {
            acc * sigma_prime_power(p.norm(), k, z)
        })
}

/// `σ_{K,k}(I)` for a nonnegative integer exponent, exactly.
pub fn sigma_exact(i: &IdealFactorization, k: u32) -> Result<i128> {
    let mut total: i128 = 1;
    for &(p, e) in i.factors() {
        let q = (p.norm() as i128).checked_pow(k).ok_or(Error::Overflow("sigma"))?;
        let mut local: i128 = 0;
        let mut term: i128 = 1;
        for j in 0..=e {
            if j > 0 {
                term = term.checked_mul(q).ok_or(Error::Overflow("sigma"))?;
            }
            local = local.checked_add(term).ok_or(Error::Overflow("sigma"))?;
        }
        total = total.checked_mul(local).ok_or(Error::Overflow("sigma"))?;
    }
    Ok(total)
}

/// Ramanujan sum `C_J(I) = Σ_{I₁ | J, I₁ | I} N(I₁) μ(J / I₁)`.
///
/// Evaluated prime by prime: with `P^a ∥ J` and `P^b ∥ I` the local factor is
/// `φ(P^a)` if `a <= b`, `-N(P)^b` if `a = b + 1` and `0` otherwise.
pub fn ramanujan_sum(j: &IdealFactorization, i: &IdealFactorization) -> Result<i64> {
    if j.field() != i.field() {
        return Err(Error::MixedFields);
    }
    let mut total: i64 = 1;
    for &(p, a) in j.factors() {
        let b = i.exponent_of(&p);
        let q = p.norm() as i64;
        let local = if a <= b {
            let qa1 = q.checked_pow(a - 1).ok_or(Error::Overflow("ramanujan sum"))?;
            qa1.checked_mul(q - 1).ok_or(Error::Overflow("ramanujan sum"))?
        } else if a == b + 1 {
            -q.checked_pow(b).ok_or(Error::Overflow("ramanujan sum"))?
        } else {
            return Ok(0);
        };
        total = total.checked_mul(local).ok_or(Error::Overflow("ramanujan sum"))?;
    }
    Ok(total)
}

/// The defining divisor sum, term by term.
pub fn ramanujan_sum_naive(j: &IdealFactorization, i: &IdealFactorization) -> Result<i64> {
    let g = j.gcd(i)?;
    let mut total: i64 = 0;
    for d in g.divisors() {
        let quotient = j.quotient(&d)?.expect("divisor of gcd divides J");
        let term = (d.norm() as i64)
            .checked_mul(moebius(&quotient) as i64)
            .ok_or(Error::Overflow("ramanujan sum"))?;
        total = total.checked_add(term).ok_or(Error::Overflow("ramanujan sum"))?;
    }
    Ok(total)
}

fn classical_moebius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Classical `c_n(m)` as the divisor sum `Σ_{d | (n, m)} d μ(n/d)` and as
/// the exponential sum over reduced residues mod `n`.
pub fn rational_ramanujan_forms(n: u64, m: u64) -> (i64, Complex<f64>) {
    assert!(n >= 1, "c_n(m) needs n >= 1");
    let divisor_form: i64 = (1..=n)
        .filter(|d| n % d == 0 && (m == 0 || m % d == 0))
        .map(|d| d as i64 * classical_moebius(n / d))
        .sum();
    let mut sum = Complex::new(0.0f64, 0.0);
    for j in (1..=n).filter(|&j| crate::primes::gcd(j, n) == 1) {
        let angle = std::f64::consts::TAU * ((m % n) * j % n) as f64 / n as f64;
        sum += Complex::new(angle.cos(), angle.sin());
    }
    (divisor_form, sum)
}

/// `c_n(m)`; panics if the two forms of [`rational_ramanujan_forms`] disagree.
pub fn rational_ramanujan_oracle(n: u64, m: u64) -> i64 {
    let (divisor_form, sum) = rational_ramanujan_forms(n, m);
    assert!(
        forms_agree(divisor_form, sum),
        "c_{n}({m}): exponential sum {sum} != divisor sum {divisor_form}"
    );
    divisor_form
}

pub fn forms_agree(divisor_form: i64, sum: Complex<f64>) -> bool {
    (sum.re - divisor_form as f64).abs() < 1e-6 && sum.im.abs() < 1e-6
}

/// Dirichlet coefficients `c[1..=N]`; index 0 is unused and kept at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCoeffs<T> {
    c: Vec<T>,
}

impl<T: Coefficient> DirichletCoeffs<T> {
    pub fn zeros(bound: usize) -> Self {
        Self {
            c: vec![T::zero(); bound + 1],
        }
    }

    /// The identity `δ = (1, 0, 0, …)`.
    pub fn delta(bound: usize) -> Self {
        let mut d = Self::zeros(bound);
        if bound >= 1 {
            d.c[1] = T::one();
        }
        d
    }

    pub fn ones(bound: usize) -> Self {
        Self::from_fn(bound, |_| T::one())
    }

    pub fn from_fn(bound: usize, mut f: impl FnMut(u64) -> T) -> Self {
        let mut c = Vec::with_capacity(bound + 1);
        c.push(T::zero());
        for n in 1..=bound {
            c.push(f(n as u64));
        }
        Self { c }
    }

    /// From a slice indexed like the table arrays (index 0 ignored).
    pub fn from_slice(values: &[T]) -> Self {
        let mut c = values.to_vec();
        if c.is_empty() {
            c.push(T::zero());
        }
        c[0] = T::zero();
        Self { c }
    }

    pub fn bound(&self) -> usize {
        self.c.len() - 1
    }

    pub fn get(&self, n: usize) -> &T {
        &self.c[n]
    }

    pub fn set(&mut self, n: usize, v: T) {
        self.c[n] = v;
    }

    pub fn as_slice(&self) -> &[T] {
        &self.c[1..]
    }

    fn check_bound(&self, other: &Self) -> Result<()> {
        if self.bound() == other.bound() {
            Ok(())
        } else {
            Err(Error::BoundMismatch(self.bound(), other.bound()))
        }
    }

    /// Dirichlet convolution `(a ∗ b)[n] = Σ_{d | n} a[d] b[n/d]`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_bound(other)?;
        let n = self.bound();
        let mut out = Self::zeros(n);
        for d in 1..=n {
            if self.c[d].is_zero() {
                continue;
            }
            let mut m = 1;
            while d * m <= n {
                if !other.c[m].is_zero() {
                    let term = self.c[d]
                        .checked_mul_c(&other.c[m])
                        .ok_or(Error::Overflow("convolution"))?;
                    out.c[d * m] = out.c[d * m]
                        .checked_add_c(&term)
                        .ok_or(Error::Overflow("convolution"))?;
                }
                m += 1;
            }
        }
        Ok(out)
    }

    /// Dirichlet inverse truncated at the bound.
    pub fn invert(&self) -> Result<Self> {
        let n = self.bound();
        let lead_inv = self
            .c
            .get(1)
            .and_then(|c| c.try_inverse())
            .ok_or(Error::NotInvertible)?;
        let mut acc = Self::zeros(n);
        let mut out = Self::zeros(n);
        for d in 1..=n {
            out.c[d] = if d == 1 {
                lead_inv.clone()
            } else {
                (-acc.c[d].clone())
                    .checked_mul_c(&lead_inv)
                    .ok_or(Error::Overflow("inverse"))?
            };
            if out.c[d].is_zero() {
                continue;
            }
            let mut m = 2;
            while d * m <= n {
                if !self.c[m].is_zero() {
                    let term = self.c[m].checked_mul_c(&out.c[d]).ok_or(Error::Overflow("inverse"))?;
                    acc.c[d * m] = acc.c[d * m].checked_add_c(&term).ok_or(Error::Overflow("inverse"))?;
                }
                m += 1;
            }
        }
        Ok(out)
    }

    /// `self^k` under convolution.
    pub fn power(&self, k: u32) -> Result<Self> {
        let mut out = Self::delta(self.bound());
        for _ in 0..k {
            out = out.convolve(self)?;
        }
        Ok(out)
    }

    /// Coefficients of `F(ks)`: `c'[n^k] = c[n]`, zero elsewhere.
    pub fn dilate(&self, k: u32) -> Self {
        let bound = self.bound();
        let mut out = Self::zeros(bound);
        for n in 1..=bound {
            match (n as u64).checked_pow(k) {
                Some(m) if m as usize <= bound => out.c[m as usize] = self.c[n].clone(),
                _ => break,
            }
        }
        out
    }

    pub fn map_indexed(&self, mut f: impl FnMut(u64, &T) -> T) -> Self {
        let mut out = Self::zeros(self.bound());
        for n in 1..=self.bound() {
            out.c[n] = f(n as u64, &self.c[n]);
        }
        out
    }
}

impl DirichletCoeffs<i128> {
    /// `c[n] · n^k`, exactly.
    pub fn twist_by_power(&self, k: u32) -> Result<Self> {
        let mut out = Self::zeros(self.bound());
        for n in 1..=self.bound() {
            let w = (n as i128).checked_pow(k).ok_or(Error::Overflow("twist"))?;
            out.c[n] = self.c[n].checked_mul(w).ok_or(Error::Overflow("twist"))?;
        }
        Ok(out)
    }
}

/// Coefficients of `ζ_K(s - z)`: `c[n] = a_K(n) · n^z`.
pub fn coeffs_of_zeta_k<T: Real>(table: &IdealTable, shift: ComplexParam<T>) -> DirichletCoeffs<Complex<T>>
where
    Complex<T>: Coefficient,
{
    let z = shift.to_complex();
    DirichletCoeffs::from_fn(table.bound() as usize, |n| {
        norm_pow(n, z).scale(T::lit(table.count(n) as f64))
    })
}

/// Exact coefficients of `ζ_K(s - k)` for a nonnegative integer shift.
pub fn coeffs_of_zeta_k_exact(table: &IdealTable, k: u32) -> Result<DirichletCoeffs<i128>> {
    let base = DirichletCoeffs::from_fn(table.bound() as usize, |n| table.count(n) as i128);
    base.twist_by_power(k)
}

/// Exact coefficients of `1 / ζ_K(s)`: `n ↦ Σ_{N(J)=n} μ(J)`.
pub fn coeffs_of_inverse_zeta_k(table: &IdealTable) -> DirichletCoeffs<i128> {
    DirichletCoeffs::from_fn(table.bound() as usize, |n| table.mu_sums()[n as usize] as i128)
}
