//! ζ(s), Dirichlet L(s, χ) and Dedekind ζ_K(s) for quadratic and cubic fields.
//!
//! * ζ(s) for `Re(s) >= 0` comes from the alternating η series, accelerated
//!   with the Borwein (Cohen–Rodriguez Villegas–Zagier) weights.
//! * L(s, χ) sums whole periods of χ directly and closes the tail of each
//!   residue class with an Euler–Maclaurin expansion; the character sum over a
//!   period vanishes, which keeps the expansion valid on `Re(s) >= 0`.
//! * ζ_K factors as ζ·L for quadratic fields and ζ·L·L̄ for normal cubic
//!   fields. Non-normal cubic fields fall back to a truncated Euler product on
//!   `Re(s) > 1`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{DirichletCharacter, FieldKind, NumberField};
use crate::ideals::IdealTable;
use crate::primes::primes_up_to;
use crate::scalar::Real;

/// Relative tolerance documented for [`riemann_zeta`] in double precision.
pub const ZETA_TOLERANCE: f64 = 1e-10;
/// Relative tolerance documented for [`dirichlet_l`] in double precision.
pub const L_TOLERANCE: f64 = 1e-8;
/// Default prime bound of the Euler product fallback.
pub const DEFAULT_EULER_PRIME_BOUND: u64 = 200_000;

const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Truncation and acceleration parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalParams {
    /// Number of accelerated η terms.
    pub eta_terms: usize,
    /// Whole periods of χ summed directly before the Euler–Maclaurin tail.
    pub l_periods: usize,
    /// Bernoulli correction terms in the tail (at most 10).
    pub em_terms: usize,
}

impl EvalParams {
    /// Defaults sized to the precision of `T` and the height `|Im s|`.
    pub fn for_scalar<T: Real>(s: Complex<T>) -> Self {
        let eps = T::epsilon().to_f64().unwrap();
        let t = s.im.abs().to_f64().unwrap();
        let needed = -eps.ln() + std::f64::consts::FRAC_PI_2 * t + (1.0 + 2.0 * t).ln() + 3f64.ln();
        let eta_terms = (needed / (3.0 + 8f64.sqrt()).ln()).ceil() as usize + 4;
        let l_periods = if eps < 1e-10 { 24 } else { 12 } + (t / 2.0).ceil() as usize;
        Self {
            eta_terms: eta_terms.max(8),
            l_periods,
            em_terms: if eps < 1e-10 { 10 } else { 5 },
        }
    }

    /// Every parameter halved, for stability checks.
    pub fn halved(self) -> Self {
        Self {
            eta_terms: (self.eta_terms / 2).max(2),
            l_periods: (self.l_periods / 2).max(1),
            em_terms: (self.em_terms / 2).max(1),
        }
    }
}

fn c<T: Real>(re: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::zero())
}

fn pow_neg<T: Real>(base: T, s: Complex<T>) -> Complex<T> {
    (-s * base.ln()).exp()
}

/// η(s) by Borwein's algorithm with `n` terms.
fn eta<T: Real>(s: Complex<T>, n: usize) -> Complex<T> {
    // d_k = n Σ_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), built from the term ratio.
    let mut d = Vec::with_capacity(n + 1);
    let mut term = T::one();
    let mut acc = T::one();
    d.push(acc);
    for i in 0..n {
        let ratio = T::lit(4.0 * (n + i) as f64 * (n - i) as f64 / ((2 * i + 1) as f64 * (2 * i + 2) as f64));
        term = term * ratio;
        acc = acc + term;
        d.push(acc);
    }
    let dn = d[n];
    let mut sum = Complex::new(T::zero(), T::zero());
    for k in 0..n {
        let weight = (d[k] - dn) / dn;
        let term = pow_neg(T::lit((k + 1) as f64), s) * weight;
        if k % 2 == 0 {
            sum = sum - term;
        } else {
            sum = sum + term;
        }
    }
    sum
}

/// Riemann ζ(s) on `Re(s) >= 0`, `s ≠ 1`.
pub fn riemann_zeta<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    riemann_zeta_with(s, EvalParams::for_scalar(s))
}

pub fn riemann_zeta_with<T: Real>(s: Complex<T>, params: EvalParams) -> Result<Complex<T>> {
    if !(s.re.is_finite() && s.im.is_finite()) || s.re < T::zero() {
        return Err(Error::OutOfDomain(format!("zeta needs Re(s) >= 0, got {s}")));
    }
    let one = Complex::new(T::one(), T::zero());
    if s == one {
        return Err(Error::Pole);
    }
    let denom = one - (one - s).expf(T::lit(2.0));
    if denom.norm() < T::epsilon().sqrt() {
        return Err(Error::OutOfDomain(format!("1 - 2^(1-s) vanishes at s = {s}")));
    }
    Ok(eta(s, params.eta_terms) / denom)
}

/// `(e^u - 1) / u`, stable near zero.
fn expm1_over<T: Real>(u: Complex<T>) -> Complex<T> {
    if u.norm() < T::lit(1e-4) {
        let one = c::<T>(1.0);
        one + u / T::lit(2.0) + u * u / T::lit(6.0) + u * u * u / T::lit(24.0)
    } else {
        (u.exp() - c::<T>(1.0)) / u
    }
}

/// `Σ_{k>=0} (w + k)^{-s}` minus its divergent constant `1/(s-1)`, for large `w`.
fn hurwitz_tail_regular<T: Real>(s: Complex<T>, w: T, em_terms: usize) -> Complex<T> {
    let lw = w.ln();
    // (w^{1-s} - 1)/(s - 1)
    let u = (c::<T>(1.0) - s) * lw;
    let mut out = -expm1_over(u) * lw;
    let w_s = pow_neg(w, s);
    out = out + w_s / T::lit(2.0);
    // B_{2j}/(2j)! · s(s+1)…(s+2j-2) · w^{-s-2j+1}
    let mut poch = s;
    let mut factorial = T::lit(2.0);
    let mut wp = w_s / w;
    for j in 1..=em_terms.min(BERNOULLI_EVEN.len()) {
        out = out + poch * wp * (T::lit(BERNOULLI_EVEN[j - 1]) / factorial);
        let a = T::lit((2 * j - 1) as f64);
        let b = T::lit((2 * j) as f64);
        poch = poch * (s + Complex::new(a, T::zero())) * (s + Complex::new(b, T::zero()));
        factorial = factorial * T::lit(((2 * j + 1) * (2 * j + 2)) as f64);
        wp = wp / (w * w);
    }
    out
}

fn check_character(chi: &DirichletCharacter) -> Result<()> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    Ok(())
}

/// Dirichlet L(s, χ) for non-principal χ on `Re(s) >= 0`.
pub fn dirichlet_l<T: Real>(s: Complex<T>, chi: &DirichletCharacter) -> Result<Complex<T>> {
    dirichlet_l_with(s, chi, EvalParams::for_scalar(s))
}

pub fn dirichlet_l_with<T: Real>(s: Complex<T>, chi: &DirichletCharacter, params: EvalParams) -> Result<Complex<T>> {
    check_character(chi)?;
    if !(s.re.is_finite() && s.im.is_finite()) || s.re < T::zero() {
        return Err(Error::OutOfDomain(format!("L needs Re(s) >= 0, got {s}")));
    }
    let q = chi.modulus();
    let periods = params.l_periods.max(1) as u64;
    let mut direct = Complex::new(T::zero(), T::zero());
    for n in 1..=periods * q {
        if chi.exponent(n).is_some() {
            direct = direct + chi.value::<T>(n) * pow_neg(T::lit(n as f64), s);
        }
    }
    // Σ_a χ(a) q^{-s} ζ(s, K + a/q); the 1/(s-1) parts cancel since Σ_a χ(a) = 0.
    let qs = pow_neg(T::lit(q as f64), s);
    let mut tail = Complex::new(T::zero(), T::zero());
    for a in 1..=q {
        if chi.exponent(a).is_none() {
            continue;
        }
        let w = T::lit(periods as f64) + T::lit(a as f64) / T::lit(q as f64);
        tail = tail + chi.value::<T>(a) * hurwitz_tail_regular(s, w, params.em_terms);
    }
    Ok(direct + tail * qs)
}

/// `L(0, χ) = -(1/q) Σ_{a<q} χ(a) a`, identically zero for even χ.
pub fn l_at_zero<T: Real>(chi: &DirichletCharacter) -> Result<Complex<T>> {
    check_character(chi)?;
    if chi.is_even() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    let q = chi.modulus();
    let sum = (1..q).fold(Complex::new(T::zero(), T::zero()), |acc, a| {
        acc + chi.value::<T>(a) * T::lit(a as f64)
    });
    Ok(-sum / T::lit(q as f64))
}

/// A Dedekind zeta value with its error allowance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaValue<T> {
    pub value: Complex<T>,
    /// Relative error bound: the documented tolerance on the analytic routes,
    /// a crude Euler product tail bound on the fallback.
    pub tail_bound: T,
    /// Prime bound of the Euler product, when that route was used.
    pub prime_bound: Option<u64>,
}

/// ζ_K(s).
pub fn zeta_k<T: Real>(field: &NumberField, s: Complex<T>) -> Result<ZetaValue<T>> {
    zeta_k_with(field, s, EvalParams::for_scalar(s), DEFAULT_EULER_PRIME_BOUND)
}

pub fn zeta_k_with<T: Real>(
    field: &NumberField,
    s: Complex<T>,
    params: EvalParams,
    prime_bound: u64,
) -> Result<ZetaValue<T>> {
    let analytic = |v: Complex<T>, tol: f64| ZetaValue {
        value: v,
        tail_bound: T::lit(tol),
        prime_bound: None,
    };
    match field.kind() {
        FieldKind::Rational => Ok(analytic(riemann_zeta_with(s, params)?, ZETA_TOLERANCE)),
        FieldKind::QuadraticImaginary | FieldKind::QuadraticReal => {
            let chi = field.character().expect("quadratic fields carry χ");
            let z = riemann_zeta_with(s, params)?;
            let l = if s.re.is_zero() && s.im.is_zero() {
                l_at_zero(chi)?
            } else {
                dirichlet_l_with(s, chi, params)?
            };
            Ok(analytic(z * l, ZETA_TOLERANCE + L_TOLERANCE))
        }
        FieldKind::CubicNormal => {
            let chi = field.character().expect("normal cubic fields carry χ");
            let z = riemann_zeta_with(s, params)?;
            if s.re.is_zero() && s.im.is_zero() {
                return Ok(analytic(z * l_at_zero(chi)? * l_at_zero(&chi.conjugate())?, 0.0));
            }
            let l = dirichlet_l_with(s, chi, params)?;
            let lbar = dirichlet_l_with(s, &chi.conjugate(), params)?;
            Ok(analytic(z * l * lbar, ZETA_TOLERANCE + 2.0 * L_TOLERANCE))
        }
        FieldKind::CubicNonNormal => euler_product(field, s, prime_bound),
    }
}

/// Truncated Euler product `Π_{p <= bound} Π_{P | p} (1 - N(P)^{-s})^{-1}`.
///
/// The reported `tail_bound` is `exp(b) - 1` with
/// `b = Σ_{n > bound} d·n^{-σ}/(1 - 2^{-σ}) <= d·bound^{1-σ}/((σ-1)(1 - 2^{-σ}))`,
/// which bounds the relative error of the truncation.
pub fn euler_product<T: Real>(field: &NumberField, s: Complex<T>, prime_bound: u64) -> Result<ZetaValue<T>> {
    let sigma = s.re.to_f64().unwrap();
    if sigma <= 1.0 {
        return Err(Error::UnsupportedContinuation(sigma));
    }
    let one = Complex::new(T::one(), T::zero());
    let mut log_sum = Complex::new(T::zero(), T::zero());
    for p in primes_up_to(prime_bound) {
        for q in field.split_prime(p)? {
            let w = pow_neg(T::lit(q.norm() as f64), s);
            log_sum = log_sum - (one - w).ln();
        }
    }
    let d = field.degree() as f64;
    let b = d * (prime_bound as f64).powf(1.0 - sigma) / ((sigma - 1.0) * (1.0 - 2f64.powf(-sigma)));
    Ok(ZetaValue {
        value: log_sum.exp(),
        tail_bound: T::lit(b.exp_m1()),
        prime_bound: Some(prime_bound),
    })
}

/// Constants entering the asymptotic formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldConstants<T> {
    /// Residue of ζ_K at s = 1.
    pub rho: T,
    pub zeta2: T,
    pub zeta0: T,
    /// Ideal counting error exponent, `(n - 1)/(n + 1)` by Landau.
    pub alpha: T,
    /// Whether `rho` came from an empirical fit rather than an L-value.
    pub rho_empirical: bool,
}

/// ρ_K from L-values: `L(1, χ)` for quadratic, `|L(1, χ₁)|²` for normal cubic fields.
pub fn rho_k<T: Real>(field: &NumberField) -> Result<T> {
    let s = Complex::new(T::one(), T::zero());
    match field.kind() {
        FieldKind::Rational => Ok(T::one()),
        FieldKind::QuadraticImaginary | FieldKind::QuadraticReal => Ok(dirichlet_l(s, field.character().unwrap())?.re),
        FieldKind::CubicNormal => Ok(dirichlet_l(s, field.character().unwrap())?.norm_sqr()),
        FieldKind::CubicNonNormal => Err(Error::UnsupportedContinuation(1.0)),
    }
}

/// Least-squares slope through the origin of `y ↦ #{I : N(I) <= y}` over an
/// evenly spaced grid of `points` abscissae up to the table bound.
pub fn rho_empirical(table: &IdealTable, points: usize) -> Result<f64> {
    if points == 0 {
        return Err(Error::Degenerate("empty grid".into()));
    }
    let bound = table.bound();
    let (mut sxy, mut sxx) = (0.0f64, 0.0f64);
    for k in 1..=points as u64 {
        let y = bound * k / points as u64;
        if y == 0 {
            continue;
        }
        let a = table.ideal_count_up_to(y)? as f64;
        sxy += a * y as f64;
        sxx += (y as f64) * (y as f64);
    }
    if sxx == 0.0 {
        return Err(Error::Degenerate("grid has no positive abscissae".into()));
    }
    Ok(sxy / sxx)
}

/// ζ_K(0): `ζ(0) L(0, χ)` for quadratic fields. Every cubic field has
/// `r₁ + r₂ >= 2`, so ζ_K vanishes at 0.
pub fn zeta_k_at_zero<T: Real>(field: &NumberField) -> Result<T> {
    match field.kind() {
        FieldKind::Rational => Ok(T::lit(-0.5)),
        FieldKind::QuadraticReal | FieldKind::CubicNormal | FieldKind::CubicNonNormal => Ok(T::zero()),
        FieldKind::QuadraticImaginary => Ok(l_at_zero::<T>(field.character().unwrap())?.re * T::lit(-0.5)),
    }
}

/// Analytic constants; fails for non-normal cubic fields (use
/// [`field_constants_with_table`]).
pub fn field_constants<T: Real>(field: &NumberField) -> Result<FieldConstants<T>> {
    let rho = rho_k::<T>(field)?;
    constants_with_rho(field, rho, false)
}

/// Analytic constants where available; ρ_K of non-normal cubic fields is fitted
/// from `table` instead.
pub fn field_constants_with_table(field: &NumberField, table: &IdealTable) -> Result<FieldConstants<f64>> {
    match rho_k::<f64>(field) {
        Ok(rho) => constants_with_rho(field, rho, false),
        Err(Error::UnsupportedContinuation(_)) => constants_with_rho(field, rho_empirical(table, 50)?, true),
        Err(e) => Err(e),
    }
}

fn constants_with_rho<T: Real>(field: &NumberField, rho: T, empirical: bool) -> Result<FieldConstants<T>> {
    let zeta2 = zeta_k(field, Complex::new(T::lit(2.0), T::zero()))?.value.re;
    let zeta0 = zeta_k_at_zero::<T>(field)?;
    let n = T::lit(field.degree() as f64);
    Ok(FieldConstants {
        rho,
        zeta2,
        zeta0,
        alpha: (n - T::one()) / (n + T::one()),
        rho_empirical: empirical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// ζ(s) = Σ_{n<K} n^{-s} + K^{1-s}/(s-1) + K^{-s}/2 + Bernoulli corrections,
    /// written out independently of the η route and of the L tail code.
    fn zeta_em_oracle(s: Complex<f64>) -> Complex<f64> {
        let k = 60.0f64;
        let one = Complex::new(1.0, 0.0);
        let mut sum = Complex::new(0.0, 0.0);
        for n in 1..60 {
            sum += (-s * (n as f64).ln()).exp();
        }
        let ks = (-s * k.ln()).exp();
        sum += ks * k / (s - one) + ks * 0.5;
        let b = [
            1.0 / 6.0,
            -1.0 / 30.0,
            1.0 / 42.0,
            -1.0 / 30.0,
            5.0 / 66.0,
            -691.0 / 2730.0,
        ];
        let mut poch = s;
        let mut fact = 2.0;
        let mut kp = ks / k;
        for j in 1..=6 {
            sum += poch * kp * (b[j - 1] / fact);
            poch = poch * (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
            fact *= ((2 * j + 1) * (2 * j + 2)) as f64;
            kp /= k * k;
        }
        sum
    }

    fn rel(a: Complex<f64>, b: Complex<f64>) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    fn re(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn zeta_special_values() {
        let z2 = riemann_zeta(re(2.0)).unwrap();
        assert!(rel(z2, re(PI * PI / 6.0)) < 1e-12);
        assert!((z2.re - 1.6449340668).abs() < 1e-10);
        let z4 = riemann_zeta(re(4.0)).unwrap();
        assert!(rel(z4, re(PI.powi(4) / 90.0)) < 1e-12);
        assert!((z4.re - 1.0823232337).abs() < 1e-10);
        let z0 = riemann_zeta(re(0.0)).unwrap();
        assert!((z0.re + 0.5).abs() < 1e-12 && z0.im.abs() < 1e-14);
        assert_eq!(riemann_zeta(re(1.0)), Err(Error::Pole));
        assert!(riemann_zeta(re(-0.5)).is_err());
    }

    #[test]
    fn zeta_against_euler_maclaurin_in_critical_strip() {
        for s in [
            re(0.5),
            re(0.75),
            re(0.9),
            Complex::new(0.6, 3.0),
            Complex::new(1.05, 0.0),
            Complex::new(2.5, -7.0),
        ] {
            let a = riemann_zeta(s).unwrap();
            let b = zeta_em_oracle(s);
            assert!(rel(a, b) < 1e-10, "s = {s}: {a} vs {b}");
        }
        // ζ(1/2) ≈ -1.4603545088095868
        assert!((riemann_zeta(re(0.5)).unwrap().re + 1.4603545088095868).abs() < 1e-10);
    }

    #[test]
    fn zeta_single_precision() {
        let z = riemann_zeta(Complex::new(2.0f32, 0.0)).unwrap();
        assert!((z.re - (PI * PI / 6.0) as f32).abs() < 1e-5);
    }

    #[test]
    fn l_values() {
        let chi4 = DirichletCharacter::kronecker(-4);
        let l1 = dirichlet_l(re(1.0), &chi4).unwrap();
        assert!((l1.re - PI / 4.0).abs() < 1e-12);
        // Leibniz partial sums with averaging as independent oracle.
        let leibniz: f64 = (0..2_000_000)
            .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / (2 * k + 1) as f64)
            .sum();
        assert!((l1.re - leibniz).abs() < 1e-6);
        let catalan_direct: f64 = (0..200_000)
            .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / ((2 * k + 1) as f64).powi(2))
            .sum();
        let l2 = dirichlet_l(re(2.0), &chi4).unwrap();
        assert!((l2.re - 0.9159655942).abs() < 1e-10);
        assert!((l2.re - catalan_direct).abs() < 1e-10);
        let chi5 = DirichletCharacter::kronecker(5);
        assert!(dirichlet_l(re(0.0), &chi5).unwrap().norm() < 1e-12);
        assert_eq!(l_at_zero::<f64>(&chi5).unwrap(), re(0.0));
        assert!((l_at_zero::<f64>(&chi4).unwrap().re - 0.5).abs() < 1e-15);
        assert!((l_at_zero::<f64>(&DirichletCharacter::kronecker(-3)).unwrap().re - 1.0 / 3.0).abs() < 1e-15);
        // The continuation at s = 0 agrees with the finite formula for odd χ.
        assert!((dirichlet_l(re(0.0), &chi4).unwrap().re - 0.5).abs() < 1e-10);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let l15 = dirichlet_l(re(1.0), &chi5).unwrap().re;
        assert!((l15 - 2.0 * golden.ln() / 5f64.sqrt()).abs() < 1e-12);
        let principal = DirichletCharacter::new(3, 2, vec![None, Some(0), Some(0)]);
        assert_eq!(dirichlet_l(re(2.0), &principal), Err(Error::PrincipalCharacter));
    }

    #[test]
    fn l_in_strip_against_slow_partial_sums() {
        // Averaged partial sums over full periods converge like N^{-σ-1}.
        let chi = DirichletCharacter::kronecker(-4);
        let s = re(0.75);
        let mut sum = 0.0;
        let mut prev_avg = 0.0;
        let n_max = 400_000u64;
        for n in 1..=n_max + 1 {
            if n == n_max + 1 {
                prev_avg = sum;
            }
            sum += chi.real_value(n) as f64 * (n as f64).powf(-0.75);
        }
        let avg = (sum + prev_avg) / 2.0;
        assert!((dirichlet_l(s, &chi).unwrap().re - avg).abs() < 1e-6);
    }

    #[test]
    fn stability_under_halved_parameters() {
        let chi = DirichletCharacter::kronecker(-4);
        for s in [re(0.75), re(1.05), re(2.0), Complex::new(0.9, 1.0)] {
            let p = EvalParams::for_scalar(s);
            let full = riemann_zeta_with(s, p).unwrap();
            let half = riemann_zeta_with(s, p.halved()).unwrap();
            assert!(rel(half, full) < ZETA_TOLERANCE, "zeta at {s}");
            let full = dirichlet_l_with(s, &chi, p).unwrap();
            let half = dirichlet_l_with(s, &chi, p.halved()).unwrap();
            assert!(rel(half, full) < L_TOLERANCE, "L at {s}");
        }
    }

    #[test]
    fn dedekind_values() {
        let gauss = NumberField::quadratic(-1).unwrap();
        let z2 = zeta_k(&gauss, re(2.0)).unwrap().value.re;
        assert!((z2 - 1.5067030099).abs() < 1e-9);
        let z0 = zeta_k(&gauss, re(0.0)).unwrap().value.re;
        assert!((z0 + 0.25).abs() < 1e-12);
        assert_eq!(zeta_k_at_zero::<f64>(&gauss).unwrap(), -0.25);
        let golden = NumberField::quadratic(5).unwrap();
        assert_eq!(zeta_k_at_zero::<f64>(&golden).unwrap(), 0.0);
        assert_eq!(zeta_k(&golden, re(0.0)).unwrap().value, re(0.0) * -0.5);
        assert_eq!(zeta_k(&gauss, re(1.0)), Err(Error::Pole));
        let c = field_constants::<f64>(&gauss).unwrap();
        assert!((c.rho - PI / 4.0).abs() < 1e-12);
        assert!((c.alpha - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn non_normal_cubic_fallback() {
        let k = NumberField::cubic(&[-1, -1, 0, 1]).unwrap();
        assert!(matches!(zeta_k(&k, re(0.9)), Err(Error::UnsupportedContinuation(_))));
        let v = zeta_k_with(&k, re(2.0), EvalParams::for_scalar(re(2.0)), 20_000).unwrap();
        let finer = zeta_k_with(&k, re(2.0), EvalParams::for_scalar(re(2.0)), 200_000).unwrap();
        assert_eq!(v.prime_bound, Some(20_000));
        assert!(rel(v.value, finer.value) <= v.tail_bound);
        assert!(v.tail_bound < 1e-3);
        assert!(rho_k::<f64>(&k).is_err());
    }

    #[test]
    fn normal_cubic_values() {
        let k = NumberField::cubic(&[-1, -3, 0, 1]).unwrap();
        let analytic = zeta_k(&k, re(2.0)).unwrap().value;
        assert!(analytic.im.abs() < 1e-12);
        // Euler product over the same splitting data as a second route.
        let euler = euler_product::<f64>(&k, re(2.0), 200_000).unwrap();
        assert!(rel(analytic, euler.value) <= euler.tail_bound);
        assert_eq!(zeta_k_at_zero::<f64>(&k).unwrap(), 0.0);
        assert!(rho_k::<f64>(&k).unwrap() > 0.0);
    }

    #[test]
    fn empirical_rho() {
        let gauss = NumberField::quadratic(-1).unwrap();
        let t = IdealTable::build(&gauss, 1_000_000, crate::ideals::TableMode::CountsOnly).unwrap();
        let fit = rho_empirical(&t, 50).unwrap();
        assert!((fit - PI / 4.0).abs() / (PI / 4.0) < 0.02);
    }
}
