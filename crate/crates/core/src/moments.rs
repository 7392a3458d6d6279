//! First and second moments of averaged Ramanujan sums, the divisor-product
//! average, and the asymptotic main terms they are compared against.
//!
//! Left-hand sides are exact integers (or complex sums for the divisor-product
//! average); main terms are floating point.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ramanujan_sum, sigma_exact, sigma_z, ComplexParam};
use crate::error::{Error, Result};
use crate::field::{FieldKind, NumberField};
use crate::ideals::{IdealFactorization, IdealTable};
use crate::scalar::Real;
use crate::zeta::{l_at_zero, rho_k, zeta_k, FieldConstants};

/// Exact accumulator: `i128` until it would overflow, then a big integer.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExactSum {
    small: i128,
    big: Option<BigInt>,
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: i128) {
        if let Some(b) = self.big.as_mut() {
            *b += v;
            return;
        }
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => self.big = Some(BigInt::from(self.small) + v),
        }
    }

    pub fn add_big(&mut self, v: &BigInt) {
        let total = self.value() + v;
        self.small = 0;
        self.big = Some(total);
    }

    pub fn merge(&mut self, other: &ExactSum) {
        match &other.big {
            Some(b) => self.add_big(b),
            None => self.add(other.small),
        }
    }

    pub fn value(&self) -> BigInt {
        match &self.big {
            Some(b) => b.clone(),
            None => BigInt::from(self.small),
        }
    }
}

/// Square of an `i128`, spilling into a big integer if needed.
fn add_square(acc: &mut ExactSum, v: i128) {
    match v.checked_mul(v) {
        Some(sq) => acc.add(sq),
        None => {
            let b = BigInt::from(v);
            acc.add_big(&(&b * &b));
        }
    }
}

fn floor_bound(table: &IdealTable, t: f64) -> Result<u64> {
    if t.is_nan() || t.floor() > table.bound() as f64 {
        return Err(Error::BoundExceeded {
            value: t,
            bound: table.bound(),
        });
    }
    Ok(if t < 1.0 { 0 } else { t.floor() as u64 })
}

/// `Σ_{N(J) <= x} C_J(I)`, computed as `Σ_{I₁ | I} N(I₁) M_K(x / N(I₁))`.
pub fn inner_sum(table: &IdealTable, i: &IdealFactorization, x: f64) -> Result<i128> {
    let xf = floor_bound(table, x)?;
    Ok(inner_sum_floor(table, i, xf))
}

fn inner_sum_floor(table: &IdealTable, i: &IdealFactorization, x: u64) -> i128 {
    if x == 0 {
        return 0;
    }
    i.divisor_norms()
        .into_iter()
        .filter(|&d| d <= x)
        .map(|d| d as i128 * table.mertens_at(x / d) as i128)
        .sum()
}

/// The naive double loop over `J`, kept as the reference for [`inner_sum`].
pub fn inner_sum_naive(table: &IdealTable, i: &IdealFactorization, x: f64) -> Result<i128> {
    let xf = floor_bound(table, x)?;
    let mut total = 0i128;
    for j in table.ideals_up_to(xf)? {
        total += ramanujan_sum(j, i)? as i128;
    }
    Ok(total)
}

/// Ranges of y relative to x for the second moment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `x <= y < x²`.
    XtoX2,
    /// `x² <= y < x³`.
    X2toX3,
    /// Outside `x <= y < x³`.
    Outside,
}

impl Regime {
    /// Classify `(x, y)`; the boundary `y = x²` belongs to the second regime
    /// and is reported through the flag.
    pub fn classify(x: f64, y: f64) -> (Regime, bool) {
        let x2 = x * x;
        let on_boundary = (y - x2).abs() <= 1e-9 * x2;
        let regime = if y < x || !(y.is_finite() && x.is_finite()) {
            Regime::Outside
        } else if on_boundary {
            Regime::X2toX3
        } else if y < x2 {
            Regime::XtoX2
        } else if y < x2 * x {
            Regime::X2toX3
        } else {
            Regime::Outside
        };
        (regime, on_boundary)
    }

    pub fn label(self, on_boundary: bool) -> &'static str {
        match (self, on_boundary) {
            (Regime::XtoX2, _) => "XtoX2",
            (Regime::X2toX3, false) => "X2toX3",
            (Regime::X2toX3, true) => "X2toX3-boundary",
            (Regime::Outside, _) => "violation",
        }
    }
}

/// A named main term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainTerm {
    pub name: String,
    pub value: f64,
}

impl MainTerm {
    fn new(name: &str, value: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentKind {
    First,
    Second,
    KeyEstimate,
    GcdIdentity,
}

impl MomentKind {
    pub fn label(self) -> &'static str {
        match self {
            MomentKind::First => "first",
            MomentKind::Second => "second",
            MomentKind::KeyEstimate => "key-estimate",
            MomentKind::GcdIdentity => "gcd-identity",
        }
    }
}

/// One experiment row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub kind: MomentKind,
    pub x: f64,
    pub y: f64,
    pub theta: Option<f64>,
    pub regime: Regime,
    pub on_boundary: bool,
    #[serde(with = "bigint_string")]
    pub lhs: BigInt,
    pub main_terms: Vec<MainTerm>,
    pub residual: f64,
    pub normalized: f64,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl MomentReport {
    pub fn new(kind: MomentKind, x: f64, y: f64, theta: Option<f64>, lhs: BigInt, main_terms: Vec<MainTerm>) -> Self {
        let (regime, on_boundary) = Regime::classify(x, y);
        let total: f64 = main_terms.iter().map(|m| m.value).sum();
        let lhs_f = lhs.to_f64().unwrap_or(f64::NAN);
        let residual = lhs_f - total;
        let leading = main_terms.first().map(|m| m.value).unwrap_or(0.0);
        let normalized = if leading != 0.0 { residual / leading } else { f64::NAN };
        Self {
            kind,
            x,
            y,
            theta,
            regime,
            on_boundary,
            lhs,
            main_terms,
            residual,
            normalized,
        }
    }

    pub fn main_term(&self, name: &str) -> Option<f64> {
        self.main_terms.iter().find(|m| m.name == name).map(|m| m.value)
    }
}

pub const CSV_SCHEMA: &str = "#schema=1";
pub const CSV_COLUMNS: [&str; 10] = [
    "field",
    "x",
    "y",
    "theta",
    "regime",
    "lhs",
    "main1",
    "main2",
    "residual",
    "normalized",
];

/// Flat output row shared by the CSV and JSON emitters. Empty cells are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub field: String,
    pub x: f64,
    pub y: Option<f64>,
    pub theta: Option<f64>,
    pub regime: String,
    pub lhs: Option<String>,
    pub main1: Option<f64>,
    pub main2: Option<f64>,
    pub residual: Option<f64>,
    pub normalized: Option<f64>,
}

fn cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

impl ReportRow {
    pub fn from_report(field: &str, r: &MomentReport) -> Self {
        Self {
            field: field.to_string(),
            x: r.x,
            y: Some(r.y),
            theta: r.theta,
            regime: r.regime.label(r.on_boundary).to_string(),
            lhs: Some(r.lhs.to_string()),
            main1: r.main_terms.first().map(|m| m.value),
            main2: r.main_terms.get(1).map(|m| m.value),
            residual: Some(r.residual),
            normalized: Some(r.normalized),
        }
    }

    /// A grid point that was skipped because it lies outside every regime.
    pub fn violation(field: &str, x: f64, y: f64, theta: Option<f64>) -> Self {
        Self {
            field: field.to_string(),
            x,
            y: Some(y),
            theta,
            regime: Regime::Outside.label(false).to_string(),
            lhs: None,
            main1: None,
            main2: None,
            residual: None,
            normalized: None,
        }
    }

    /// Real parts of the key-estimate sums; `main1` is `R_K`.
    pub fn from_key(field: &str, r: &KeyEstimateReport<f64>) -> Self {
        Self {
            field: field.to_string(),
            x: r.x,
            y: None,
            theta: None,
            regime: if r.in_proven_domain {
                "in-domain"
            } else {
                "out-of-domain"
            }
            .to_string(),
            lhs: Some(r.lhs.re.to_string()),
            main1: Some(r.r_k.re),
            main2: None,
            residual: Some(r.residual),
            normalized: Some(r.normalized),
        }
    }

    pub fn csv_record(&self) -> [String; 10] {
        [
            self.field.clone(),
            self.x.to_string(),
            cell(&self.y),
            cell(&self.theta),
            self.regime.clone(),
            self.lhs.clone().unwrap_or_default(),
            cell(&self.main1),
            cell(&self.main2),
            cell(&self.residual),
            cell(&self.normalized),
        ]
    }
}

/// Exact first moment `Σ_{N(I) <= y} Σ_{N(J) <= x} C_J(I)`, regrouped as
/// `Σ_{m <= x} a_K(m) · m · M_K(x/m) · #{I : N(I) <= y/m}`. Works on
/// counts-only tables.
pub fn first_moment(table: &IdealTable, x: f64, y: f64) -> Result<BigInt> {
    let xf = floor_bound(table, x)?;
    let yf = floor_bound(table, y)?;
    let mut acc = ExactSum::new();
    if xf == 0 || yf == 0 {
        return Ok(acc.value());
    }
    for m in 1..=xf.min(yf) {
        let a = table.count(m) as i128;
        if a == 0 {
            continue;
        }
        let mu = table.mertens_at(xf / m) as i128;
        let count = table.ideal_count_up_to(yf / m)? as i128;
        acc.add(a * m as i128 * mu * count);
    }
    Ok(acc.value())
}

/// First moment as the literal sum of inner sums over ideals.
pub fn first_moment_direct(table: &IdealTable, x: f64, y: f64) -> Result<BigInt> {
    let xf = floor_bound(table, x)?;
    let yf = floor_bound(table, y)?;
    let mut acc = ExactSum::new();
    for i in table.ideals_up_to(yf)? {
        acc.add(inner_sum_floor(table, i, xf));
    }
    Ok(acc.value())
}

/// First moment from the definitional double sum over `(I, J)`.
pub fn first_moment_naive(table: &IdealTable, x: f64, y: f64) -> Result<BigInt> {
    let yf = floor_bound(table, y)?;
    let mut acc = ExactSum::new();
    for i in table.ideals_up_to(yf)? {
        acc.add(inner_sum_naive(table, i, x)?);
    }
    Ok(acc.value())
}

pub fn first_main<T: Real>(constants: &FieldConstants<T>, y: T) -> T {
    constants.rho * y
}

/// Chunk size for parallel reductions; fixed so the partition never depends on
/// the worker count.
const CHUNK: usize = 2048;

/// Exact second moment `Σ_{N(I) <= y} (Σ_{N(J) <= x} C_J(I))²`.
///
/// `jobs <= 1` runs serially; otherwise the ideal list is reduced in
/// fixed-size chunks on a pool of `jobs` workers. The result is bit-identical
/// either way.
pub fn second_moment(table: &IdealTable, x: f64, y: f64, jobs: usize) -> Result<BigInt> {
    let (regime, _) = Regime::classify(x, y);
    if regime == Regime::Outside {
        return Err(Error::RegimeViolation { x, y });
    }
    second_moment_unchecked(table, x, y, jobs)
}

/// [`second_moment`] without the regime check.
pub fn second_moment_unchecked(table: &IdealTable, x: f64, y: f64, jobs: usize) -> Result<BigInt> {
    let xf = floor_bound(table, x)?;
    let yf = floor_bound(table, y)?;
    let ideals = table.ideals_up_to(yf)?;
    let chunk_sum = |chunk: &[IdealFactorization]| {
        let mut acc = ExactSum::new();
        for i in chunk {
            add_square(&mut acc, inner_sum_floor(table, i, xf));
        }
        acc
    };
    let partials: Vec<ExactSum> = if jobs <= 1 {
        ideals.chunks(CHUNK).map(chunk_sum).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Degenerate(format!("thread pool: {e}")))?;
        pool.install(|| ideals.par_chunks(CHUNK).map(chunk_sum).collect())
    };
    let mut total = ExactSum::new();
    for p in &partials {
        total.merge(p);
    }
    Ok(total.value())
}

/// Second moment from the definitional inner sums, serially.
pub fn second_moment_naive(table: &IdealTable, x: f64, y: f64) -> Result<BigInt> {
    let yf = floor_bound(table, y)?;
    let mut acc = ExactSum::new();
    for i in table.ideals_up_to(yf)? {
        add_square(&mut acc, inner_sum_naive(table, i, x)?);
    }
    Ok(acc.value())
}

pub const LEADING_TERM: &str = "rho2_x2y_over_2zeta2";
pub const SECONDARY_TERM: &str = "secondary_x4";

/// `ρ_K² x² y / (2 ζ_K(2))`.
pub fn prufer_main<T: Real>(constants: &FieldConstants<T>, x: T, y: T) -> T {
    constants.rho * constants.rho * x * x * y / (T::lit(2.0) * constants.zeta2)
}

/// Main terms for the second moment. In the regime `x <= y < x²` the
/// secondary term `-ρ_K² ζ_K(0) x⁴ / (4 ζ_K(2)²)` is included (it is zero for
/// fields with `ζ_K(0) = 0`).
pub fn second_main(constants: &FieldConstants<f64>, x: f64, y: f64) -> Result<Vec<MainTerm>> {
    let (regime, _) = Regime::classify(x, y);
    let leading = MainTerm::new(LEADING_TERM, prufer_main(constants, x, y));
    match regime {
        Regime::Outside => Err(Error::RegimeViolation { x, y }),
        Regime::X2toX3 => Ok(vec![leading]),
        Regime::XtoX2 => Ok(vec![
            leading,
            MainTerm::new(SECONDARY_TERM, secondary_term(constants, x)),
        ]),
    }
}

pub fn secondary_term(constants: &FieldConstants<f64>, x: f64) -> f64 {
    let c = constants;
    -c.rho * c.rho * c.zeta0 * x.powi(4) / (4.0 * c.zeta2 * c.zeta2)
}

/// `Σ_{N(A) N(M) <= x} N(A) μ(M)` exactly, with its main term `ρ_K x² / (2 ζ_K(2))`.
pub fn gcd_sum_identity(table: &IdealTable, constants: &FieldConstants<f64>, x: f64) -> Result<(BigInt, f64)> {
    let xf = floor_bound(table, x)?;
    let mut acc = ExactSum::new();
    for a in 1..=xf {
        let c = table.count(a) as i128;
        if c != 0 {
            acc.add(c * a as i128 * table.mertens_at(xf / a) as i128);
        }
    }
    let main = if x <= 0.0 {
        0.0
    } else {
        constants.rho * x * x / (2.0 * constants.zeta2)
    };
    Ok((acc.value(), main))
}

/// Ideal-level brute force for [`gcd_sum_identity`]: all pairs `(A, M)`.
pub fn gcd_sum_identity_naive(table: &IdealTable, x: f64) -> Result<BigInt> {
    let xf = floor_bound(table, x)?;
    let ideals = table.ideals_up_to(xf)?;
    let mut acc = ExactSum::new();
    for a in ideals {
        for m in ideals {
            if a.norm() * m.norm() <= xf {
                acc.add(a.norm() as i128 * crate::arith::moebius(m) as i128);
            }
        }
    }
    Ok(acc.value())
}

/// `Σ_{N(I) <= x} σ_{K,z₁}(I) σ_{K,z₂}(I)`.
pub fn divisor_product_sum<T: Real>(
    table: &IdealTable,
    x: f64,
    z1: ComplexParam<T>,
    z2: ComplexParam<T>,
) -> Result<Complex<T>> {
    let xf = floor_bound(table, x)?;
    let mut total = Complex::new(T::zero(), T::zero());
    // Sum per norm first so large and small terms mix less.
    for n in 1..=xf {
        let mut by_norm = Complex::new(T::zero(), T::zero());
        for i in table.by_norm(n)? {
            by_norm = by_norm + sigma_z(i, z1) * sigma_z(i, z2);
        }
        total = total + by_norm;
    }
    Ok(total)
}

/// `Σ_{N(I) <= x} σ_{K,k₁}(I) σ_{K,k₂}(I)` for nonnegative integer exponents.
pub fn divisor_product_sum_exact(table: &IdealTable, x: f64, k1: u32, k2: u32) -> Result<BigInt> {
    let xf = floor_bound(table, x)?;
    let mut acc = ExactSum::new();
    for i in table.ideals_up_to(xf)? {
        let a = sigma_exact(i, k1)?;
        let b = sigma_exact(i, k2)?;
        match a.checked_mul(b) {
            Some(v) => acc.add(v),
            None => acc.add_big(&(BigInt::from(a) * BigInt::from(b))),
        }
    }
    Ok(acc.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainPolicy {
    /// Reject parameters outside the proven range.
    Strict,
    /// Evaluate anyway and record the fact in the report.
    Report,
}

/// Left-hand side and four-term main term of the divisor-product average.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeyEstimateReport<T> {
    pub x: f64,
    pub z1: ComplexParam<T>,
    pub z2: ComplexParam<T>,
    pub lhs: Complex<T>,
    pub r_k: Complex<T>,
    /// Residue contributions at `s = 1, 1 + z₁, 1 + z₂, 1 + z₁ + z₂`.
    pub terms: [Complex<T>; 4],
    pub residual: T,
    pub normalized: T,
    pub in_proven_domain: bool,
}

/// Whether `(a₁, a₂)` lies in the parameter range for the field's degree.
pub fn in_key_domain(kind: FieldKind, a1: f64, a2: f64) -> bool {
    let open = |lo: f64, v: f64| lo < v && v < 0.0;
    if kind.is_cubic() {
        let b = -3.0 / 16.0;
        open(b, a1) && open(b, a2) && open(b, a1 + a2)
    } else {
        open(-1.0 / 3.0, a1) && open(-2.0 / 9.0, a2) && open(-2.0 / 9.0, a1 + a2)
    }
}

/// The four residue terms
///
/// ```text
/// ρ ζ(1-z₁) ζ(1-z₂) ζ(1-z₁-z₂) / ζ(2-z₁-z₂) · x
/// ρ ζ(1+z₁) ζ(1+z₁-z₂) ζ(1-z₂) / ζ(2+z₁-z₂) · x^{1+z₁}/(1+z₁)
/// ρ ζ(1+z₂) ζ(1+z₂-z₁) ζ(1-z₁) / ζ(2-z₁+z₂) · x^{1+z₂}/(1+z₂)
/// ρ ζ(1+z₁+z₂) ζ(1+z₂) ζ(1+z₁) / ζ(2+z₁+z₂) · x^{1+z₁+z₂}/(1+z₁+z₂)
/// ```
///
/// with ζ = ζ_K throughout.
pub fn key_main_terms<T: Real>(
    field: &NumberField,
    x: f64,
    z1: ComplexParam<T>,
    z2: ComplexParam<T>,
) -> Result<[Complex<T>; 4]> {
    let (z1, z2) = (z1.to_complex(), z2.to_complex());
    let one = Complex::new(T::one(), T::zero());
    let two = one + one;
    let zk = |s: Complex<T>| zeta_k(field, s).map(|v| v.value);
    let rho = rho_k::<T>(field)?;
    let xt = T::lit(x);
    let xpow = |w: Complex<T>| (w * xt.ln()).exp();
    let t1 = zk(one - z1)? * zk(one - z2)? * zk(one - z1 - z2)? / zk(two - z1 - z2)? * xt;
    let t2 = zk(one + z1)? * zk(one + z1 - z2)? * zk(one - z2)? / zk(two + z1 - z2)? * xpow(one + z1) / (one + z1);
    let t3 = zk(one + z2)? * zk(one + z2 - z1)? * zk(one - z1)? / zk(two - z1 + z2)? * xpow(one + z2) / (one + z2);
    let w = one + z1 + z2;
    let t4 = zk(w)? * zk(one + z2)? * zk(one + z1)? / zk(two + z1 + z2)? * xpow(w) / w;
    Ok([t1 * rho, t2 * rho, t3 * rho, t4 * rho])
}

pub fn key_estimate<T: Real>(
    table: &IdealTable,
    x: f64,
    z1: ComplexParam<T>,
    z2: ComplexParam<T>,
    policy: DomainPolicy,
) -> Result<KeyEstimateReport<T>> {
    let field = table.field();
    if !(z1.is_finite() && z2.is_finite()) {
        return Err(Error::OutOfDomain("non-finite parameters".into()));
    }
    let (a1, a2) = (z1.re.to_f64().unwrap(), z2.re.to_f64().unwrap());
    let in_domain = in_key_domain(field.kind(), a1, a2);
    if !in_domain && policy == DomainPolicy::Strict {
        return Err(Error::OutOfDomain(format!(
            "(a1, a2) = ({a1}, {a2}) outside the key-estimate range for {}",
            field.kind()
        )));
    }
    let gap = (z1.to_complex() - z2.to_complex()).norm().to_f64().unwrap();
    let mins = [
        gap,
        (z1.to_complex()).norm().to_f64().unwrap(),
        z2.to_complex().norm().to_f64().unwrap(),
    ];
    if mins.iter().any(|&g| g < 1e-6) {
        return Err(Error::Degenerate(
            "coincident poles: need z1 != z2 and both nonzero".into(),
        ));
    }
    let lhs = divisor_product_sum(table, x, z1, z2)?;
    let terms = key_main_terms(field, x, z1, z2)?;
    let r_k = terms.iter().fold(Complex::new(T::zero(), T::zero()), |a, &t| a + t);
    let residual = (lhs - r_k).norm();
    Ok(KeyEstimateReport {
        x,
        z1,
        z2,
        lhs,
        r_k,
        terms,
        residual,
        normalized: residual / r_k.norm(),
        in_proven_domain: in_domain,
    })
}

/// Least-squares slopes of `log|residual|` and `log|leading main term|` against `log x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendSummary {
    pub points: usize,
    pub residual_slope: Option<f64>,
    pub main_slope: Option<f64>,
    /// Exponent of `x` in the known error term, when known.
    pub predicted_exponent: Option<f64>,
    pub degenerate: bool,
}

fn ls_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

pub fn residual_trend(reports: &[MomentReport], predicted_exponent: Option<f64>) -> Result<TrendSummary> {
    let mut xs: Vec<f64> = reports.iter().map(|r| r.x).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    if xs.len() < 3 || xs.iter().any(|&x| x <= 0.0) {
        return Err(Error::Degenerate(
            "residual trend needs at least 3 distinct positive x".into(),
        ));
    }
    let usable: Vec<&MomentReport> = reports
        .iter()
        .filter(|r| r.residual != 0.0 && r.residual.is_finite())
        .collect();
    let main_pts: Vec<(f64, f64)> = reports
        .iter()
        .filter_map(|r| r.main_terms.first().map(|m| (r.x.ln(), m.value.abs().ln())))
        .filter(|p| p.1.is_finite())
        .collect();
    let main_slope = (main_pts.len() >= 3).then(|| ls_slope(&main_pts));
    if usable.len() < 3 {
        return Ok(TrendSummary {
            points: reports.len(),
            residual_slope: None,
            main_slope,
            predicted_exponent,
            degenerate: true,
        });
    }
    let pts: Vec<(f64, f64)> = usable.iter().map(|r| (r.x.ln(), r.residual.abs().ln())).collect();
    Ok(TrendSummary {
        points: reports.len(),
        residual_slope: Some(ls_slope(&pts)),
        main_slope,
        predicted_exponent,
        degenerate: false,
    })
}

/// Exponent of `x` in the known error term along `y = x^θ` (ignoring
/// `ε` and logarithms).
pub fn predicted_error_exponent(kind: MomentKind, field: FieldKind, theta: f64) -> Option<f64> {
    let max = |v: &[f64]| v.iter().cloned().fold(f64::MIN, f64::max);
    match (kind, field.is_cubic()) {
        (MomentKind::First, false) => Some(max(&[
            1973.0 / 1358.0 + theta * 269.0 / 679.0,
            1234823.0 / 737394.0 + theta * 205.0 / 679.0,
            23917.0 / 21728.0 + theta * 8675.0 / 16296.0,
            2.0,
        ])),
        (MomentKind::First, true) => Some(max(&[1.6 + 0.4 * theta, 11.0 / 8.0 + 0.5 * theta])),
        (MomentKind::Second, false) => Some(max(&[theta + 2.0, 2.0 + 5.0 * theta / 6.0])),
        (MomentKind::Second, true) => Some(max(&[theta + 2.0, 2.0 + 13.0 * theta / 16.0])),
        _ => None,
    }
}

/// `ζ_K(0)` straight from `L(0, χ)`, used to cross-check the constants.
pub fn zeta0_from_character(field: &NumberField) -> Result<f64> {
    match field.character() {
        Some(chi) if field.kind().is_quadratic() => Ok(-0.5 * l_at_zero::<f64>(chi)?.re),
        _ => Ok(0.0),
    }
}

/// Zero-residual check used by tests: `Σ_I inner_sum(I)` against `first_moment`.
pub fn first_moment_routes_agree(table: &IdealTable, x: f64, y: f64) -> Result<bool> {
    Ok(first_moment(table, x, y)? == first_moment_direct(table, x, y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::zeta::field_constants;
    use num_traits::Zero;

    fn gauss(n: u64) -> IdealTable {
        IdealTable::enumerate(&NumberField::quadratic(-1).unwrap(), n).unwrap()
    }

    #[test]
    fn exact_sum_spills() {
        let mut s = ExactSum::new();
        s.add(i128::MAX);
        s.add(i128::MAX);
        assert_eq!(s.value(), BigInt::from(i128::MAX) * 2);
        s.add(-i128::MAX);
        assert_eq!(s.value(), BigInt::from(i128::MAX));
        let mut t = ExactSum::new();
        add_square(&mut t, i128::MAX);
        assert_eq!(t.value(), BigInt::from(i128::MAX) * BigInt::from(i128::MAX));
    }

    #[test]
    fn inner_sum_examples() {
        let t = gauss(200);
        let unit = &t.by_norm(1).unwrap()[0];
        let p = &t.by_norm(2).unwrap()[0];
        for x in [0.5, 1.0, 2.0, 7.5, 100.0] {
            assert_eq!(inner_sum(&t, unit, x).unwrap(), t.mertens(x).unwrap() as i128);
        }
        assert_eq!(inner_sum(&t, p, 0.9).unwrap(), 0);
        assert_eq!(inner_sum(&t, p, 2.0).unwrap(), 2);
        assert_eq!(inner_sum_naive(&t, p, 2.0).unwrap(), 2);
        assert!(inner_sum(&t, p, 201.0).is_err());
    }

    #[test]
    fn inner_sum_matches_naive() {
        let t = gauss(200);
        for i in t.ideals_up_to(50).unwrap() {
            for x in (0..=200).step_by(7) {
                assert_eq!(
                    inner_sum(&t, i, x as f64).unwrap(),
                    inner_sum_naive(&t, i, x as f64).unwrap()
                );
            }
        }
    }

    #[test]
    fn first_moment_examples() {
        let t = gauss(300);
        assert_eq!(first_moment(&t, 2.0, 0.5).unwrap(), BigInt::zero());
        assert_eq!(first_moment(&t, 0.5, 2.0).unwrap(), BigInt::zero());
        assert_eq!(first_moment(&t, 2.0, 2.0).unwrap(), BigInt::from(2));
        for (x, y) in [(3.0, 50.0), (10.0, 300.0), (17.5, 123.4), (300.0, 40.0)] {
            assert!(first_moment_routes_agree(&t, x, y).unwrap(), "x = {x}, y = {y}");
        }
    }

    #[test]
    fn second_moment_examples() {
        let t = gauss(300);
        assert_eq!(second_moment_unchecked(&t, 0.5, 2.0, 1).unwrap(), BigInt::zero());
        assert_eq!(second_moment(&t, 2.0, 2.0, 1).unwrap(), BigInt::from(4));
        assert_eq!(
            second_moment(&t, 10.0, 5.0, 1),
            Err(Error::RegimeViolation { x: 10.0, y: 5.0 })
        );
        assert_eq!(
            second_moment(&t, 5.0, 125.0, 1),
            Err(Error::RegimeViolation { x: 5.0, y: 125.0 })
        );
        let serial = second_moment(&t, 10.0, 300.0, 1).unwrap();
        assert_eq!(second_moment(&t, 10.0, 300.0, 3).unwrap(), serial);
        let mut prev = BigInt::zero();
        for y in 10..=300 {
            let v = second_moment(&t, 10.0, y as f64, 1).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn regimes() {
        assert_eq!(Regime::classify(4.0, 8.0), (Regime::XtoX2, false));
        assert_eq!(Regime::classify(4.0, 16.0), (Regime::X2toX3, true));
        assert_eq!(Regime::classify(4.0, 32.0), (Regime::X2toX3, false));
        assert_eq!(Regime::classify(4.0, 64.0).0, Regime::Outside);
        assert_eq!(Regime::classify(4.0, 2.0).0, Regime::Outside);
    }

    #[test]
    fn main_terms() {
        let c = field_constants::<f64>(&NumberField::quadratic(-1).unwrap()).unwrap();
        let m = second_main(&c, 10.0, 200.0).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].value, prufer_main(&c, 10.0, 200.0));
        let doubled = second_main(&c, 10.0, 400.0).unwrap();
        assert!((doubled[0].value / m[0].value - 2.0).abs() < 1e-12);
        assert!((prufer_main(&c, 20.0, 200.0) / prufer_main(&c, 10.0, 200.0) - 4.0).abs() < 1e-12);
        let expected = (std::f64::consts::PI / 4.0).powi(2) * 100.0 * 1e4 / (2.0 * 1.5067030099);
        assert!((prufer_main(&c, 10.0, 1e4) - expected).abs() / expected < 1e-9);
        let low = second_main(&c, 10.0, 50.0).unwrap();
        assert_eq!(low[0].value, prufer_main(&c, 10.0, 50.0));
        assert_eq!(low[1].name, SECONDARY_TERM);
        assert!(low[1].value > 0.0);
        let real = field_constants::<f64>(&NumberField::quadratic(5).unwrap()).unwrap();
        assert_eq!(second_main(&real, 10.0, 50.0).unwrap()[1].value, 0.0);
        assert!(second_main(&c, 10.0, 5.0).is_err());
    }

    #[test]
    fn gcd_identity_small() {
        let t = gauss(400);
        let c = field_constants::<f64>(t.field()).unwrap();
        assert_eq!(gcd_sum_identity(&t, &c, 0.0).unwrap(), (BigInt::zero(), 0.0));
        let (one, main) = gcd_sum_identity(&t, &c, 1.0).unwrap();
        assert_eq!(one, BigInt::from(1));
        assert!((main - c.rho / (2.0 * c.zeta2)).abs() < 1e-15);
        for x in [5.0, 37.0, 150.0, 400.0] {
            assert_eq!(
                gcd_sum_identity(&t, &c, x).unwrap().0,
                gcd_sum_identity_naive(&t, x).unwrap()
            );
        }
    }

    #[test]
    fn key_estimate_guards() {
        let t = gauss(1000);
        let z = |a: f64| ComplexParam::real(a);
        assert_eq!(
            key_estimate(&t, 1.0, z(-0.1), z(-0.05), DomainPolicy::Strict)
                .unwrap()
                .lhs,
            Complex::new(1.0, 0.0)
        );
        assert!(matches!(
            key_estimate(&t, 10.0, z(-0.1), z(-0.15), DomainPolicy::Strict),
            Err(Error::OutOfDomain(_))
        ));
        let r = key_estimate(&t, 10.0, z(-0.1), z(-0.15), DomainPolicy::Report).unwrap();
        assert!(!r.in_proven_domain);
        assert!(matches!(
            key_estimate(&t, 10.0, z(-0.1), z(-0.1), DomainPolicy::Strict),
            Err(Error::Degenerate(_))
        ));
        assert!(!in_key_domain(FieldKind::QuadraticImaginary, -0.3, -0.1));
        assert!(in_key_domain(FieldKind::QuadraticImaginary, -0.1, -0.1));
        assert!(!in_key_domain(FieldKind::CubicNormal, -0.2, -0.01));
    }

    #[test]
    fn divisor_product_limit() {
        let t = gauss(2000);
        let exact = divisor_product_sum_exact(&t, 2000.0, 0, 0).unwrap().to_f64().unwrap();
        let near = divisor_product_sum(&t, 2000.0, ComplexParam::real(-1e-9f64), ComplexParam::real(0.0)).unwrap();
        assert!((near.re - exact).abs() / exact < 1e-3);
        assert_eq!(
            divisor_product_sum(&t, 1.0, ComplexParam::real(-0.2f64), ComplexParam::real(-0.1)).unwrap(),
            Complex::new(1.0, 0.0)
        );
    }

    #[test]
    fn trend_slopes() {
        let mk = |x: f64, r: f64| {
            let mut rep = MomentReport::new(
                MomentKind::First,
                x,
                x,
                None,
                BigInt::zero(),
                vec![MainTerm::new("m", x.powi(4))],
            );
            rep.residual = r;
            rep
        };
        let reps: Vec<_> = [16.0, 32.0, 64.0].iter().map(|&x| mk(x, x * x * x)).collect();
        let s = residual_trend(&reps, None).unwrap();
        assert!((s.residual_slope.unwrap() - 3.0).abs() < 1e-9);
        assert!((s.main_slope.unwrap() - 4.0).abs() < 1e-9);
        let zeros: Vec<_> = [16.0, 32.0, 64.0].iter().map(|&x| mk(x, 0.0)).collect();
        assert!(residual_trend(&zeros, None).unwrap().degenerate);
        assert!(residual_trend(&reps[..2], None).is_err());
    }
}
