//! Self-checking suites: coefficient identities between Dirichlet series,
//! the gcd·lcm identity, the key estimate trend, and the classical baseline.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{
    coeffs_of_inverse_zeta_k, coeffs_of_zeta_k_exact, forms_agree, ramanujan_sum, ramanujan_sum_naive,
    rational_ramanujan_forms, sigma_exact, DirichletCoeffs,
};
use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::ideals::{IdealFactorization, IdealTable, TableMode};
use crate::moments::{key_estimate, DomainPolicy};
use crate::Param;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemma21,
    Lemma22,
    Lemma23,
    Prufer,
    KeyEstimate,
    RationalBaseline,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Lemma21,
        Suite::Lemma22,
        Suite::Lemma23,
        Suite::Prufer,
        Suite::KeyEstimate,
        Suite::RationalBaseline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma21 => "lemma21",
            Suite::Lemma22 => "lemma22",
            Suite::Lemma23 => "lemma23",
            Suite::Prufer => "prufer",
            Suite::KeyEstimate => "key-estimate",
            Suite::RationalBaseline => "rational-baseline",
        }
    }

    /// Whether the suite needs ideal factorizations rather than counts.
    pub fn needs_full_table(self) -> bool {
        !matches!(self, Suite::RationalBaseline)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Degenerate(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(suite: Suite, check: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            suite: suite.name(),
            check: check.into(),
            passed,
            detail: detail.into(),
        }
    }
}

fn first_mismatch(lhs: &[i128], rhs: &[i128]) -> Option<usize> {
    (1..lhs.len().min(rhs.len())).find(|&n| lhs[n] != rhs[n])
}

fn compare(suite: Suite, check: String, lhs: &DirichletCoeffs<i128>, rhs: &DirichletCoeffs<i128>) -> CheckOutcome {
    match first_mismatch(lhs.as_slice(), rhs.as_slice()) {
        None => CheckOutcome::new(suite, check, true, format!("n <= {}", lhs.bound())),
        Some(n) => CheckOutcome::new(
            suite,
            check,
            false,
            format!("n = {n}: {} != {}", lhs.get(n), rhs.get(n)),
        ),
    }
}

fn require_full(table: &IdealTable) -> Result<()> {
    if table.mode() == TableMode::Full {
        Ok(())
    } else {
        Err(Error::CountsOnly)
    }
}

/// For each `I` with `N(I) <= max_norm`: `Σ_{N(J)=n} C_J(I)` against the
/// convolution of `n ↦ Σ_{I₁ | I, N(I₁) = n} N(I₁)` with the Möbius coefficients.
pub fn lemma21(table: &IdealTable, max_norm: u64) -> Result<Vec<CheckOutcome>> {
    require_full(table)?;
    let n = table.bound() as usize;
    let mu = coeffs_of_inverse_zeta_k(table);
    let all = table.ideals_up_to(table.bound())?;
    let mut out = Vec::new();
    for i in table.ideals_up_to(max_norm.min(table.bound()))? {
        let mut lhs = DirichletCoeffs::<i128>::zeros(n);
        for j in all {
            let v = *lhs.get(j.norm() as usize) + ramanujan_sum(j, i)? as i128;
            lhs.set(j.norm() as usize, v);
        }
        let mut div = DirichletCoeffs::<i128>::zeros(n);
        for d in i.divisor_norms() {
            if d as usize <= n {
                let v = *div.get(d as usize) + d as i128;
                div.set(d as usize, v);
            }
        }
        out.push(compare(
            Suite::Lemma21,
            format!("I = {}", describe(i)),
            &lhs,
            &div.convolve(&mu)?,
        ));
    }
    Ok(out)
}

/// `Σ_{N(I)=n} σ_{K,z}(I)` against the coefficients of `ζ_K(s) ζ_K(s - z)`.
pub fn lemma22(table: &IdealTable, shifts: &[u32]) -> Result<Vec<CheckOutcome>> {
    require_full(table)?;
    let n = table.bound() as usize;
    let a = coeffs_of_zeta_k_exact(table, 0)?;
    let mut out = Vec::new();
    for &z in shifts {
        let mut lhs = DirichletCoeffs::<i128>::zeros(n);
        for i in table.ideals_up_to(table.bound())? {
            let v = lhs
                .get(i.norm() as usize)
                .checked_add(sigma_exact(i, z)?)
                .ok_or(Error::Overflow("sigma sum"))?;
            lhs.set(i.norm() as usize, v);
        }
        let rhs = a.convolve(&coeffs_of_zeta_k_exact(table, z)?)?;
        out.push(compare(Suite::Lemma22, format!("z = {z}"), &lhs, &rhs));
    }
    Ok(out)
}

/// `Σ_{N(I)=n} σ_{K,0}(I)²` against the coefficients of `ζ_K(s)⁴ / ζ_K(2s)`.
pub fn lemma23(table: &IdealTable) -> Result<Vec<CheckOutcome>> {
    require_full(table)?;
    let n = table.bound() as usize;
    let mut lhs = DirichletCoeffs::<i128>::zeros(n);
    for i in table.ideals_up_to(table.bound())? {
        let d = i.divisor_count() as i128;
        lhs.set(i.norm() as usize, lhs.get(i.norm() as usize) + d * d);
    }
    let a = coeffs_of_zeta_k_exact(table, 0)?;
    let rhs = a.power(4)?.convolve(&a.dilate(2).invert()?)?;
    Ok(vec![compare(Suite::Lemma23, "z1 = z2 = 0".to_string(), &lhs, &rhs)])
}

/// `gcd(I, J) · lcm(I, J) = I J` for every pair with norms at most the table bound.
pub fn prufer(table: &IdealTable) -> Result<Vec<CheckOutcome>> {
    require_full(table)?;
    let ideals = table.ideals_up_to(table.bound())?;
    let mut pairs = 0u64;
    for i in ideals {
        for j in ideals {
            let g = i.gcd(j)?;
            let l = i.lcm(j)?;
            pairs += 1;
            if g.mul(&l)? != i.mul(j)? || g.norm() as u128 * l.norm() as u128 != i.norm() as u128 * j.norm() as u128 {
                return Ok(vec![CheckOutcome::new(
                    Suite::Prufer,
                    "gcd*lcm = product",
                    false,
                    format!("I = {}, J = {}", describe(i), describe(j)),
                )]);
            }
        }
    }
    Ok(vec![CheckOutcome::new(
        Suite::Prufer,
        "gcd*lcm = product",
        true,
        format!("{pairs} pairs"),
    )])
}

/// Normalized key-estimate residual at `x = bound` must be smaller than at `x = bound / 100`.
pub fn key_estimate_trend(table: &IdealTable, z1: Param, z2: Param) -> Result<Vec<CheckOutcome>> {
    let hi = table.bound() as f64;
    let lo = (hi / 100.0).floor().max(1.0);
    let a = key_estimate(table, lo, z1, z2, DomainPolicy::Report)?;
    let b = key_estimate(table, hi, z1, z2, DomainPolicy::Report)?;
    Ok(vec![CheckOutcome::new(
        Suite::KeyEstimate,
        format!("z1 = {}, z2 = {}", z1.re, z2.re),
        b.normalized < a.normalized,
        format!(
            "normalized {:.3e} at x = {lo} -> {:.3e} at x = {hi}; in proven domain: {}",
            a.normalized, b.normalized, a.in_proven_domain
        ),
    )])
}

/// Local-formula Ramanujan sums against the definitional divisor sum for
/// every `J` in the table and every `I` with `N(I) <= max_norm`.
pub fn naive_ramanujan(table: &IdealTable, max_norm: u64, suite: Suite) -> Result<Vec<CheckOutcome>> {
    require_full(table)?;
    let mut pairs = 0u64;
    for i in table.ideals_up_to(max_norm.min(table.bound()))? {
        for j in table.ideals_up_to(table.bound())? {
            let (fast, slow) = (ramanujan_sum(j, i)?, ramanujan_sum_naive(j, i)?);
            pairs += 1;
            if fast != slow {
                return Ok(vec![CheckOutcome::new(
                    suite,
                    "naive oracle",
                    false,
                    format!("C_J(I) with J = {}, I = {}: {fast} != {slow}", describe(j), describe(i)),
                )]);
            }
        }
    }
    Ok(vec![CheckOutcome::new(
        suite,
        "naive oracle",
        true,
        format!("{pairs} pairs"),
    )])
}

/// Classical `c_n(m)` in both forms, and the ideal-level sum over the rationals.
pub fn rational_baseline(limit: u64) -> Result<Vec<CheckOutcome>> {
    let q = NumberField::rationals();
    let table = IdealTable::build(&q, limit, TableMode::Full)?;
    let mut forms = true;
    let mut embedded = true;
    let mut detail = format!("1 <= n, m <= {limit}");
    for n in 1..=limit {
        let jn = &table.by_norm(n)?[0];
        for m in 1..=limit {
            let (c, exp_sum) = rational_ramanujan_forms(n, m);
            if !forms_agree(c, exp_sum) && forms {
                forms = false;
                detail = format!("c_{n}({m}): divisor sum {c}, exponential sum {exp_sum}");
            }
            let im: &IdealFactorization = &table.by_norm(m)?[0];
            let ideal = ramanujan_sum(jn, im)?;
            if ideal != c && embedded {
                embedded = false;
                detail = format!("ideal sum {ideal} != c_{n}({m}) = {c}");
            }
        }
    }
    Ok(vec![
        CheckOutcome::new(
            Suite::RationalBaseline,
            "divisor sum = exponential sum",
            forms,
            detail.clone(),
        ),
        CheckOutcome::new(Suite::RationalBaseline, "ideal sum over Q", embedded, detail),
    ])
}

/// Default run of a suite on `field` with table bound `bound`.
pub fn run(field: &NumberField, suite: Suite, bound: u64) -> Result<Vec<CheckOutcome>> {
    if suite == Suite::RationalBaseline {
        return rational_baseline(bound);
    }
    let table = IdealTable::build(field, bound, TableMode::Full)?;
    run_on(&table, suite)
}

pub fn run_on(table: &IdealTable, suite: Suite) -> Result<Vec<CheckOutcome>> {
    match suite {
        Suite::Lemma21 => lemma21(table, 50),
        Suite::Lemma22 => lemma22(table, &[0, 1, 2]),
        Suite::Lemma23 => lemma23(table),
        Suite::Prufer => prufer(table),
        Suite::KeyEstimate => key_estimate_trend(table, Param::real(-0.10), Param::real(-0.05)),
        Suite::RationalBaseline => rational_baseline(table.bound()),
    }
}

fn describe(i: &IdealFactorization) -> String {
    if i.is_unit() {
        return "(1)".to_string();
    }
    i.factors()
        .iter()
        .map(|(p, k)| format!("P({},{},{})^{k}", p.p, p.f, p.idx))
        .collect::<Vec<_>>()
        .join("*")
}
