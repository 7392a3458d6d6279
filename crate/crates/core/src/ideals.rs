//! Ideals as exponent vectors over prime ideals, and the norm sieve that
//! enumerates every ideal up to a bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldId, NumberField, PrimeIdeal};
use crate::primes::smallest_prime_factors;

/// An integral ideal, stored as its prime factorization.
///
/// Factors are sorted by `(p, idx)` with positive exponents; the empty list is
/// the unit ideal `O_K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealFactorization {
    field: FieldId,
    factors: Vec<(PrimeIdeal, u32)>,
    norm: u64,
}

fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or(Error::Overflow("ideal norm"))
}

impl IdealFactorization {
    pub fn unit(field: FieldId) -> Self {
        Self {
            field,
            factors: Vec::new(),
            norm: 1,
        }
    }

    pub fn prime(field: FieldId, p: PrimeIdeal) -> Self {
        Self {
            field,
            factors: vec![(p, 1)],
            norm: p.norm(),
        }
    }

    /// Build from arbitrary `(prime, exponent)` pairs; duplicates are merged and
    /// zero exponents dropped.
    pub fn from_factors(field: FieldId, factors: impl IntoIterator<Item = (PrimeIdeal, u32)>) -> Result<Self> {
        let mut factors: Vec<(PrimeIdeal, u32)> = factors.into_iter().filter(|&(_, k)| k > 0).collect();
        factors.sort_by_key(|a| a.0);
        let mut merged: Vec<(PrimeIdeal, u32)> = Vec::with_capacity(factors.len());
        for (p, k) in factors {
            match merged.last_mut() {
                Some((q, j)) if *q == p => *j = j.checked_add(k).ok_or(Error::Overflow("exponent"))?,
                _ => merged.push((p, k)),
            }
        }
        let mut norm = 1u64;
        for &(p, k) in &merged {
            norm = norm
                .checked_mul(checked_pow(p.norm(), k)?)
                .ok_or(Error::Overflow("ideal norm"))?;
        }
        Ok(Self {
            field,
            factors: merged,
            norm,
        })
    }

    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn factors(&self) -> &[(PrimeIdeal, u32)] {
        &self.factors
    }

    pub fn norm(&self) -> u64 {
        self.norm
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, k)| k == 1)
    }

    pub fn exponent_of(&self, p: &PrimeIdeal) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    /// `self | other`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        self.same_field(other)?;
        Ok(self.factors.iter().all(|(p, k)| other.exponent_of(p) >= *k))
    }

    /// Merge two exponent vectors with `op`, dropping zero exponents.
    fn combine(&self, other: &Self, op: impl Fn(u32, u32) -> Option<u32>) -> Result<Self> {
        self.same_field(other)?;
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            let (p, x, y) = match (a.get(i), b.get(j)) {
                (Some(&(p, x)), Some(&(q, y))) if p == q => {
                    i += 1;
                    j += 1;
                    (p, x, y)
                }
                (Some(&(p, x)), Some(&(q, _))) if p < q => {
                    i += 1;
                    (p, x, 0)
                }
                (Some(_), Some(&(q, y))) => {
                    j += 1;
                    (q, 0, y)
                }
                (Some(&(p, x)), None) => {
                    i += 1;
                    (p, x, 0)
                }
                (None, Some(&(q, y))) => {
                    j += 1;
                    (q, 0, y)
                }
                (None, None) => unreachable!(),
            };
            let k = op(x, y).ok_or(Error::Overflow("exponent"))?;
            if k > 0 {
                out.push((p, k));
            }
        }
        let mut norm = 1u64;
        for &(p, k) in &out {
            norm = norm
                .checked_mul(checked_pow(p.norm(), k)?)
                .ok_or(Error::Overflow("ideal norm"))?;
        }
        Ok(Self {
            field: self.field,
            factors: out,
            norm,
        })
    }

    /// Ideal sum `I + J`: exponent-wise minimum.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.combine(other, |x, y| Some(x.min(y)))
    }

    /// Intersection `I ∩ J`: exponent-wise maximum.
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        self.combine(other, |x, y| Some(x.max(y)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.combine(other, |x, y| x.checked_add(y))
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn quotient(&self, other: &Self) -> Result<Option<Self>> {
        if !other.divides(self)? {
            return Ok(None);
        }
        self.combine(other, |x, y| Some(x - y)).map(Some)
    }

    /// All divisors, in odometer order over the factor list (the unit ideal first).
    pub fn divisors(&self) -> Vec<IdealFactorization> {
        let mut out = vec![IdealFactorization::unit(self.field)];
        for &(p, k) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (k as usize + 1));
            for d in &out {
                let mut norm = d.norm;
                for j in 0..=k {
                    let mut factors = d.factors.clone();
                    if j > 0 {
                        factors.push((p, j));
                        norm *= p.norm();
                    }
                    next.push(IdealFactorization {
                        field: self.field,
                        factors,
                        norm,
                    });
                }
            }
            out = next;
        }
        out
    }

    /// Norms of all divisors, in the same order as [`divisors`](Self::divisors).
    pub fn divisor_norms(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, k) in &self.factors {
            let q = p.norm();
            let len = out.len();
            let mut next = Vec::with_capacity(len * (k as usize + 1));
            for &d in &out {
                let mut v = d;
                next.push(v);
                for _ in 0..k {
                    v *= q;
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, k)| k as u64 + 1).product()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableMode {
    /// Only `a_K(n)` and `M_K`.
    CountsOnly,
    /// Additionally every ideal, grouped by norm.
    Full,
}

/// Local data at one rational prime: the primes above it and, for each
/// `k <= kmax`, the ideals of norm `p^k` as exponent vectors.
struct LocalTable {
    counts: Vec<u32>,
    mu: Vec<i64>,
    ideals: Vec<Vec<Vec<(PrimeIdeal, u32)>>>,
}

fn local_table(primes: &[PrimeIdeal], kmax: u32, with_ideals: bool) -> LocalTable {
    let kmax = kmax as usize;
    // Exponent vectors with sum(f_i * x_i) = k, lexicographic in (x_0, x_1, ...).
    let mut lists: Vec<Vec<Vec<(PrimeIdeal, u32)>>> = vec![Vec::new(); kmax + 1];
    let mut counts = vec![0u32; kmax + 1];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        primes: &[PrimeIdeal],
        i: usize,
        remaining: usize,
        current: &mut Vec<(PrimeIdeal, u32)>,
        total: usize,
        out: &mut [Vec<Vec<(PrimeIdeal, u32)>>],
        counts: &mut [u32],
        with_ideals: bool,
    ) {
        if i == primes.len() {
            counts[total] += 1;
            if with_ideals {
                out[total].push(current.clone());
            }
            return;
        }
        let f = primes[i].f as usize;
        let mut x = 0usize;
        while x * f <= remaining {
            if x > 0 {
                current.push((primes[i], x as u32));
            }
            rec(
                primes,
                i + 1,
                remaining - x * f,
                current,
                total + x * f,
                out,
                counts,
                with_ideals,
            );
            if x > 0 {
                current.pop();
            }
            x += 1;
        }
    }
    rec(
        primes,
        0,
        kmax,
        &mut Vec::new(),
        0,
        &mut lists,
        &mut counts,
        with_ideals,
    );
    // Coefficients of prod (1 - T^f).
    let mut mu = vec![0i64; kmax + 1];
    mu[0] = 1;
    for q in primes {
        let f = q.f as usize;
        for k in (f..=kmax).rev() {
            mu[k] -= mu[k - f];
        }
    }
    LocalTable {
        counts,
        mu,
        ideals: lists,
    }
}

/// All ideals of norm at most `bound`, with `a_K(n)` and the ideal Mertens function.
#[derive(Debug, Clone)]
pub struct IdealTable {
    field: NumberField,
    bound: u64,
    mode: TableMode,
    counts: Vec<u32>,
    mu_sums: Vec<i64>,
    mertens: Vec<i64>,
    cumulative: Vec<u64>,
    ideals: Vec<IdealFactorization>,
    offsets: Vec<usize>,
    splittings: Vec<Vec<PrimeIdeal>>,
}

impl IdealTable {
    /// Sieve all ideals of norm `<= bound`.
    pub fn build(field: &NumberField, bound: u64, mode: TableMode) -> Result<Self> {
        if bound == 0 {
            return Err(Error::Degenerate("table bound must be at least 1".into()));
        }
        let n = usize::try_from(bound).map_err(|_| Error::Overflow("table bound"))?;
        let spf = smallest_prime_factors(n);
        let full = mode == TableMode::Full;
        let mut counts = vec![0u32; n + 1];
        let mut mu_sums = vec![0i64; n + 1];
        counts[1] = 1;
        mu_sums[1] = 1;
        let id = field.id();
        let mut ideals: Vec<IdealFactorization> = Vec::new();
        let mut offsets = vec![0usize; if full { n + 2 } else { 0 }];
        let mut splittings = Vec::new();
        // Local ideal lists for each prime power n = p^k, looked up through pp_slot.
        let mut pp_lists: Vec<Vec<Vec<(PrimeIdeal, u32)>>> = Vec::new();
        let mut pp_slot = vec![u32::MAX; if full { n + 1 } else { 0 }];
        if full {
            ideals.push(IdealFactorization::unit(id));
            offsets[1] = 0;
            offsets[2] = 1;
        }
        for m in 2..=n {
            let p = spf[m] as usize;
            if p == m {
                let above = field.split_prime(p as u64)?;
                let mut kmax = 0u32;
                let mut pk = 1usize;
                while pk <= n / p {
                    pk *= p;
                    kmax += 1;
                }
                let local = local_table(&above, kmax, full);
                let base = pp_lists.len() as u32;
                let mut pk = 1usize;
                for k in 1..=kmax as usize {
                    pk *= p;
                    counts[pk] = local.counts[k];
                    mu_sums[pk] = local.mu[k];
                    if full {
                        pp_slot[pk] = base + k as u32 - 1;
                    }
                }
                if full {
                    pp_lists.extend(local.ideals.into_iter().skip(1));
                }
                splittings.push(above);
            }
            let mut rest = m;
            let mut pk = 1usize;
            while rest % p == 0 {
                rest /= p;
                pk *= p;
            }
            if rest != 1 {
                counts[m] = counts[pk] * counts[rest];
                mu_sums[m] = mu_sums[pk] * mu_sums[rest];
            }
            if full {
                let start = ideals.len();
                let local = &pp_lists[pp_slot[pk] as usize];
                if rest == 1 {
                    for factors in local {
                        let norm = m as u64;
                        ideals.push(IdealFactorization {
                            field: id,
                            factors: factors.clone(),
                            norm,
                        });
                    }
                } else {
                    let (lo, hi) = (offsets[rest], offsets[rest + 1]);
                    for factors in local {
                        for j in lo..hi {
                            let tail = &ideals[j].factors;
                            let mut combined = Vec::with_capacity(factors.len() + tail.len());
                            combined.extend_from_slice(factors);
                            combined.extend_from_slice(tail);
                            ideals.push(IdealFactorization {
                                field: id,
                                factors: combined,
                                norm: m as u64,
                            });
                        }
                    }
                }
                debug_assert_eq!(ideals.len() - start, counts[m] as usize);
                offsets[m + 1] = ideals.len();
            }
        }
        let mut mertens = vec![0i64; n + 1];
        let mut cumulative = vec![0u64; n + 1];
        for m in 1..=n {
            mertens[m] = mertens[m - 1] + mu_sums[m];
            cumulative[m] = cumulative[m - 1] + counts[m] as u64;
        }
        Ok(Self {
            field: field.clone(),
            bound,
            mode,
            counts,
            mu_sums,
            mertens,
            cumulative,
            ideals,
            offsets,
            splittings,
        })
    }

    /// Full enumeration with factorization lists.
    pub fn enumerate(field: &NumberField, bound: u64) -> Result<Self> {
        Self::build(field, bound, TableMode::Full)
    }

    /// Counts-only table reconstructed from cached `a_K` and `M_K` arrays
    /// (index 0 unused).
    pub fn from_arrays(field: &NumberField, counts: Vec<u32>, mertens: Vec<i64>) -> Result<Self> {
        if counts.len() != mertens.len() || counts.len() < 2 || counts[1] != 1 || mertens[1] != 1 {
            return Err(Error::Cache("inconsistent cached arrays".into()));
        }
        let n = counts.len() - 1;
        let mut mu_sums = vec![0i64; n + 1];
        let mut cumulative = vec![0u64; n + 1];
        for m in 1..=n {
            mu_sums[m] = mertens[m] - mertens[m - 1];
            cumulative[m] = cumulative[m - 1] + counts[m] as u64;
        }
        Ok(Self {
            field: field.clone(),
            bound: n as u64,
            mode: TableMode::CountsOnly,
            counts,
            mu_sums,
            mertens,
            cumulative,
            ideals: Vec::new(),
            offsets: Vec::new(),
            splittings: Vec::new(),
        })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn mode(&self) -> TableMode {
        self.mode
    }

    /// `a_K(n)`; zero outside `1..=bound`.
    pub fn count(&self, n: u64) -> u32 {
        self.counts.get(n as usize).copied().unwrap_or(0)
    }

    /// `a_K(0..=bound)` with index 0 unused.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// `Σ_{N(J)=n} μ(J)`, the coefficients of `1/ζ_K`.
    pub fn mu_sums(&self) -> &[i64] {
        &self.mu_sums
    }

    pub fn mertens_array(&self) -> &[i64] {
        &self.mertens
    }

    /// Number of ideals of norm at most `t`.
    pub fn ideal_count_up_to(&self, t: u64) -> Result<u64> {
        self.check(t as f64)?;
        Ok(self.cumulative[t as usize])
    }

    /// Primes above each rational prime `<= bound`, in increasing `p`.
    /// Empty for tables loaded from a cache.
    pub fn splittings(&self) -> &[Vec<PrimeIdeal>] {
        &self.splittings
    }

    fn check(&self, t: f64) -> Result<()> {
        if t.is_nan() || t.floor() > self.bound as f64 {
            Err(Error::BoundExceeded {
                value: t,
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }

    /// `M_K(t) = Σ_{N(J) <= t} μ(J)`.
    pub fn mertens(&self, t: f64) -> Result<i64> {
        self.check(t)?;
        if t < 1.0 {
            return Ok(0);
        }
        Ok(self.mertens[t.floor() as usize])
    }

    /// `M_K(t)` for integral `t` in `0..=bound`, unchecked beyond indexing.
    #[inline]
    pub fn mertens_at(&self, t: u64) -> i64 {
        self.mertens[t as usize]
    }

    pub fn by_norm(&self, n: u64) -> Result<&[IdealFactorization]> {
        if self.mode != TableMode::Full {
            return Err(Error::CountsOnly);
        }
        self.check(n as f64)?;
        if n == 0 {
            return Ok(&[]);
        }
        Ok(&self.ideals[self.offsets[n as usize]..self.offsets[n as usize + 1]])
    }

    /// Every ideal with norm `<= y`, in increasing norm.
    pub fn ideals_up_to(&self, y: u64) -> Result<&[IdealFactorization]> {
        if self.mode != TableMode::Full {
            return Err(Error::CountsOnly);
        }
        self.check(y as f64)?;
        if y == 0 {
            return Ok(&[]);
        }
        Ok(&self.ideals[..self.offsets[y as usize + 1]])
    }
}
