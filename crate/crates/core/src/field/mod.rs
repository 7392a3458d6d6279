//! Number fields of degree at most three and the splitting of rational primes.
//!
//! This is the only module where field-specific arithmetic enters: everything
//! downstream sees ideals as exponent vectors over [`PrimeIdeal`]s.

mod character;
mod poly;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::primes::{exact_sqrt, gcd, is_prime, is_squarefree};

pub use character::{kronecker_symbol, DirichletCharacter};

/// Splitting shape `(e, f)` of a single prime ideal, used in exceptional tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeShape {
    pub e: u32,
    pub f: u32,
}

/// JSON description of a field.
///
/// Cubic polynomials are given constant coefficient first. `index` is the
/// index `[O_K : Z[θ]]` (default 1); every prime dividing it needs an entry in
/// `exceptional`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDescriptor {
    Rational,
    Quadratic {
        d: i64,
    },
    Cubic {
        poly: Vec<i64>,
        #[serde(
            default,
            skip_serializing_if = "BTreeMap::is_empty",
            deserialize_with = "prime_keyed"
        )]
        exceptional: BTreeMap<u64, Vec<PrimeShape>>,
        #[serde(default = "one", skip_serializing_if = "is_one")]
        index: u64,
    },
}

// Tagged enums buffer their content, which loses integer map keys.
fn prime_keyed<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<BTreeMap<u64, Vec<PrimeShape>>, D::Error> {
    let raw: BTreeMap<String, Vec<PrimeShape>> = Deserialize::deserialize(d)?;
    raw.into_iter()
        .map(|(k, v)| {
            k.trim()
                .parse::<u64>()
                .map(|p| (p, v))
                .map_err(serde::de::Error::custom)
        })
        .collect()
}

fn one() -> u64 {
    1
}

fn poly_label(poly: &[i64]) -> String {
    let mut out = String::new();
    for (k, &c) in poly.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = c.unsigned_abs();
        let coeff = if mag == 1 && k > 0 {
            String::new()
        } else {
            mag.to_string()
        };
        let var = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        out.push_str(&format!("{sign}{coeff}{var}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn is_one(v: &u64) -> bool {
    *v == 1
}

impl FieldDescriptor {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidField(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }

    /// Stable hex key of the canonical JSON form.
    pub fn cache_key(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        hex::encode(&digest[..8])
    }

    /// Short human-readable name, e.g. `Q(sqrt(-1))` or `x^3-3x-1`.
    pub fn label(&self) -> String {
        match self {
            FieldDescriptor::Rational => "Q".to_string(),
            FieldDescriptor::Quadratic { d } => format!("Q(sqrt({d}))"),
            FieldDescriptor::Cubic { poly, .. } => poly_label(poly),
        }
    }

    pub fn build(&self) -> Result<NumberField> {
        match self {
            FieldDescriptor::Rational => Ok(NumberField::rationals()),
            FieldDescriptor::Quadratic { d } => NumberField::quadratic(*d),
            FieldDescriptor::Cubic {
                poly,
                exceptional,
                index,
            } => NumberField::cubic_with_index(poly, exceptional.clone(), *index),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rational,
    QuadraticImaginary,
    QuadraticReal,
    CubicNormal,
    CubicNonNormal,
}

impl FieldKind {
    pub fn is_quadratic(self) -> bool {
        matches!(self, FieldKind::QuadraticImaginary | FieldKind::QuadraticReal)
    }

    pub fn is_cubic(self) -> bool {
        matches!(self, FieldKind::CubicNormal | FieldKind::CubicNonNormal)
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Opaque identity of a field, used to reject mixed-field ideal operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldId(pub u64);

/// A prime ideal above the rational prime `p`.
///
/// `idx` distinguishes the primes above one `p` and runs over `0..count`.
/// Quadratic split primes are labelled by the ascending order of the roots of
/// the defining polynomial mod `p`; cubic primes are ordered by `(f, root)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub p: u64,
    pub f: u32,
    pub e: u32,
    pub idx: u32,
}

impl PrimeIdeal {
    pub fn norm(&self) -> u64 {
        self.p.pow(self.f)
    }
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.p, self.idx).cmp(&(other.p, other.idx))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumberField {
    descriptor: FieldDescriptor,
    id: FieldId,
    degree: u32,
    poly: Vec<i64>,
    poly_disc: i64,
    index: u64,
    disc: i64,
    kind: FieldKind,
    char_modulus: u64,
    exceptional: BTreeMap<u64, Vec<PrimeShape>>,
    character: Option<DirichletCharacter>,
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let r = d.rem_euclid(4);
    if r == 1 {
        return is_squarefree(d.unsigned_abs());
    }
    if r == 0 {
        let m = d / 4;
        let mr = m.rem_euclid(4);
        return (mr == 2 || mr == 3) && is_squarefree(m.unsigned_abs());
    }
    false
}

fn cubic_discriminant(poly: &[i64]) -> Result<i64> {
    let (c, b, a) = (poly[0] as i128, poly[1] as i128, poly[2] as i128);
    let d = a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
    i64::try_from(d).map_err(|_| Error::Overflow("cubic discriminant"))
}

fn has_rational_root(poly: &[i64]) -> bool {
    let c0 = poly[0];
    if c0 == 0 {
        return true;
    }
    let eval = |x: i128| poly.iter().rev().fold(0i128, |acc, &c| acc * x + c as i128);
    let n = c0.unsigned_abs();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            for r in [d, n / d] {
                if eval(r as i128) == 0 || eval(-(r as i128)) == 0 {
                    return true;
                }
            }
        }
        d += 1;
    }
    false
}

/// Split `n` as `d q^2` with `d` squarefree (sign kept on `d`).
fn squarefree_decomposition(n: i64) -> (i64, u64) {
    let mut d = n.signum();
    let mut q = 1u64;
    for (p, k) in crate::primes::factor(n.unsigned_abs()) {
        q *= p.pow(k / 2);
        if k % 2 == 1 {
            d *= p as i64;
        }
    }
    (d, q)
}

impl NumberField {
    /// ℚ itself, the degree one case used for baseline comparisons.
    pub fn rationals() -> Self {
        let descriptor = FieldDescriptor::Rational;
        NumberField {
            id: Self::id_of(&descriptor),
            descriptor,
            degree: 1,
            poly: vec![0, 1],
            poly_disc: 1,
            index: 1,
            disc: 1,
            kind: FieldKind::Rational,
            char_modulus: 1,
            exceptional: BTreeMap::new(),
            character: None,
        }
    }

    /// ℚ(√d) for squarefree `d ∉ {0, 1}`.
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d.unsigned_abs()) {
            return Err(Error::InvalidField(format!(
                "d = {d} must be squarefree and not 0 or 1"
            )));
        }
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        debug_assert!(is_fundamental_discriminant(disc));
        let poly = if d.rem_euclid(4) == 1 {
            vec![(1 - d) / 4, -1, 1]
        } else {
            vec![-d, 0, 1]
        };
        let descriptor = FieldDescriptor::Quadratic { d };
        Ok(NumberField {
            id: Self::id_of(&descriptor),
            descriptor,
            degree: 2,
            poly,
            poly_disc: disc,
            index: 1,
            disc,
            kind: if d < 0 {
                FieldKind::QuadraticImaginary
            } else {
                FieldKind::QuadraticReal
            },
            char_modulus: disc.unsigned_abs(),
            exceptional: BTreeMap::new(),
            character: Some(DirichletCharacter::kronecker(disc)),
        })
    }

    /// Monic cubic with no index divisors.
    pub fn cubic(poly: &[i64]) -> Result<Self> {
        Self::cubic_with_index(poly, BTreeMap::new(), 1)
    }

    pub fn cubic_with_index(poly: &[i64], exceptional: BTreeMap<u64, Vec<PrimeShape>>, index: u64) -> Result<Self> {
        if poly.len() != 4 || poly[3] != 1 {
            return Err(Error::InvalidField(
                "cubic polynomial must be monic with 4 coefficients".into(),
            ));
        }
        if has_rational_root(poly) {
            return Err(Error::InvalidField(format!("{poly:?} is reducible over Q")));
        }
        if index == 0 {
            return Err(Error::InvalidField("index must be positive".into()));
        }
        for (&p, shapes) in &exceptional {
            if !is_prime(p) {
                return Err(Error::InvalidField(format!("exceptional key {p} is not prime")));
            }
            if shapes.iter().map(|s| s.e * s.f).sum::<u32>() != 3 || shapes.iter().any(|s| s.e == 0 || s.f == 0) {
                return Err(Error::InvalidField(format!(
                    "exceptional splitting at {p} must satisfy sum e*f = 3"
                )));
            }
        }
        let poly_disc = cubic_discriminant(poly)?;
        let index_sq = (index as i64)
            .checked_mul(index as i64)
            .ok_or(Error::Overflow("index squared"))?;
        if poly_disc % index_sq != 0 {
            return Err(Error::InvalidField(format!(
                "index {index} squared does not divide polynomial discriminant {poly_disc}"
            )));
        }
        let disc = poly_disc / index_sq;
        if !matches!(disc.rem_euclid(4), 0 | 1) {
            return Err(Error::InvalidField(format!("discriminant {disc} is not 0 or 1 mod 4")));
        }
        let normal = disc > 0 && exact_sqrt(disc as u64).is_some();
        let char_modulus = if normal {
            exact_sqrt(disc as u64).unwrap()
        } else {
            squarefree_decomposition(disc).1
        };
        let descriptor = FieldDescriptor::Cubic {
            poly: poly.to_vec(),
            exceptional: exceptional.clone(),
            index,
        };
        let mut field = NumberField {
            id: Self::id_of(&descriptor),
            descriptor,
            degree: 3,
            poly: poly.to_vec(),
            poly_disc,
            index,
            disc,
            kind: if normal {
                FieldKind::CubicNormal
            } else {
                FieldKind::CubicNonNormal
            },
            char_modulus,
            exceptional,
            character: None,
        };
        if normal {
            field.character = Some(field.cubic_character()?);
        }
        Ok(field)
    }

    fn id_of(descriptor: &FieldDescriptor) -> FieldId {
        let digest = Sha256::digest(descriptor.to_json().as_bytes());
        FieldId(u64::from_le_bytes(digest[..8].try_into().unwrap()))
    }

    /// The order-three character of conductor `q = √disc`, recovered from the
    /// residues of completely split primes.
    fn cubic_character(&self) -> Result<DirichletCharacter> {
        let q = self.char_modulus;
        let mut kernel = vec![false; q as usize];
        for a in (1..q).filter(|&a| gcd(a, q) == 1) {
            let mut p = a;
            let mut found = false;
            for _ in 0..1_000_000 {
                if is_prime(p) && self.index % p != 0 && !self.exceptional.contains_key(&p) {
                    kernel[a as usize] = self.split_prime(p)?.len() == 3;
                    found = true;
                    break;
                }
                p += q;
            }
            if !found {
                return Err(Error::InvalidField(format!(
                    "no prime found in residue class {a} mod {q}"
                )));
            }
        }
        character::character_from_kernel(q, 3, &kernel).ok_or_else(|| {
            Error::InvalidField(format!(
                "splitting of primes is not governed by a cubic character mod {q}"
            ))
        })
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.descriptor
    }

    pub fn id(&self) -> FieldId {
        self.id
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Defining polynomial, constant coefficient first.
    pub fn defining_poly(&self) -> &[i64] {
        &self.poly
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn char_modulus(&self) -> u64 {
        self.char_modulus
    }

    pub fn exceptional_primes(&self) -> &BTreeMap<u64, Vec<PrimeShape>> {
        &self.exceptional
    }

    /// χ_q for quadratic fields, χ₁ for normal cubic fields.
    pub fn character(&self) -> Option<&DirichletCharacter> {
        self.character.as_ref()
    }

    /// The complete list of primes above `p`, canonically ordered.
    pub fn split_prime(&self, p: u64) -> Result<Vec<PrimeIdeal>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if let Some(shapes) = self.exceptional.get(&p) {
            let mut shapes = shapes.clone();
            shapes.sort_by_key(|s| (s.f, std::cmp::Reverse(s.e)));
            return Ok(Self::label(p, shapes.into_iter().map(|s| (s.e, s.f))));
        }
        if self.index % p == 0 {
            return Err(Error::IndexDivisorUnknown(p));
        }
        let shapes: Vec<(u32, u32)> = match self.kind {
            FieldKind::Rational => vec![(1, 1)],
            FieldKind::QuadraticImaginary | FieldKind::QuadraticReal => match kronecker_symbol(self.disc, p) {
                1 => vec![(1, 1), (1, 1)],
                -1 => vec![(1, 2)],
                _ => vec![(2, 1)],
            },
            FieldKind::CubicNormal | FieldKind::CubicNonNormal => self.cubic_shapes(p),
        };
        Ok(Self::label(p, shapes.into_iter()))
    }

    fn label(p: u64, shapes: impl Iterator<Item = (u32, u32)>) -> Vec<PrimeIdeal> {
        shapes
            .enumerate()
            .map(|(i, (e, f))| PrimeIdeal { p, f, e, idx: i as u32 })
            .collect()
    }

    /// `(e, f)` list from the factorization of the defining cubic mod `p`.
    fn cubic_shapes(&self, p: u64) -> Vec<(u32, u32)> {
        let f = poly::reduce_coeffs(&self.poly, p);
        if self.poly_disc.rem_euclid(p as i64) == 0 {
            let roots = poly::roots_with_multiplicity(&f, p);
            let mut shapes: Vec<(u32, u32)> = roots.iter().map(|&(_, m)| (m, 1)).collect();
            let linear_degree: u32 = roots.iter().map(|&(_, m)| m).sum();
            if linear_degree < 3 {
                shapes.push((1, 3 - linear_degree));
            }
            return shapes;
        }
        self.cubic_shapes_squarefree(&f, p)
    }

    fn cubic_shapes_squarefree(&self, f: &[u64], p: u64) -> Vec<(u32, u32)> {
        let f = f.to_vec();
        match poly::distinct_root_count(&f, p) {
            3 => vec![(1, 1); 3],
            1 => vec![(1, 1), (1, 2)],
            0 => vec![(1, 3)],
            n => unreachable!("squarefree cubic mod {p} with {n} roots"),
        }
    }

    /// Splitting decided by exhaustive root search, the reference the
    /// distinct-degree shortcut is tested against.
    pub fn split_prime_by_root_search(&self, p: u64) -> Result<Vec<PrimeIdeal>> {
        if !self.kind.is_cubic() || self.exceptional.contains_key(&p) || self.poly_disc.rem_euclid(p as i64) == 0 {
            return self.split_prime(p);
        }
        let f = poly::reduce_coeffs(&self.poly, p);
        let roots = poly::roots_with_multiplicity(&f, p);
        let shapes = match roots.len() {
            3 => vec![(1, 1); 3],
            1 => vec![(1, 1), (1, 2)],
            _ => vec![(1, 3)],
        };
        Ok(Self::label(p, shapes.into_iter()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::primes_up_to;

    fn gaussian_ideal_count(n: i64) -> usize {
        // Ideals of Z[i] of norm n correspond to elements a+bi of norm n up to units.
        let mut count = 0;
        for a in -n..=n {
            for b in -n..=n {
                if a * a + b * b == n {
                    count += 1;
                }
            }
        }
        count / 4
    }

    #[test]
    fn quadratic_constructors() {
        let k = NumberField::quadratic(-1).unwrap();
        assert_eq!(k.disc(), -4);
        assert_eq!(k.kind(), FieldKind::QuadraticImaginary);
        let k = NumberField::quadratic(5).unwrap();
        assert_eq!(k.disc(), 5);
        assert_eq!(k.kind(), FieldKind::QuadraticReal);
        assert_eq!(NumberField::quadratic(-5).unwrap().disc(), -20);
        assert!(NumberField::quadratic(4).is_err());
        assert!(NumberField::quadratic(1).is_err());
        assert!(NumberField::quadratic(0).is_err());
        assert!(NumberField::quadratic(-12).is_err());
    }

    #[test]
    fn gaussian_splitting_matches_lattice_count() {
        let k = NumberField::quadratic(-1).unwrap();
        let five = k.split_prime(5).unwrap();
        assert_eq!(five.len(), 2);
        assert!(five.iter().all(|p| p.norm() == 5));
        assert_eq!(gaussian_ideal_count(5), 2);
        let three = k.split_prime(3).unwrap();
        assert_eq!(three.len(), 1);
        assert_eq!(three[0].norm(), 9);
        assert_eq!(gaussian_ideal_count(3), 0);
        assert_eq!(gaussian_ideal_count(9), 1);
        let two = k.split_prime(2).unwrap();
        assert_eq!(
            two,
            vec![PrimeIdeal {
                p: 2,
                f: 1,
                e: 2,
                idx: 0
            }]
        );
        assert_eq!(k.split_prime(6), Err(Error::NotPrime(6)));
    }

    #[test]
    fn cubic_constructors() {
        let k = NumberField::cubic(&[-1, -1, 0, 1]).unwrap();
        assert_eq!(k.disc(), -23);
        assert_eq!(k.kind(), FieldKind::CubicNonNormal);
        let k = NumberField::cubic(&[-1, -3, 0, 1]).unwrap();
        assert_eq!(k.disc(), 81);
        assert_eq!(k.kind(), FieldKind::CubicNormal);
        assert_eq!(k.char_modulus(), 9);
        let k = NumberField::cubic(&[1, 1, 0, 1]).unwrap();
        assert_eq!(k.disc(), -31);
        assert_eq!(k.kind(), FieldKind::CubicNonNormal);
        // x^3 - 1 has the root 1.
        assert!(NumberField::cubic(&[-1, 0, 0, 1]).is_err());
        assert!(NumberField::cubic(&[0, 1, 0, 1]).is_err());
        assert!(NumberField::cubic(&[1, 1, 1]).is_err());
    }

    #[test]
    fn normal_cubic_character_kernel() {
        let k = NumberField::cubic(&[-1, -3, 0, 1]).unwrap();
        let chi = k.character().unwrap();
        assert_eq!(chi.modulus(), 9);
        assert_eq!(chi.order(), 3);
        assert!(chi.is_even());
        assert!(chi.is_multiplicative_up_to(300));
        for p in primes_up_to(2000) {
            let split = k.split_prime(p).unwrap();
            match p % 9 {
                _ if p == 3 => assert_eq!(
                    split,
                    vec![PrimeIdeal {
                        p: 3,
                        f: 1,
                        e: 3,
                        idx: 0
                    }]
                ),
                1 | 8 => assert_eq!(split.len(), 3, "p = {p}"),
                _ => assert_eq!(split, vec![PrimeIdeal { p, f: 3, e: 1, idx: 0 }], "p = {p}"),
            }
        }
    }

    #[test]
    fn degree_sum_and_quadratic_character_relation() {
        let fields = [
            NumberField::quadratic(-1).unwrap(),
            NumberField::quadratic(5).unwrap(),
            NumberField::quadratic(-5).unwrap(),
            NumberField::cubic(&[-1, -3, 0, 1]).unwrap(),
            NumberField::cubic(&[-1, -1, 0, 1]).unwrap(),
            NumberField::cubic(&[1, 1, 0, 1]).unwrap(),
        ];
        for k in &fields {
            for p in primes_up_to(3000) {
                let split = k.split_prime(p).unwrap();
                assert_eq!(split.iter().map(|q| q.e * q.f).sum::<u32>(), k.degree());
                for (i, q) in split.iter().enumerate() {
                    assert_eq!(q.idx as usize, i);
                }
                assert_eq!(split, k.split_prime(p).unwrap());
                assert_eq!(split, k.split_prime_by_root_search(p).unwrap());
                if k.kind().is_quadratic() && k.disc() % p as i64 != 0 {
                    let degree_one = split.iter().filter(|q| q.f == 1).count() as i64;
                    assert_eq!(degree_one - 1, kronecker_symbol(k.disc(), p) as i64);
                }
            }
        }
    }

    #[test]
    fn ramification_in_non_normal_cubic() {
        let k = NumberField::cubic(&[-1, -1, 0, 1]).unwrap();
        // x^3 - x - 1 = (x - 3)(x - 10)^2 mod 23
        let split = k.split_prime(23).unwrap();
        assert_eq!(
            split.iter().map(|q| (q.e, q.f)).collect::<Vec<_>>(),
            vec![(1, 1), (2, 1)]
        );
    }

    #[test]
    fn index_divisors_need_exceptional_entries() {
        // x^3 - x^2 - 2x - 8 (Dedekind's example): polynomial discriminant -2012 = -503 * 2^2, index 2.
        let poly = [-8, -2, -1, 1];
        assert!(NumberField::cubic_with_index(&poly, BTreeMap::new(), 2).is_ok());
        let bare = NumberField::cubic_with_index(&poly, BTreeMap::new(), 2).unwrap();
        assert_eq!(bare.split_prime(2), Err(Error::IndexDivisorUnknown(2)));
        let mut ex = BTreeMap::new();
        ex.insert(2, vec![PrimeShape { e: 1, f: 1 }; 3]);
        let k = NumberField::cubic_with_index(&poly, ex, 2).unwrap();
        assert_eq!(k.disc(), -503);
        assert_eq!(k.split_prime(2).unwrap().len(), 3);
    }

    #[test]
    fn descriptor_json() {
        let d = FieldDescriptor::from_json(r#"{"kind":"quadratic","d":-1}"#).unwrap();
        assert_eq!(d, FieldDescriptor::Quadratic { d: -1 });
        let c = FieldDescriptor::from_json(r#"{"kind":"cubic","poly":[-1,-1,0,1]}"#).unwrap();
        assert_eq!(c.build().unwrap().disc(), -23);
        let e = FieldDescriptor::from_json(r#"{"kind":"cubic","poly":[-8,-2,-1,1],"index":2,"exceptional":{"2":[{"e":1,"f":1},{"e":1,"f":1},{"e":1,"f":1}]}}"#)
            .unwrap();
        assert_eq!(e.build().unwrap().disc(), -503);
        assert_eq!(FieldDescriptor::from_json(&e.to_json()).unwrap(), e);
        assert_ne!(d.cache_key(), c.cache_key());
        assert_eq!(d.label(), "Q(sqrt(-1))");
        assert_eq!(c.label(), "x^3-x-1");
        assert_eq!(e.label(), "x^3-x^2-2x-8");
        assert!(FieldDescriptor::from_json(r#"{"kind":"quartic"}"#).is_err());
    }
}
