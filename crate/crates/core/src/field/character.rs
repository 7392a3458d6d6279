//! Dirichlet characters with values stored exactly as exponents of a root of unity.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::primes::gcd;
use crate::scalar::Real;

/// Kronecker symbol `(a / n)`.
pub fn kronecker_symbol(a: i64, n: u64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result = 1i8;
    if n % 2 == 0 {
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        let two = if r == 1 || r == 7 { 1 } else { -1 };
        while n % 2 == 0 {
            n /= 2;
            result *= two;
        }
    }
    if n == 1 {
        return result;
    }
    result * jacobi(a.rem_euclid(n as i64) as u64, n)
}

/// Jacobi symbol for odd positive `n`.
fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// A Dirichlet character modulo `modulus` of order dividing `order`.
///
/// `exponents[a]` is `Some(k)` when `χ(a) = exp(2πik/order)` and `None` when
/// `gcd(a, modulus) > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u32,
    exponents: Vec<Option<u32>>,
}

impl DirichletCharacter {
    pub fn new(modulus: u64, order: u32, exponents: Vec<Option<u32>>) -> Self {
        assert_eq!(exponents.len() as u64, modulus);
        Self {
            modulus,
            order,
            exponents,
        }
    }

    /// The Kronecker character `n ↦ (disc / n)` of a fundamental discriminant.
    pub fn kronecker(disc: i64) -> Self {
        let q = disc.unsigned_abs();
        let exponents = (0..q)
            .map(|a| match kronecker_symbol(disc, a) {
                1 => Some(0),
                -1 => Some(1),
                _ => None,
            })
            .collect();
        Self::new(q, 2, exponents)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponent(&self, n: u64) -> Option<u32> {
        self.exponents[(n % self.modulus) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|e| matches!(e, None | Some(0)))
    }

    pub fn is_real(&self) -> bool {
        self.exponents.iter().flatten().all(|&k| (2 * k) % self.order == 0)
    }

    /// `χ(-1) = 1`.
    pub fn is_even(&self) -> bool {
        self.exponent(self.modulus - 1) == Some(0)
    }

    /// Integer value of a real character.
    pub fn real_value(&self, n: u64) -> i8 {
        match self.exponent(n) {
            None => 0,
            Some(k) if (2 * k) % self.order == 0 && k != 0 => -1,
            Some(0) => 1,
            Some(_) => panic!("real_value called on a complex character"),
        }
    }

    pub fn value<T: Real>(&self, n: u64) -> Complex<T> {
        match self.exponent(n) {
            None => Complex::new(T::zero(), T::zero()),
            Some(0) => Complex::new(T::one(), T::zero()),
            Some(k) => {
                let angle = T::TAU() * T::lit(k as f64) / T::lit(self.order as f64);
                Complex::new(angle.cos(), angle.sin())
            }
        }
    }

    pub fn conjugate(&self) -> Self {
        let exponents = self
            .exponents
            .iter()
            .map(|e| e.map(|k| (self.order - k) % self.order))
            .collect();
        Self::new(self.modulus, self.order, exponents)
    }

    /// Check complete multiplicativity on `1..=limit`.
    pub fn is_multiplicative_up_to(&self, limit: u64) -> bool {
        (1..=limit).all(|m| {
            (1..=limit / m.max(1)).all(|n| {
                let lhs = self.exponent(m * n);
                let rhs = match (self.exponent(m), self.exponent(n)) {
                    (Some(a), Some(b)) => Some((a + b) % self.order),
                    _ => None,
                };
                lhs == rhs
            })
        })
    }
}

/// Build the character of order `order` whose kernel is `kernel` (a set of
/// residues coprime to `modulus` closed under multiplication, of index `order`).
pub(crate) fn character_from_kernel(modulus: u64, order: u32, kernel: &[bool]) -> Option<DirichletCharacter> {
    let units: Vec<u64> = (1..modulus).filter(|&a| gcd(a, modulus) == 1).collect();
    let in_kernel = |a: u64| kernel[(a % modulus) as usize];
    let generator = *units.iter().find(|&&a| !in_kernel(a))?;
    let mut exponents = vec![None; modulus as usize];
    // Cosets g^k H for k = 0..order.
    let mut coset_rep = 1u64;
    for k in 0..order {
        for &h in units.iter().filter(|&&h| in_kernel(h)) {
            let a = (coset_rep as u128 * h as u128 % modulus as u128) as u64;
            if exponents[a as usize].is_some() {
                return None;
            }
            exponents[a as usize] = Some(k);
        }
        coset_rep = (coset_rep as u128 * generator as u128 % modulus as u128) as u64;
    }
    if modulus == 1 || units.iter().any(|&a| exponents[a as usize].is_none()) {
        return None;
    }
    Some(DirichletCharacter::new(modulus, order, exponents))
}
