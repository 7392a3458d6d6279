//! Independent reference computations shared by the integration tests. None
//! of these call into the library.
#![allow(dead_code)]

use std::f64::consts::PI;

pub fn gaussian_lattice_points(n: i64) -> u64 {
    let r = (n as f64).sqrt() as i64 + 1;
    let mut count = 0;
    for a in -r..=r {
        for b in -r..=r {
            let q = a * a + b * b;
            if q > 0 && q <= n {
                count += 1;
            }
        }
    }
    count
}

/// Legendre symbol (n / 5) from quadratic residues mod 5.
pub fn chi5(n: u64) -> i64 {
    match n % 5 {
        0 => 0,
        1 | 4 => 1,
        _ => -1,
    }
}

pub fn chi5_divisor_sum(n: u64) -> i64 {
    (1..=n).filter(|d| n % d == 0).map(chi5).sum()
}

/// Catalan's constant through the series
/// `G = π/8 · log(2 + √3) + 3/8 · Σ 1 / ((2k+1)² C(2k, k))`.
pub fn catalan() -> f64 {
    let mut sum = 0.0;
    let mut binom = 1.0f64;
    for k in 0..60u32 {
        if k > 0 {
            binom *= (2 * k) as f64 * (2 * k - 1) as f64 / (k as f64 * k as f64);
        }
        let odd = (2 * k + 1) as f64;
        sum += 1.0 / (odd * odd * binom);
    }
    PI / 8.0 * (2.0 + 3f64.sqrt()).ln() + 3.0 / 8.0 * sum
}

fn mobius(mut n: u64) -> i64 {
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
        -sign
    } else {
        sign
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `c_n(m) = Σ_{d | (n, m)} d μ(n/d)`.
pub fn ramanujan_divisor_form(n: u64, m: u64) -> i64 {
    (1..=n)
        .filter(|d| n % d == 0 && m % d == 0)
        .map(|d| d as i64 * mobius(n / d))
        .sum()
}

/// `c_n(m) = Σ_{(a, n) = 1} e^{2πi am/n}`, real and imaginary parts.
pub fn ramanujan_exponential_form(n: u64, m: u64) -> (f64, f64) {
    let (mut re, mut im) = (0.0, 0.0);
    for a in 1..=n {
        if gcd(a, n) == 1 {
            let t = 2.0 * PI * ((a * m) % n) as f64 / n as f64;
            re += t.cos();
            im += t.sin();
        }
    }
    (re, im)
}
