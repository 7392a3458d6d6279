//! Dense polynomials over F_p, constant coefficient first.
//!
//! Only what cubic splitting needs: reduction, multiplication modulo a monic
//! polynomial, gcd and root search.

use crate::primes::{mul_mod, pow_mod};

pub(crate) type PolyP = Vec<u64>;

pub(crate) fn reduce_coeffs(poly: &[i64], p: u64) -> PolyP {
    let mut out: PolyP = poly.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    trim(&mut out);
    out
}

fn trim(a: &mut PolyP) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
}

fn is_zero(a: &PolyP) -> bool {
    a.len() == 1 && a[0] == 0
}

pub(crate) fn degree(a: &PolyP) -> Option<usize> {
    if is_zero(a) {
        None
    } else {
        Some(a.len() - 1)
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Remainder of `a` modulo `b` (b nonzero).
fn rem(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    let mut r = a.clone();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = mul_mod(r[dr], lead_inv, p);
        let shift = dr - db;
        for (i, &bc) in b.iter().enumerate() {
            let sub = mul_mod(factor, bc, p);
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn mul(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// `x^e mod modulus` over F_p.
fn x_pow_mod(e: u64, modulus: &PolyP, p: u64) -> PolyP {
    let mut result: PolyP = vec![1];
    let mut base = rem(&vec![0, 1], modulus, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &base, p), modulus, p);
        }
        base = rem(&mul(&base, &base, p), modulus, p);
        e >>= 1;
    }
    result
}

fn gcd(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !is_zero(&b) {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Number of distinct roots in F_p, via `deg gcd(f, x^p - x)`.
pub(crate) fn distinct_root_count(f: &PolyP, p: u64) -> usize {
    let mut xp = x_pow_mod(p, f, p);
    if xp.len() < 2 {
        xp.resize(2, 0);
    }
    xp[1] = (xp[1] + p - 1) % p;
    trim(&mut xp);
    if is_zero(&xp) {
        return degree(f).unwrap_or(0);
    }
    degree(&gcd(f, &xp, p)).unwrap_or(0)
}

pub(crate) fn eval(f: &PolyP, x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

/// Divide by `(x - r)`; `r` must be a root.
fn deflate(f: &PolyP, r: u64, p: u64) -> PolyP {
    let n = f.len() - 1;
    let mut q = vec![0u64; n];
    let mut carry = 0u64;
    for i in (0..n).rev() {
        carry = (f[i + 1] + mul_mod(carry, r, p)) % p;
        q[i] = carry;
    }
    trim(&mut q);
    q
}

/// Roots in F_p with multiplicity, ascending, by exhaustive search.
pub(crate) fn roots_with_multiplicity(f: &PolyP, p: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut g = f.clone();
    for r in 0..p {
        let mut m = 0;
        while degree(&g).unwrap_or(0) > 0 && eval(&g, r, p) == 0 {
            g = deflate(&g, r, p);
            m += 1;
        }
        if m > 0 {
            out.push((r, m));
        }
        if degree(&g).unwrap_or(0) == 0 {
            break;
        }
    }
    out
}
