//! Univariate polynomials over `F_p`, just enough to find roots of
//! characteristic polynomials (coefficients lowest degree first).

use alloc::vec;
use alloc::vec::Vec;

use crate::exactmat::PrimeField;

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn rem(f: PrimeField, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = degree(m).expect("division by the zero polynomial");
    let inv_lead = f.inv(m[dm]);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let t = f.mul(r[dr], inv_lead);
        let shift = dr - dm;
        for (i, &c) in m[..=dm].iter().enumerate() {
            r[i + shift] = f.sub(r[i + shift], f.mul(t, c));
        }
        r = trim(r);
    }
    r
}

fn mul_mod(f: PrimeField, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    rem(f, &out, m)
}

fn pow_mod(f: PrimeField, base: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut acc = rem(f, &[1], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(f, &acc, &b, m);
        }
        b = mul_mod(f, &b, &b, m);
        e >>= 1;
    }
    acc
}

fn gcd(f: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    if let Some(d) = degree(&a) {
        let inv = f.inv(a[d]);
        a.iter_mut().for_each(|c| *c = f.mul(*c, inv));
    }
    a
}

fn sub_poly(f: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(out)
}

/// Distinct roots of `poly` in `F_p`, sorted ascending.
pub fn roots(f: PrimeField, poly: &[u32]) -> Vec<u32> {
    let poly = trim(poly.to_vec());
    match degree(&poly) {
        None | Some(0) => return Vec::new(),
        _ => {}
    }
    // product of the distinct linear factors: gcd(poly, x^p - x)
    let xp = pow_mod(f, &[0, 1], u64::from(f.p()), &poly);
    let split = gcd(f, &poly, &sub_poly(f, &xp, &[0, 1]));
    let mut out = Vec::new();
    split_linear(f, split, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(f: PrimeField, g: Vec<u32>, out: &mut Vec<u32>) {
    match degree(&g) {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(f.mul(g[0], f.inv(g[1])))),
        Some(d) => {
            let half = (u64::from(f.p()) - 1) / 2;
            for a in 0..u64::from(f.p()) {
                let shifted = [a as u32, 1];
                let h = sub_poly(f, &pow_mod(f, &shifted, half, &g), &[1]);
                let c = gcd(f, &g, &h);
                if let Some(dc) = degree(&c) {
                    if dc > 0 && dc < d {
                        let q = div_exact(f, &g, &c);
                        split_linear(f, c, out);
                        split_linear(f, q, out);
                        return;
                    }
                }
            }
            unreachable!("a squarefree split polynomial always separates");
        }
    }
}

fn div_exact(f: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let db = degree(b).expect("nonzero divisor");
    let inv = f.inv(b[db]);
    let mut r = trim(a.to_vec());
    let da = degree(&r).unwrap_or(0);
    let mut q = vec![0u32; da.saturating_sub(db) + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let t = f.mul(r[dr], inv);
        q[dr - db] = t;
        for (i, &c) in b[..=db].iter().enumerate() {
            r[i + dr - db] = f.sub(r[i + dr - db], f.mul(t, c));
        }
        r = trim(r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_match_brute_force() {
        let f = PrimeField::new(101).unwrap();
        // (x-3)^2 (x-7)(x^2+1 has roots iff -1 is a square; 101 = 1 mod 4 so yes: 10^2 = 100)
        let mut poly = vec![1u32];
        for factor in [[f.neg(3), 1], [f.neg(3), 1], [f.neg(7), 1], [1, 0]] {
            let factor: Vec<u32> = if factor == [1, 0] { vec![1, 0, 1] } else { factor.to_vec() };
            let mut next = vec![0u32; poly.len() + factor.len() - 1];
            for (i, &a) in poly.iter().enumerate() {
                for (j, &b) in factor.iter().enumerate() {
                    next[i + j] = f.add(next[i + j], f.mul(a, b));
                }
            }
            poly = next;
        }
        let brute: Vec<u32> = (0..101u32)
            .filter(|&x| poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c)) == 0)
            .collect();
        assert_eq!(roots(f, &poly), brute);
        assert_eq!(brute.len(), 4);
    }

    #[test]
    fn constant_has_no_roots() {
        let f = PrimeField::new(7).unwrap();
        assert!(roots(f, &[3]).is_empty());
        assert_eq!(roots(f, &[0, 1]), vec![0]);
    }
}
