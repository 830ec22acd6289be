//! Dense univariate polynomials over a prime field `F_p` (coefficients
//! ascending, no trailing zeros) and Cantor–Zassenhaus factorization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::inv_mod_u64;

pub type Up = Vec<u64>;

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn trim(mut a: Up) -> Up {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &Up) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn add(a: &Up, b: &Up, p: u64) -> Up {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + y) % p
        })
        .collect();
    trim(out)
}

pub fn sub(a: &Up, b: &Up, p: u64) -> Up {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub fn scale(a: &Up, c: u64, p: u64) -> Up {
    trim(a.iter().map(|&x| mulm(x, c, p)).collect())
}

pub fn mul(a: &Up, b: &Up, p: u64) -> Up {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(x, y, p)) % p;
        }
    }
    trim(out)
}

pub fn divrem(a: &Up, b: &Up, p: u64) -> (Up, Up) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let inv = inv_mod_u64(*b.last().unwrap(), p).expect("nonzero leading coefficient");
    let mut q = vec![0u64; r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = mulm(r[k + b.len() - 1], inv, p);
        q[k] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mulm(c, y, p)) % p;
            }
        }
    }
    (trim(q), trim(r))
}

pub fn rem(a: &Up, b: &Up, p: u64) -> Up {
    divrem(a, b, p).1
}

pub fn monic(a: &Up, p: u64) -> Up {
    match a.last() {
        None => vec![],
        Some(&lc) => scale(a, inv_mod_u64(lc, p).unwrap(), p),
    }
}

pub fn gcd(a: &Up, b: &Up, p: u64) -> Up {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Returns `(g, s, t)` with `s a + t b = g` monic.
pub fn xgcd(a: &Up, b: &Up, p: u64) -> (Up, Up, Up) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let inv = inv_mod_u64(*r0.last().unwrap(), p).unwrap();
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub fn derivative(a: &Up, p: u64) -> Up {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulm(c, i as u64 % p, p)).collect())
}

pub fn powmod(base: &Up, mut e: u128, m: &Up, p: u64) -> Up {
    let mut acc = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            b = rem(&mul(&b, &b, p), m, p);
        }
    }
    acc
}

/// `x^(p^k) mod m` by repeated `p`-th powering.
fn frobenius_power(m: &Up, k: usize, p: u64) -> Up {
    let mut x = vec![0, 1];
    for _ in 0..k {
        x = powmod(&x, p as u128, m, p);
    }
    x
}

pub fn eval(a: &Up, x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mulm(acc, x, p) + c) % p)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, e)` with `g`
/// squarefree and `a = ∏ g^e`.
pub fn squarefree(a: &Up, p: u64) -> Vec<(Up, u32)> {
    let mut out = Vec::new();
    sqf_rec(&monic(a, p), p, 1, &mut out);
    out.sort();
    out
}

fn sqf_rec(f: &Up, p: u64, mult: u32, out: &mut Vec<(Up, u32)>) {
    if f.len() <= 1 {
        return;
    }
    let df = derivative(f, p);
    if df.is_empty() {
        // f is a p-th power
        let root: Up = f.iter().step_by(p as usize).copied().collect();
        sqf_rec(&root, p, mult * p as u32, out);
        return;
    }
    let mut c = gcd(f, &df, p);
    let mut w = divrem(f, &c, p).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if z.len() > 1 {
            out.push((monic(&z, p), i * mult));
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if c.len() > 1 {
        let root: Up = c.iter().step_by(p as usize).copied().collect();
        sqf_rec(&root, p, mult * p as u32, out);
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &Up, p: u64) -> Vec<(Up, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = vec![0, 1];
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let n = f.len() - 1;
            out.push((f, n));
            break;
        }
        h = powmod(&h, p as u128, &f, p);
        let g = gcd(&sub(&h, &vec![0, 1], p), &f, p);
        if g.len() > 1 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    out
}

/// Splits a monic squarefree polynomial whose irreducible factors all have degree `d`.
pub fn equal_degree(f: &Up, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Up> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a: Up = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() <= 1 {
            continue;
        }
        let g = gcd(&a, f, p);
        let candidate = if g.len() > 1 {
            g
        } else if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = rem(&mul(&t, &t, p), f, p);
                acc = add(&acc, &t, p);
            }
            gcd(&acc, f, p)
        } else {
            let e = ((p as u128).pow(d as u32) - 1) / 2;
            let b = powmod(&a, e, f, p);
            gcd(&sub(&b, &vec![1], p), f, p)
        };
        if candidate.len() > 1 && candidate.len() < f.len() {
            let other = divrem(f, &candidate, p).0;
            let mut out = equal_degree(&candidate, d, p, rng);
            out.extend(equal_degree(&monic(&other, p), d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted.
pub fn factor(a: &Up, p: u64, seed: u64) -> Vec<(Up, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, e) in squarefree(a, p) {
        for (h, d) in distinct_degree(&g, p) {
            for q in equal_degree(&h, d, p, &mut rng) {
                out.push((q, e));
            }
        }
    }
    out.sort_by(|x, y| x.0.len().cmp(&y.0.len()).then_with(|| x.0.cmp(&y.0)));
    out
}

pub fn is_irreducible(a: &Up, p: u64) -> bool {
    let n = match deg(a) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let m = monic(a, p);
    // Rabin's test
    let xq = frobenius_power(&m, n, p);
    if rem(&sub(&xq, &vec![0, 1], p), &m, p).len() > 0 {
        return false;
    }
    for q in prime_divisors(n) {
        let h = frobenius_power(&m, n / q, p);
        if gcd(&sub(&h, &vec![0, 1], p), &m, p).len() > 1 {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn roots(a: &Up, p: u64) -> Vec<u64> {
    if p <= 64 {
        return (0..p).filter(|&x| eval(a, x, p) == 0).collect();
    }
    let mut r: Vec<u64> =
        factor(a, p, 0).into_iter().filter(|(g, _)| g.len() == 2).map(|(g, _)| (p - g[0]) % p).collect();
    r.sort();
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(fs: &[(Up, u32)], p: u64) -> Up {
        let mut acc = vec![1];
        for (g, e) in fs {
            for _ in 0..*e {
                acc = mul(&acc, g, p);
            }
        }
        acc
    }

    #[test]
    fn irreducible_quadratic_over_f2() {
        assert_eq!(factor(&vec![1, 1, 1], 2, 0), vec![(vec![1, 1, 1], 1)]);
        assert!(is_irreducible(&vec![1, 1, 1], 2));
    }

    #[test]
    fn cubic_splits_over_f3() {
        // x^3 - x = x (x - 1) (x + 1)
        let f = vec![0, 2, 0, 1];
        let fs = factor(&f, 3, 0);
        assert_eq!(fs.len(), 3);
        assert_eq!(expand(&fs, 3), f);
        assert_eq!(roots(&f, 3), vec![0, 1, 2]);
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        // (x+1)^2 * (x^2+x+1) * x^3 over F_3; x^3 is a p-th power
        let p = 3;
        let f = expand(&[(vec![1, 1], 2), (vec![1, 1, 1], 1), (vec![0, 1], 3)], p);
        let fs = factor(&f, p, 1);
        assert_eq!(expand(&fs, p), f);
        for (g, _) in &fs {
            assert!(is_irreducible(g, p));
        }
    }

    #[test]
    fn equal_degree_split_in_char_two() {
        // (x^2+x+1)(x^3+x+1)(x^3+x^2+1) over F_2
        let p = 2;
        let f = expand(&[(vec![1, 1, 1], 1), (vec![1, 1, 0, 1], 1), (vec![1, 0, 1, 1], 1)], p);
        let fs = factor(&f, p, 7);
        assert_eq!(fs.len(), 3);
        assert_eq!(expand(&fs, p), f);
    }
}
