//! Univariate factorization over `Q` (Zassenhaus: modular factorization,
//! Hensel lifting, factor recombination) and over `F_p` (Cantor–Zassenhaus).

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{is_prime, Coeff, FieldSpec};
use crate::poly::{PolyRing, Polynomial};
use crate::upoly::{self, Up};

/// Largest degree of a part that needs recombination of several modular
/// factors. Parts split off by single modular factors (rational roots
/// included) are never limited.
pub const DEFAULT_DEGREE_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub lead: Coeff,
    /// Monic irreducible factors with multiplicities, sorted by degree then terms.
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self, ring: &Arc<PolyRing>) -> Polynomial {
        let mut acc = Polynomial::constant(ring, self.lead.clone());
        for (g, e) in &self.factors {
            acc = &acc * &g.pow(*e);
        }
        acc
    }
}

pub fn univariate_factor(f: &Polynomial) -> Result<Factorization> {
    univariate_factor_bounded(f, DEFAULT_DEGREE_BOUND)
}

pub fn univariate_factor_bounded(f: &Polynomial, bound: usize) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    let ring = f.ring();
    let lead = f.leading_coeff().unwrap().clone();
    let var = match f.univariate_var() {
        Some(v) => v,
        None if f.is_constant() => return Ok(Factorization { lead, factors: vec![] }),
        None => return Err(Error::NotUnivariate),
    };
    let coeffs = f.univariate_coeffs(var)?;
    let mut factors: Vec<(Polynomial, u32)> = match ring.field() {
        FieldSpec::Prime(p) => {
            let up: Up = coeffs.iter().map(|c| ring.field().as_u64(c).unwrap()).collect();
            upoly::factor(&up, p, 0x5eed)
                .into_iter()
                .map(|(g, e)| (from_up(ring, var, &g), e))
                .collect()
        }
        FieldSpec::Rationals => {
            let mut out = Vec::new();
            for (g, e) in squarefree_q(&coeffs) {
                for h in zassenhaus(&primitive_int(&g), bound)? {
                    let rat: Vec<Coeff> = h.iter().map(|c| Coeff::from_integer(c.clone())).collect();
                    let poly = Polynomial::from_univariate(ring, var, &rat).make_monic();
                    out.push((poly, e));
                }
            }
            out
        }
    };
    factors.sort_by(|a, b| {
        let da = a.0.total_degree();
        let db = b.0.total_degree();
        da.cmp(&db).then_with(|| a.0.cmp(&b.0)).then_with(|| a.1.cmp(&b.1))
    });
    Ok(Factorization { lead, factors })
}

fn from_up(ring: &Arc<PolyRing>, var: usize, g: &Up) -> Polynomial {
    let cs: Vec<Coeff> = g.iter().map(|&c| Coeff::from_integer(BigInt::from(c))).collect();
    Polynomial::from_univariate(ring, var, &cs)
}

pub fn to_up(f: &Polynomial, var: usize) -> Result<Up> {
    let field = f.field();
    let cs = f.univariate_coeffs(var)?;
    Ok(upoly::trim(cs.iter().map(|c| field.as_u64(c).unwrap_or(0)).collect()))
}

// ---- dense rational polynomials, ascending coefficients ----

type Qp = Vec<BigRational>;

fn qtrim(mut a: Qp) -> Qp {
    while a.last().map(|c| c.is_zero()).unwrap_or(false) {
        a.pop();
    }
    a
}

fn qdivrem(a: &Qp, b: &Qp) -> (Qp, Qp) {
    let mut r = a.clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &r[k + b.len() - 1] / &lb;
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] = &r[k + j] - &c * y;
            }
        }
        q[k] = c;
    }
    (qtrim(q), qtrim(r))
}

fn qmonic(a: &Qp) -> Qp {
    let l = a.last().unwrap().clone();
    a.iter().map(|c| c / &l).collect()
}

fn qgcd(a: &Qp, b: &Qp) -> Qp {
    let (mut a, mut b) = (qtrim(a.clone()), qtrim(b.clone()));
    while !b.is_empty() {
        let r = qdivrem(&a, &b).1;
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        qmonic(&a)
    }
}

fn qderiv(a: &Qp) -> Qp {
    qtrim(a.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect())
}

fn qsub(a: &Qp, b: &Qp) -> Qp {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    qtrim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

/// Yun's squarefree decomposition in characteristic zero.
fn squarefree_q(f: &Qp) -> Vec<(Qp, u32)> {
    let f = qmonic(&qtrim(f.clone()));
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let df = qderiv(&f);
    let a0 = qgcd(&f, &df);
    let mut b = qdivrem(&f, &a0).0;
    let c = qdivrem(&df, &a0).0;
    let mut d = qsub(&c, &qderiv(&b));
    let mut i = 1;
    while b.len() > 1 {
        let a = qgcd(&b, &d);
        let nb = qdivrem(&b, &a).0;
        let nc = qdivrem(&d, &a).0;
        if a.len() > 1 {
            out.push((a, i));
        }
        b = nb;
        d = qsub(&nc, &qderiv(&b));
        i += 1;
    }
    out
}

// ---- dense integer polynomials ----

type Zp = Vec<BigInt>;

fn ztrim(mut a: Zp) -> Zp {
    while a.last().map(|c| c.is_zero()).unwrap_or(false) {
        a.pop();
    }
    a
}

fn primitive_int(a: &Qp) -> Zp {
    let den = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Zp = a.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: Zp = ints.iter().map(|c| c / &g).collect();
    if out.last().map(|c| c.is_negative()).unwrap_or(false) {
        out = out.iter().map(|c| -c).collect();
    }
    ztrim(out)
}

fn zmul(a: &Zp, b: &Zp) -> Zp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zmod(a: &Zp, m: &BigInt) -> Zp {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &Zp, m: &BigInt) -> Zp {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Exact quotient over `Z`, if `b` divides `a`.
fn zdiv_exact(a: &Zp, b: &Zp) -> Option<Zp> {
    let mut r = a.clone();
    if r.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &r[k + b.len() - 1];
        let (c, rr) = top.div_rem(lb);
        if !rr.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[k + j] -= &c * y;
            }
        }
        q[k] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(ztrim(q))
    } else {
        None
    }
}

fn to_up_mod(a: &Zp, p: u64) -> Up {
    let pb = BigInt::from(p);
    upoly::trim(a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn from_up_int(a: &Up) -> Zp {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Irreducible factors over `Z` of a primitive squarefree polynomial with
/// positive leading coefficient.
fn zassenhaus(f: &Zp, bound: usize) -> Result<Vec<Zp>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    let lc = f.last().unwrap().clone();

    // pick the prime giving the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<Up>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 6 {
        p += 1;
        if !is_prime(p) || (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_up_mod(f, p);
        if fp.len() != f.len() {
            continue;
        }
        let g = upoly::gcd(&fp, &upoly::derivative(&fp, p), p);
        if g.len() > 1 {
            continue;
        }
        tried += 1;
        let facs: Vec<Up> = upoly::factor(&fp, p, p).into_iter().map(|(g, _)| g).collect();
        if best.as_ref().map(|b| facs.len() < b.1.len()).unwrap_or(true) {
            best = Some((p, facs));
        }
    }
    let (p, modular) = best.unwrap();
    if modular.len() == 1 {
        return Ok(vec![f.clone()]);
    }

    // coefficient bound for lc * (any factor)
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let b: BigInt = (BigInt::one() << n) * BigInt::from(n + 1) * maxc * lc.abs();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= &b * 2 {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k);

    // recombination
    let mut remaining: Vec<Zp> = lifted;
    let mut g = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        if s >= 2 && g.len() - 1 > bound {
            return Err(Error::DegreeBound { degree: g.len() - 1, bound });
        }
        let mut found = None;
        for subset in combinations(remaining.len(), s) {
            let lcg = g.last().unwrap().clone();
            let mut cand: Zp = vec![lcg.clone()];
            for &i in &subset {
                cand = zmod(&zmul(&cand, &remaining[i]), &pk);
            }
            let cand = primitive_int(
                &symmetric(&cand, &pk).iter().map(|c| BigRational::from_integer(c.clone())).collect::<Vec<_>>(),
            );
            if let Some(q) = zdiv_exact(&g, &cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                g = q;
                remaining = remaining.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|x| x.1).collect();
            }
            None => s += 1,
        }
    }
    if g.len() > 1 {
        let q: Vec<BigRational> = g.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        out.push(primitive_int(&q));
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Lifts the monic modular factorization of `f / lc(f)` to `p^k`.
fn hensel_lift(f: &Zp, factors: &[Up], p: u64, k: u32) -> Vec<Zp> {
    let pb = BigInt::from(p);
    let pk = pb.pow(k);
    let lc = f.last().unwrap();
    let lc_inv = crate::field::mod_inverse(lc, &pk).expect("lc prime to p");
    let mut target: Zp = zmod(&f.iter().map(|c| c * &lc_inv).collect(), &pk);
    let mut out = Vec::new();
    for i in 0..factors.len() - 1 {
        let g = &factors[i];
        let h = factors[i + 1..].iter().fold(vec![1u64], |acc, x| upoly::mul(&acc, x, p));
        let (gl, hl) = lift_pair(&target, g, &h, p, k);
        out.push(gl);
        target = hl;
    }
    out.push(target);
    out
}

fn lift_pair(target: &Zp, g: &Up, h: &Up, p: u64, k: u32) -> (Zp, Zp) {
    let pb = BigInt::from(p);
    let (_, s, t) = upoly::xgcd(g, h, p);
    let mut gl = from_up_int(g);
    let mut hl = from_up_int(h);
    let mut m = pb.clone();
    for _ in 1..k {
        let next = &m * &pb;
        let e = zmod(&sub_z(target, &zmul(&gl, &hl)), &next);
        let c: Up = upoly::trim(e.iter().map(|x| (x / &m).mod_floor(&pb).to_u64().unwrap()).collect());
        let (q, dg) = upoly::divrem(&upoly::mul(&c, &t, p), g, p);
        let dh = upoly::add(&upoly::mul(&c, &s, p), &upoly::mul(&q, h, p), p);
        gl = zmod(&add_z(&gl, &from_up_int(&dg).iter().map(|x| x * &m).collect()), &next);
        hl = zmod(&add_z(&hl, &from_up_int(&dh).iter().map(|x| x * &m).collect()), &next);
        m = next;
    }
    (gl, hl)
}

fn add_z(a: &Zp, b: &Zp) -> Zp {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn sub_z(a: &Zp, b: &Zp) -> Zp {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::MonomialOrder;

    fn ring(field: FieldSpec) -> Arc<PolyRing> {
        PolyRing::new(field, &["x"], MonomialOrder::DegRevLex).unwrap()
    }

    fn factors(f: &str, field: FieldSpec) -> Vec<String> {
        let r = ring(field);
        let p = parse_polynomial(f, &r).unwrap();
        let fac = univariate_factor(&p).unwrap();
        assert_eq!(fac.expand(&r), p);
        fac.factors.iter().map(|(g, e)| format!("{g}^{e}")).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(factors("x^2 - 1", FieldSpec::Rationals), vec!["x - 1^1", "x + 1^1"]);
        assert_eq!(factors("x^2 + x + 1", FieldSpec::Prime(2)), vec!["x^2 + x + 1^1"]);
        assert_eq!(factors("x^3 - x", FieldSpec::Prime(3)), vec!["x^1", "x + 1^1", "x + 2^1"]);
        assert_eq!(factors("x^2 + 1", FieldSpec::Rationals), vec!["x^2 + 1^1"]);
    }

    #[test]
    fn needs_recombination() {
        // x^4 + 1 splits into quadratics modulo every prime
        assert_eq!(factors("x^4 + 1", FieldSpec::Rationals), vec!["x^4 + 1^1"]);
        let f = factors("(x^4 + 1)*(x^2 - 2)*(2*x - 3)^2", FieldSpec::Rationals);
        assert_eq!(f, vec!["x - 3/2^2", "x^2 - 2^1", "x^4 + 1^1"]);
    }

    #[test]
    fn degree_bound_reported() {
        let r = ring(FieldSpec::Rationals);
        let p = parse_polynomial("(x^4 + 1)*(x^4 + 2)*(x^4+3)", &r).unwrap();
        let err = univariate_factor_bounded(&p, 4);
        assert!(matches!(err, Err(Error::DegreeBound { .. })) || err.unwrap().factors.len() == 3);
    }
}
