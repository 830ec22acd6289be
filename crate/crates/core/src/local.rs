//! Complete discrete valuation rings `Λ = W(F_q)[π]/(E(π))` truncated at a
//! π-adic precision, and polynomials over them.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{AlgElem, FiniteField, FpAlgebra, FqPoly};
use crate::poly::{Monomial, Polynomial};

/// How the uniformizer sits over `W(F_q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ramification {
    /// `π = p`.
    Unramified,
    /// `π^e + a_{e-1} π^{e-1} + ... + a_0 = 0`, given as `[a_0, ..., a_{e-1}]`.
    Eisenstein(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalField {
    p: u64,
    residue: Arc<FiniteField>,
    e: usize,
    /// `a_j = p c_j`; stores `c_j`.
    c: Vec<BigInt>,
    prec: i64,
    digits: u32,
    pm: BigInt,
    zeta_rel: Vec<BigInt>,
    w_inv: Vec<BigInt>,
}

/// An element of `Λ` known modulo `π^prec`. Coordinates are in the basis
/// `π^j ζ^i` (index `j k + i`), modulo `p^digits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfElem {
    c: Vec<BigInt>,
    prec: i64,
}

impl LfElem {
    pub fn precision(&self) -> i64 {
        self.prec
    }
}

impl LocalField {
    pub fn new(residue: &Arc<FiniteField>, ram: Ramification, prec: i64) -> Result<Arc<Self>> {
        let p = residue.characteristic();
        let pb = BigInt::from(p);
        let c: Vec<BigInt> = match &ram {
            Ramification::Unramified => vec![BigInt::from(-1)],
            Ramification::Eisenstein(a) => {
                if a.is_empty() {
                    return Err(Error::invalid("Eisenstein polynomial needs degree at least 1"));
                }
                if a.iter().any(|x| x.rem_euclid(p as i64) != 0) || (a[0] / p as i64).rem_euclid(p as i64) == 0 {
                    return Err(Error::invalid("polynomial is not Eisenstein"));
                }
                a.iter().map(|x| BigInt::from(*x) / &pb).collect()
            }
        };
        let e = c.len();
        let e_prime_ceil = ((e as u64 * p) as i64 + p as i64 - 2) / (p as i64 - 1);
        if prec < 2 * e_prime_ceil + 2 {
            return Err(Error::Precision(format!("precision {prec} is below 2e' + 2")));
        }
        let digits = (prec as u32).div_ceil(e as u32) + 2;
        let pm = pb.pow(digits);
        let zeta_rel = residue.modulus().iter().map(|&x| BigInt::from(x)).collect();
        let mut lf = LocalField { p, residue: residue.clone(), e, c, prec, digits, pm, zeta_rel, w_inv: vec![] };
        let w = lf.w();
        lf.w_inv = lf.inverse(&w)?.c;
        Ok(Arc::new(lf))
    }

    /// `Z_p` (or `W(F_q)`) at the given precision.
    pub fn unramified(residue: &Arc<FiniteField>, prec: i64) -> Result<Arc<Self>> {
        LocalField::new(residue, Ramification::Unramified, prec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn residue_field(&self) -> &Arc<FiniteField> {
        &self.residue
    }

    pub fn ramification_index(&self) -> usize {
        self.e
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// `e' = e p / (p - 1)`.
    pub fn e_prime(&self) -> BigRational {
        BigRational::new(BigInt::from(self.e as u64 * self.p), BigInt::from(self.p - 1))
    }

    /// Smallest integer level above which every 1-unit is a `p`-th power.
    pub fn e_prime_floor(&self) -> i64 {
        self.e_prime().floor().to_integer().try_into().unwrap()
    }

    fn k(&self) -> usize {
        self.residue.degree()
    }

    fn len(&self) -> usize {
        self.e * self.k()
    }

    fn norm(&self, x: BigInt) -> BigInt {
        x.mod_floor(&self.pm)
    }

    fn raw(&self, c: Vec<BigInt>, prec: i64) -> LfElem {
        let c = c.into_iter().map(|x| self.norm(x)).collect();
        LfElem { c, prec: prec.min(self.prec) }
    }

    pub fn zero(&self) -> LfElem {
        self.raw(vec![BigInt::zero(); self.len()], self.prec)
    }

    pub fn one(&self) -> LfElem {
        self.from_int(BigInt::one())
    }

    pub fn from_int(&self, n: BigInt) -> LfElem {
        let mut c = vec![BigInt::zero(); self.len()];
        c[0] = n;
        self.raw(c, self.prec)
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<LfElem> {
        let den = q.denom().mod_floor(&self.pm);
        let inv = crate::field::mod_inverse(&den, &self.pm)
            .ok_or_else(|| Error::NonUnit(format!("denominator {} is divisible by p", q.denom())))?;
        Ok(self.from_int(q.numer() * inv))
    }

    /// `π`.
    pub fn pi(&self) -> LfElem {
        if self.e == 1 {
            return self.from_int(BigInt::from(self.p));
        }
        let mut c = vec![BigInt::zero(); self.len()];
        c[self.k()] = BigInt::one();
        self.raw(c, self.prec)
    }

    /// `ζ`, the lift of the residue generator.
    pub fn zeta(&self) -> LfElem {
        let mut c = vec![BigInt::zero(); self.len()];
        if self.k() == 1 {
            c[0] = BigInt::from(self.residue.generator().first().copied().unwrap_or(0));
        } else {
            c[1] = BigInt::one();
        }
        self.raw(c, self.prec)
    }

    /// `w` with `π^e = p w`.
    fn w(&self) -> LfElem {
        let k = self.k();
        let mut c = vec![BigInt::zero(); self.len()];
        for (j, cj) in self.c.iter().enumerate() {
            c[j * k] = -cj;
        }
        self.raw(c, self.prec)
    }

    pub fn add(&self, a: &LfElem, b: &LfElem) -> LfElem {
        self.raw(a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(), a.prec.min(b.prec))
    }

    pub fn neg(&self, a: &LfElem) -> LfElem {
        self.raw(a.c.iter().map(|x| -x).collect(), a.prec)
    }

    pub fn sub(&self, a: &LfElem, b: &LfElem) -> LfElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &LfElem, b: &LfElem) -> LfElem {
        let (e, k) = (self.e, self.k());
        let mut t = vec![vec![BigInt::zero(); 2 * k]; 2 * e];
        for j1 in 0..e {
            for i1 in 0..k {
                let x = &a.c[j1 * k + i1];
                if x.is_zero() {
                    continue;
                }
                for j2 in 0..e {
                    for i2 in 0..k {
                        let y = &b.c[j2 * k + i2];
                        if !y.is_zero() {
                            t[j1 + j2][i1 + i2] += x * y;
                        }
                    }
                }
            }
        }
        for row in t.iter_mut() {
            for i in (k..2 * k).rev() {
                let top = std::mem::take(&mut row[i]);
                if top.is_zero() {
                    continue;
                }
                for (l, z) in self.zeta_rel[..k].iter().enumerate() {
                    row[i - k + l] -= &top * z;
                }
            }
        }
        let p = BigInt::from(self.p);
        for j in (e..2 * e).rev() {
            let top: Vec<BigInt> = std::mem::take(&mut t[j]);
            for (l, cl) in self.c.iter().enumerate() {
                for i in 0..k {
                    if !top[i].is_zero() {
                        let v = &top[i] * cl * &p;
                        t[j - e + l][i] -= v;
                    }
                }
            }
        }
        let mut c = Vec::with_capacity(self.len());
        for row in t.iter().take(e) {
            c.extend(row[..k].iter().cloned());
        }
        let (va, vb) = (self.valuation(a), self.valuation(b));
        let prec = (a.prec.saturating_add(vb)).min(b.prec.saturating_add(va));
        self.raw(c, prec)
    }

    pub fn pow(&self, a: &LfElem, n: u64) -> LfElem {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// π-adic valuation, capped at the element's precision.
    pub fn valuation(&self, a: &LfElem) -> i64 {
        let k = self.k();
        let mut best = a.prec;
        for (idx, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let j = (idx / k) as i64;
            let mut vp = 0i64;
            let mut y = x.clone();
            let p = BigInt::from(self.p);
            while (&y % &p).is_zero() && vp < self.digits as i64 {
                y /= &p;
                vp += 1;
            }
            best = best.min(self.e as i64 * vp + j);
        }
        best
    }

    /// Whether `a` is zero at its own precision.
    pub fn is_zero(&self, a: &LfElem) -> bool {
        self.valuation(a) >= a.prec
    }

    /// `a mod π` in `F_q`.
    pub fn residue(&self, a: &LfElem) -> crate::forms::Fq {
        let k = self.k();
        let p = BigInt::from(self.p);
        let v: Vec<u64> = a.c[..k].iter().map(|x| x.mod_floor(&p).try_into().unwrap()).collect();
        self.residue.reduce(v)
    }

    /// A lift of a residue class.
    pub fn lift_residue(&self, r: &crate::forms::Fq) -> LfElem {
        let mut c = vec![BigInt::zero(); self.len()];
        if self.k() == 1 {
            c[0] = BigInt::from(r.first().copied().unwrap_or(0));
        } else {
            for (i, x) in r.iter().enumerate() {
                c[i] = BigInt::from(*x);
            }
        }
        self.raw(c, self.prec)
    }

    pub fn inverse(&self, a: &LfElem) -> Result<LfElem> {
        let r = self.residue(a);
        if r.is_empty() {
            return Err(Error::NonUnit("element of positive valuation".into()));
        }
        let mut y = self.lift_residue(&self.residue.inv(&r)?);
        let two = self.from_int(BigInt::from(2));
        let mut reach = 1i64;
        while reach < self.prec {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
            reach *= 2;
        }
        Ok(LfElem { prec: a.prec, ..y })
    }

    /// `a / π`, for `a` of positive valuation.
    pub fn div_pi(&self, a: &LfElem) -> Result<LfElem> {
        if self.valuation(a) < 1 {
            return Err(Error::NonUnit("division by π of a unit".into()));
        }
        let mut t = a.clone();
        for _ in 1..self.e {
            t = self.mul(&t, &self.pi());
        }
        t = self.mul(&t, &LfElem { c: self.w_inv.clone(), prec: self.prec });
        let p = BigInt::from(self.p);
        let c = t.c.iter().map(|x| x.div_floor(&p)).collect();
        Ok(self.raw(c, a.prec - 1))
    }

    /// `a / p`, for `a ∈ pΛ`.
    pub fn div_p(&self, a: &LfElem) -> Result<LfElem> {
        let p = BigInt::from(self.p);
        if self.valuation(a) < self.e as i64 {
            return Err(Error::NonUnit("division by p".into()));
        }
        let c = a.c.iter().map(|x| x.div_floor(&p)).collect();
        Ok(self.raw(c, a.prec - self.e as i64))
    }

    /// Canonical representative modulo `p^{⌊prec/e⌋}`, used as a sort key.
    pub fn key(&self, a: &LfElem) -> Vec<BigInt> {
        self.key_at(a, a.prec)
    }

    /// Representative modulo `p^{⌊prec/e⌋}` for a precision not above `a`'s.
    pub fn key_at(&self, a: &LfElem, prec: i64) -> Vec<BigInt> {
        let m = BigInt::from(self.p).pow((prec.min(a.prec).max(0) as u32) / self.e as u32);
        a.c.iter().map(|x| x.mod_floor(&m)).collect()
    }
}

/// A polynomial over `Λ` in the variables of a residue algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfPoly {
    terms: BTreeMap<Monomial, LfElem>,
    nvars: usize,
}

impl LfPoly {
    pub fn terms(&self) -> &BTreeMap<Monomial, LfElem> {
        &self.terms
    }
}

/// `Λ[x_1, ..., x_n]` together with its reduction `F_q[x][S^{-1}]`.
#[derive(Debug, Clone)]
pub struct LocalAlgebra {
    field: Arc<LocalField>,
    residue: Arc<FpAlgebra>,
}

impl LocalAlgebra {
    pub fn new(field: &Arc<LocalField>, residue: &Arc<FpAlgebra>) -> Result<Arc<Self>> {
        if residue.field() != field.residue_field() {
            return Err(Error::invalid("residue algebra must live over the residue field"));
        }
        Ok(Arc::new(LocalAlgebra { field: field.clone(), residue: residue.clone() }))
    }

    pub fn field(&self) -> &Arc<LocalField> {
        &self.field
    }

    pub fn residue_algebra(&self) -> &Arc<FpAlgebra> {
        &self.residue
    }

    fn n(&self) -> usize {
        self.residue.nvars()
    }

    pub fn constant(&self, c: LfElem) -> LfPoly {
        let mut terms = BTreeMap::new();
        if !self.field.is_zero(&c) {
            terms.insert(vec![0; self.n()], c);
        }
        LfPoly { terms, nvars: self.n() }
    }

    pub fn one(&self) -> LfPoly {
        self.constant(self.field.one())
    }

    pub fn pi(&self) -> LfPoly {
        self.constant(self.field.pi())
    }

    pub fn var(&self, j: usize) -> LfPoly {
        let mut m = vec![0; self.n()];
        m[j] = 1;
        LfPoly { terms: [(m, self.field.one())].into_iter().collect(), nvars: self.n() }
    }

    fn clean(&self, mut f: LfPoly) -> LfPoly {
        f.terms.retain(|_, c| !self.field.is_zero(c));
        f
    }

    pub fn add(&self, a: &LfPoly, b: &LfPoly) -> LfPoly {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            let v = match out.terms.get(m) {
                Some(x) => self.field.add(x, c),
                None => c.clone(),
            };
            out.terms.insert(m.clone(), v);
        }
        self.clean(out)
    }

    pub fn neg(&self, a: &LfPoly) -> LfPoly {
        LfPoly { terms: a.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect(), nvars: a.nvars }
    }

    pub fn sub(&self, a: &LfPoly, b: &LfPoly) -> LfPoly {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &LfPoly, b: &LfPoly) -> LfPoly {
        let mut out = LfPoly { terms: BTreeMap::new(), nvars: self.n() };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let t = self.field.mul(ca, cb);
                let v = match out.terms.get(&m) {
                    Some(x) => self.field.add(x, &t),
                    None => t,
                };
                out.terms.insert(m, v);
            }
        }
        self.clean(out)
    }

    pub fn pow(&self, a: &LfPoly, n: u64) -> LfPoly {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Smallest precision among the coefficients (the working precision when empty).
    pub fn precision(&self, a: &LfPoly) -> i64 {
        a.terms.values().map(|c| c.prec).min().unwrap_or(self.field.prec)
    }

    /// Gauss valuation; `None` when the polynomial is zero at its precision.
    pub fn valuation(&self, a: &LfPoly) -> Option<i64> {
        a.terms.values().map(|c| self.field.valuation(c)).filter(|&v| v < self.field.prec).min()
    }

    pub fn is_zero(&self, a: &LfPoly) -> bool {
        self.valuation(a).is_none()
    }

    pub fn div_pi(&self, a: &LfPoly) -> Result<LfPoly> {
        let terms = a.terms.iter().map(|(m, c)| Ok((m.clone(), self.field.div_pi(c)?))).collect::<Result<_>>()?;
        Ok(self.clean(LfPoly { terms, nvars: a.nvars }))
    }

    fn div_p(&self, a: &LfPoly) -> Result<LfPoly> {
        let terms = a.terms.iter().map(|(m, c)| Ok((m.clone(), self.field.div_p(c)?))).collect::<Result<_>>()?;
        Ok(self.clean(LfPoly { terms, nvars: a.nvars }))
    }

    /// Reduction modulo `π`.
    pub fn reduce(&self, a: &LfPoly) -> AlgElem {
        let mut num = FqPoly::new();
        for (m, c) in &a.terms {
            let r = self.field.residue(c);
            if !r.is_empty() {
                num.insert(m.clone(), r);
            }
        }
        self.residue.elem(num)
    }

    /// Level `m` with `a - 1 ∈ π^m`, i.e. the 1-unit level (0 when `ā ≠ 1`).
    pub fn one_unit_level(&self, a: &LfPoly) -> i64 {
        match self.valuation(&self.sub(a, &self.one())) {
            Some(v) => v,
            None => self.precision(a),
        }
    }

    /// A `p`-th root of a 1-unit of level above `e'`, found by the chord
    /// iteration `y ← y - (y^p - a)/p`. Returns the root, known to precision
    /// `prec(a) - e`, and the valuation to which `y^p = a` was verified.
    pub fn pth_root(&self, a: &LfPoly) -> Result<Option<(LfPoly, i64)>> {
        let level = self.one_unit_level(a);
        if BigRational::from_integer(BigInt::from(level)) <= self.field.e_prime() {
            return Ok(None);
        }
        let p = self.field.p;
        let full = |f: LfPoly| self.with_precision(f, self.field.prec);
        let target = full(a.clone());
        let mut y = self.one();
        for _ in 0..self.field.prec + 2 {
            let err = self.sub(&self.pow(&y, p), &target);
            if self.is_zero(&err) {
                break;
            }
            y = full(self.sub(&y, &self.div_p(&err)?));
        }
        let err = self.sub(&self.pow(&y, p), a);
        let verified = self.valuation(&err).unwrap_or_else(|| self.precision(&err));
        let y = self.with_precision(y, self.precision(a) - self.field.e as i64);
        Ok(Some((y, verified)))
    }

    fn with_precision(&self, mut f: LfPoly, prec: i64) -> LfPoly {
        for c in f.terms.values_mut() {
            c.prec = prec.min(self.field.prec);
        }
        f
    }

    /// Reads a rational polynomial whose variables are the residue algebra's
    /// variables, the uniformizer `pi` and optionally the residue generator `a`.
    pub fn from_polynomial(&self, f: &Polynomial, pi: &str, zeta: Option<&str>) -> Result<LfPoly> {
        let ring = f.ring();
        let pi_idx = ring.var_index(pi);
        let zeta_idx = zeta.and_then(|z| ring.var_index(z));
        let mut map = Vec::new();
        for (i, v) in ring.vars().iter().enumerate() {
            if Some(i) == pi_idx || Some(i) == zeta_idx {
                map.push(None);
                continue;
            }
            let j = self.residue.vars().iter().position(|w| w == v).ok_or_else(|| Error::UnknownVariable(v.clone()))?;
            map.push(Some(j));
        }
        let mut out = LfPoly { terms: BTreeMap::new(), nvars: self.n() };
        for (m, c) in f.terms() {
            let mut coeff = self.field.from_rational(c)?;
            let mut mono = vec![0u32; self.n()];
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if Some(i) == pi_idx {
                    coeff = self.field.mul(&coeff, &self.field.pow(&self.field.pi(), e as u64));
                } else if Some(i) == zeta_idx {
                    coeff = self.field.mul(&coeff, &self.field.pow(&self.field.zeta(), e as u64));
                } else {
                    mono[map[i].unwrap()] += e;
                }
            }
            out = self.add(&out, &LfPoly { terms: [(mono, coeff)].into_iter().collect(), nvars: self.n() });
        }
        Ok(out)
    }

    pub fn key(&self, a: &LfPoly, prec: i64) -> Vec<(Monomial, Vec<BigInt>)> {
        a.terms.iter().map(|(m, c)| (m.clone(), self.field.key_at(c, prec))).filter(|(_, k)| k.iter().any(|x| !x.is_zero())).collect()
    }

    pub fn format(&self, a: &LfPoly) -> String {
        if a.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = a
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let k = self.field.key(c);
                let coeff = if k.len() == 1 { k[0].to_string() } else { format!("[{}]", k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")) };
                let mono: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(j, e)| {
                        let v = &self.residue.vars()[j];
                        if *e == 1 {
                            v.clone()
                        } else {
                            format!("{v}^{e}")
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    coeff
                } else {
                    format!("{coeff}*{}", mono.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn is_signed_one(&self, a: &LfPoly) -> bool {
        a.terms.len() == 1 && a.terms.keys().next().unwrap().iter().all(|&e| e == 0) && {
            let c = a.terms.values().next().unwrap();
            self.field.is_zero(&self.field.sub(c, &self.field.one()))
        }
    }
}
