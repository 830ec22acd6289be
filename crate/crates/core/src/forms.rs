//! Finite fields, localized polynomial algebras over them, and their Kähler
//! differentials with exact/closed slices and the inverse Cartier operator.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::poly::Monomial;
use crate::upoly::{self, Up};

/// An element of `F_q`, a polynomial in the generator of degree below `k`.
pub type Fq = Up;

/// `F_q = F_p[a]/(m(a))` with `m` monic irreducible of degree `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    modulus: Up,
}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Arc::new(FiniteField { p, modulus: vec![0, 1] }))
    }

    pub fn extension(p: u64, modulus: Up) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = upoly::trim(modulus.iter().map(|c| c % p).collect());
        if m.last() != Some(&1) || !upoly::is_irreducible(&m, p) {
            return Err(Error::invalid("modulus must be monic and irreducible"));
        }
        Ok(Arc::new(FiniteField { p, modulus: m }))
    }

    /// The first monic irreducible of degree `k` in lexicographic order.
    pub fn of_order(p: u64, k: usize) -> Result<Arc<Self>> {
        if k == 1 {
            return FiniteField::prime(p);
        }
        for code in 0..p.pow(k as u32) {
            let mut m: Up = (0..k).map(|i| code / p.pow(i as u32) % p).collect();
            m.push(1);
            if upoly::is_irreducible(&m, p) {
                return FiniteField::extension(p, m);
            }
        }
        Err(Error::invalid("no irreducible modulus found"))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }

    pub fn modulus(&self) -> &Up {
        &self.modulus
    }

    pub fn zero(&self) -> Fq {
        vec![]
    }

    pub fn one(&self) -> Fq {
        vec![1]
    }

    pub fn from_i64(&self, n: i64) -> Fq {
        upoly::trim(vec![n.rem_euclid(self.p as i64) as u64])
    }

    /// The class of the generator `a`.
    pub fn generator(&self) -> Fq {
        self.reduce(vec![0, 1])
    }

    pub fn reduce(&self, a: Up) -> Fq {
        let a = upoly::trim(a.into_iter().map(|c| c % self.p).collect());
        upoly::rem(&a, &self.modulus, self.p)
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        upoly::add(a, b, self.p)
    }

    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        upoly::sub(a, b, self.p)
    }

    pub fn neg(&self, a: &Fq) -> Fq {
        upoly::sub(&vec![], a, self.p)
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        upoly::rem(&upoly::mul(a, b, self.p), &self.modulus, self.p)
    }

    pub fn inv(&self, a: &Fq) -> Result<Fq> {
        if a.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = upoly::xgcd(a, &self.modulus, self.p);
        let gi = crate::field::inv_mod_u64(g[0], self.p).ok_or(Error::DivisionByZero)?;
        Ok(upoly::rem(&upoly::scale(&s, gi, self.p), &self.modulus, self.p))
    }

    pub fn pow(&self, a: &Fq, e: u64) -> Fq {
        if self.degree() == 1 {
            return upoly::trim(vec![crate::field::pow_mod_u64(a.first().copied().unwrap_or(0), e, self.p)]);
        }
        upoly::powmod(a, e as u128, &self.modulus, self.p)
    }

    pub fn frobenius(&self, a: &Fq) -> Fq {
        self.pow(a, self.p)
    }

    /// All `q` elements, in a fixed order.
    pub fn elements(&self) -> Vec<Fq> {
        let k = self.degree();
        (0..self.order()).map(|code| upoly::trim((0..k).map(|i| code / self.p.pow(i as u32) % self.p).collect())).collect()
    }

    /// Coordinates over `F_p`, padded to length `k`.
    pub fn coords(&self, a: &Fq) -> Vec<u64> {
        let mut v = a.clone();
        v.resize(self.degree(), 0);
        v
    }

    pub fn format(&self, a: &Fq) -> String {
        if self.degree() == 1 {
            return a.first().copied().unwrap_or(0).to_string();
        }
        let parts: Vec<String> = a
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 if *c == 1 => "a".into(),
                1 => format!("{c}*a"),
                _ if *c == 1 => format!("a^{i}"),
                _ => format!("{c}*a^{i}"),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else if parts.len() == 1 {
            parts[0].clone()
        } else {
            format!("({})", parts.join(" + "))
        }
    }
}

/// Kernel of the Artin–Schreier map `x ↦ x^p - x` on `F_q`.
pub fn artin_schreier_kernel(f: &FiniteField) -> Vec<Fq> {
    f.elements().into_iter().filter(|x| f.sub(&f.frobenius(x), x).is_empty()).collect()
}

/// Sparse polynomial over `F_q`, keyed by exponent vector (lexicographic).
pub type FqPoly = BTreeMap<Monomial, Fq>;

/// `F_q[x_1, ..., x_n][S^{-1}]` for a finite list `S` of nonzero polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpAlgebra {
    field: Arc<FiniteField>,
    vars: Vec<String>,
    inverted: Vec<FqPoly>,
}

/// `num / Π s_i^{den_i}`.
#[derive(Debug, Clone)]
pub struct AlgElem {
    num: FqPoly,
    den: Vec<u32>,
}

impl AlgElem {
    pub fn numerator(&self) -> &FqPoly {
        &self.num
    }

    pub fn denominator(&self) -> &[u32] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

fn poly_add(f: &FiniteField, a: &FqPoly, b: &FqPoly) -> FqPoly {
    let mut out = a.clone();
    for (m, c) in b {
        let e = out.entry(m.clone()).or_default();
        *e = f.add(e, c);
        if e.is_empty() {
            out.remove(m);
        }
    }
    out
}

fn poly_scale(f: &FiniteField, a: &FqPoly, c: &Fq) -> FqPoly {
    if c.is_empty() {
        return FqPoly::new();
    }
    a.iter().map(|(m, x)| (m.clone(), f.mul(x, c))).filter(|(_, x)| !x.is_empty()).collect()
}

fn poly_mul(f: &FiniteField, a: &FqPoly, b: &FqPoly) -> FqPoly {
    let mut out = FqPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let e = out.entry(m.clone()).or_default();
            *e = f.add(e, &f.mul(ca, cb));
            if e.is_empty() {
                out.remove(&m);
            }
        }
    }
    out
}

fn poly_deriv(f: &FiniteField, a: &FqPoly, j: usize) -> FqPoly {
    let mut out = FqPoly::new();
    for (m, c) in a {
        if m[j] == 0 {
            continue;
        }
        let k = f.from_i64((m[j] as u64 % f.p) as i64);
        let c = f.mul(c, &k);
        if c.is_empty() {
            continue;
        }
        let mut m2 = m.clone();
        m2[j] -= 1;
        out.insert(m2, c);
    }
    out
}

/// `a^p`, using additivity of Frobenius.
fn poly_frobenius(f: &FiniteField, a: &FqPoly) -> FqPoly {
    a.iter().map(|(m, c)| (m.iter().map(|e| e * f.p as u32).collect(), f.frobenius(c))).collect()
}

/// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
fn poly_div_exact(f: &FiniteField, a: &FqPoly, b: &FqPoly) -> Option<FqPoly> {
    let (lb, cb) = b.iter().next_back()?;
    let cbi = f.inv(cb).ok()?;
    let mut rest = a.clone();
    let mut q = FqPoly::new();
    while let Some((la, ca)) = rest.iter().next_back() {
        if la.iter().zip(lb).any(|(x, y)| x < y) {
            return None;
        }
        let m: Monomial = la.iter().zip(lb).map(|(x, y)| x - y).collect();
        let c = f.mul(ca, &cbi);
        let t: FqPoly = [(m.clone(), c.clone())].into_iter().collect();
        rest = poly_add(f, &rest, &poly_scale(f, &poly_mul(f, &t, b), &f.neg(&f.one())));
        q.insert(m, c);
    }
    Some(q)
}

impl FpAlgebra {
    pub fn new<S: AsRef<str>>(field: &Arc<FiniteField>, vars: &[S], inverted: Vec<FqPoly>) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        for s in &inverted {
            if s.is_empty() {
                return Err(Error::invalid("cannot invert zero"));
            }
            if s.keys().any(|m| m.len() != vars.len()) {
                return Err(Error::invalid("inverted element has the wrong number of variables"));
            }
        }
        Ok(Arc::new(FpAlgebra { field: field.clone(), vars, inverted }))
    }

    /// The polynomial algebra with no localization.
    pub fn polynomial<S: AsRef<str>>(field: &Arc<FiniteField>, vars: &[S]) -> Result<Arc<Self>> {
        FpAlgebra::new(field, vars, vec![])
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn inverted(&self) -> &[FqPoly] {
        &self.inverted
    }

    pub fn var_poly(&self, j: usize) -> FqPoly {
        let mut m = vec![0; self.nvars()];
        m[j] = 1;
        [(m, self.field.one())].into_iter().collect()
    }

    pub fn const_poly(&self, c: Fq) -> FqPoly {
        if c.is_empty() {
            FqPoly::new()
        } else {
            [(vec![0; self.nvars()], c)].into_iter().collect()
        }
    }

    pub fn poly(&self, terms: &[(Monomial, i64)]) -> FqPoly {
        let mut out = FqPoly::new();
        for (m, c) in terms {
            out = poly_add(&self.field, &out, &[(m.clone(), self.field.from_i64(*c))].into_iter().filter(|x| !x.1.is_empty()).collect());
        }
        out
    }

    pub fn elem(&self, num: FqPoly) -> AlgElem {
        AlgElem { num, den: vec![0; self.inverted.len()] }
    }

    pub fn var(&self, j: usize) -> AlgElem {
        self.elem(self.var_poly(j))
    }

    pub fn constant(&self, c: Fq) -> AlgElem {
        self.elem(self.const_poly(c))
    }

    pub fn from_i64(&self, n: i64) -> AlgElem {
        self.constant(self.field.from_i64(n))
    }

    /// `1 / s_i`.
    pub fn inverse_of_inverted(&self, i: usize) -> AlgElem {
        let mut den = vec![0; self.inverted.len()];
        den[i] = 1;
        AlgElem { num: self.const_poly(self.field.one()), den }
    }

    fn normalize(&self, mut a: AlgElem) -> AlgElem {
        if a.num.is_empty() {
            a.den.iter_mut().for_each(|d| *d = 0);
            return a;
        }
        for i in 0..a.den.len() {
            while a.den[i] > 0 {
                match poly_div_exact(&self.field, &a.num, &self.inverted[i]) {
                    Some(q) => {
                        a.num = q;
                        a.den[i] -= 1;
                    }
                    None => break,
                }
            }
        }
        a
    }

    fn lift_den(&self, a: &AlgElem, den: &[u32]) -> FqPoly {
        let mut num = a.num.clone();
        for (i, (&have, &want)) in a.den.iter().zip(den).enumerate() {
            for _ in have..want {
                num = poly_mul(&self.field, &num, &self.inverted[i]);
            }
        }
        num
    }

    pub fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let den: Vec<u32> = a.den.iter().zip(&b.den).map(|(x, y)| *x.max(y)).collect();
        let num = poly_add(&self.field, &self.lift_den(a, &den), &self.lift_den(b, &den));
        self.normalize(AlgElem { num, den })
    }

    pub fn neg(&self, a: &AlgElem) -> AlgElem {
        AlgElem { num: poly_scale(&self.field, &a.num, &self.field.neg(&self.field.one())), den: a.den.clone() }
    }

    pub fn sub(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let num = poly_mul(&self.field, &a.num, &b.num);
        let den = a.den.iter().zip(&b.den).map(|(x, y)| x + y).collect();
        self.normalize(AlgElem { num, den })
    }

    pub fn scale(&self, a: &AlgElem, c: &Fq) -> AlgElem {
        AlgElem { num: poly_scale(&self.field, &a.num, c), den: a.den.clone() }
    }

    pub fn pow(&self, a: &AlgElem, e: u32) -> AlgElem {
        let mut acc = self.from_i64(1);
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn eq(&self, a: &AlgElem, b: &AlgElem) -> bool {
        self.sub(a, b).num.is_empty()
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &AlgElem) -> AlgElem {
        let num = poly_frobenius(&self.field, &a.num);
        let den = a.den.iter().map(|d| d * self.field.p as u32).collect();
        self.normalize(AlgElem { num, den })
    }

    pub fn derivative(&self, a: &AlgElem, j: usize) -> AlgElem {
        let f = &self.field;
        let mut out = self.elem(poly_deriv(f, &a.num, j));
        out.den = a.den.clone();
        for (i, &e) in a.den.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let ds = poly_deriv(f, &self.inverted[i], j);
            if ds.is_empty() {
                continue;
            }
            let k = f.from_i64(-((e as u64 % f.p) as i64));
            let mut den = a.den.clone();
            den[i] += 1;
            let t = AlgElem { num: poly_scale(f, &poly_mul(f, &a.num, &ds), &k), den };
            out = self.add(&out, &t);
        }
        self.normalize(out)
    }

    /// The inverse when `a` is `c · Π s_i^{k_i}` with `c` a nonzero constant.
    pub fn inverse(&self, a: &AlgElem) -> Result<AlgElem> {
        let mut num = a.num.clone();
        let mut k = vec![0u32; self.inverted.len()];
        for (i, s) in self.inverted.iter().enumerate() {
            if s.len() == 1 && s.keys().next().unwrap().iter().all(|&e| e == 0) {
                continue;
            }
            while let Some(q) = poly_div_exact(&self.field, &num, s) {
                num = q;
                k[i] += 1;
            }
        }
        let c = match (num.len(), num.iter().next()) {
            (1, Some((m, c))) if m.iter().all(|&e| e == 0) => c.clone(),
            _ => return Err(Error::NonUnit(self.format_elem(a))),
        };
        let mut num = self.const_poly(self.field.inv(&c)?);
        for (i, &d) in a.den.iter().enumerate() {
            for _ in 0..d {
                num = poly_mul(&self.field, &num, &self.inverted[i]);
            }
        }
        Ok(self.normalize(AlgElem { num, den: k }))
    }

    pub fn format_poly(&self, a: &FqPoly) -> String {
        if a.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in a.iter().rev() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(j, e)| if *e == 1 { self.vars[j].clone() } else { format!("{}^{e}", self.vars[j]) })
                .collect();
            let cs = self.field.format(c);
            parts.push(match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs,
                (false, "1") => mono.join("*"),
                _ => format!("{cs}*{}", mono.join("*")),
            });
        }
        parts.join(" + ")
    }

    pub fn format_elem(&self, a: &AlgElem) -> String {
        let num = self.format_poly(&a.num);
        let dens: Vec<String> = a
            .den
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                let s = format!("({})", self.format_poly(&self.inverted[i]));
                if *e == 1 {
                    s
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        if dens.is_empty() {
            num
        } else {
            format!("({num})/{}", dens.join("*"))
        }
    }
}

/// `Σ_I f_I dx_I` with `I` strictly increasing.
#[derive(Clone)]
pub struct DifferentialForm {
    alg: Arc<FpAlgebra>,
    degree: usize,
    terms: BTreeMap<Vec<usize>, AlgElem>,
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| {
                let d: Vec<String> = i.iter().map(|&j| format!("d{}", self.alg.vars[j])).collect();
                let c = self.alg.format_elem(c);
                let c = if c.contains(" + ") && !c.starts_with('(') { format!("({c})") } else { c };
                if d.is_empty() {
                    c
                } else if c == "1" {
                    d.join("^")
                } else {
                    format!("{c}*{}", d.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl PartialEq for DifferentialForm {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.sub(other).is_zero()
    }
}

impl DifferentialForm {
    pub fn zero(alg: &Arc<FpAlgebra>, degree: usize) -> Self {
        DifferentialForm { alg: alg.clone(), degree, terms: BTreeMap::new() }
    }

    pub fn function(alg: &Arc<FpAlgebra>, f: AlgElem) -> Self {
        DifferentialForm::from_terms(alg, 0, vec![(vec![], f)])
    }

    /// `dx_j`.
    pub fn dx(alg: &Arc<FpAlgebra>, j: usize) -> Self {
        DifferentialForm::from_terms(alg, 1, vec![(vec![j], alg.from_i64(1))])
    }

    pub fn from_terms(alg: &Arc<FpAlgebra>, degree: usize, terms: Vec<(Vec<usize>, AlgElem)>) -> Self {
        let mut out = DifferentialForm::zero(alg, degree);
        for (mut idx, c) in terms {
            let sign = sort_sign(&mut idx);
            if sign == 0 {
                continue;
            }
            let c = if sign < 0 { alg.neg(&c) } else { c };
            out.add_term(idx, c);
        }
        out
    }

    fn add_term(&mut self, idx: Vec<usize>, c: AlgElem) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.get(&idx) {
            Some(old) => self.alg.add(old, &c),
            None => c,
        };
        if next.is_zero() {
            self.terms.remove(&idx);
        } else {
            self.terms.insert(idx, next);
        }
    }

    pub fn algebra(&self) -> &Arc<FpAlgebra> {
        &self.alg
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &AlgElem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = DifferentialForm::zero(&self.alg, self.degree);
        for (i, c) in &self.terms {
            out.terms.insert(i.clone(), self.alg.neg(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul_fn(&self, f: &AlgElem) -> Self {
        let mut out = DifferentialForm::zero(&self.alg, self.degree);
        for (i, c) in &self.terms {
            out.add_term(i.clone(), self.alg.mul(c, f));
        }
        out
    }

    pub fn scale(&self, c: &Fq) -> Self {
        self.mul_fn(&self.alg.constant(c.clone()))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = DifferentialForm::zero(&self.alg, self.degree + other.degree);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let mut idx: Vec<usize> = i.iter().chain(j).copied().collect();
                let sign = sort_sign(&mut idx);
                if sign == 0 {
                    continue;
                }
                let c = self.alg.mul(a, b);
                out.add_term(idx, if sign < 0 { self.alg.neg(&c) } else { c });
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = DifferentialForm::zero(&self.alg, self.degree + 1);
        for (i, f) in &self.terms {
            for j in 0..self.alg.nvars() {
                if i.contains(&j) {
                    continue;
                }
                let df = self.alg.derivative(f, j);
                if df.is_zero() {
                    continue;
                }
                let mut idx = vec![j];
                idx.extend(i);
                let sign = sort_sign(&mut idx);
                out.add_term(idx, if sign < 0 { self.alg.neg(&df) } else { df });
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.d().is_zero()
    }
}

/// Sorts in place and returns the permutation sign, or 0 on a repeat.
fn sort_sign(idx: &mut [usize]) -> i32 {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            } else if idx[j] == idx[j + 1] {
                return 0;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

pub fn d(w: &DifferentialForm) -> DifferentialForm {
    w.d()
}

/// `du / u` for a unit `u`.
pub fn dlog(alg: &Arc<FpAlgebra>, u: &AlgElem) -> Result<DifferentialForm> {
    let inv = alg.inverse(u)?;
    Ok(DifferentialForm::function(alg, u.clone()).d().mul_fn(&inv))
}

/// `C^{-1}(f dx_{i_1} ∧ ... ∧ dx_{i_r}) = f^p (x_{i_1} ... x_{i_r})^{p-1} dx_{i_1} ∧ ... ∧ dx_{i_r}`.
pub fn cartier_inverse(w: &DifferentialForm) -> DifferentialForm {
    let alg = &w.alg;
    let p = alg.field.p as u32;
    let mut out = DifferentialForm::zero(alg, w.degree);
    for (i, f) in &w.terms {
        let mut m = vec![0u32; alg.nvars()];
        for &j in i {
            m[j] = p - 1;
        }
        let xs = alg.elem([(m, alg.field.one())].into_iter().collect());
        out.add_term(i.clone(), alg.mul(&alg.frobenius(f), &xs));
    }
    out
}

/// Monomial basis of polynomial `r`-forms `m dx_I` with `deg m + r ≤ bound`.
#[derive(Debug, Clone)]
pub struct FormSlice {
    alg: Arc<FpAlgebra>,
    degree: usize,
    basis: Vec<(Monomial, Vec<usize>)>,
    index: BTreeMap<(Monomial, Vec<usize>), usize>,
}

fn monomials_upto(n: usize, deg: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if deg < 0 {
        return out;
    }
    fn rec(n: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    rec(n, deg as u32, &mut Vec::new(), &mut out);
    out
}

fn index_sets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

impl FormSlice {
    pub fn new(alg: &Arc<FpAlgebra>, degree: usize, bound: u32) -> Result<Self> {
        if !alg.inverted.is_empty() {
            return Err(Error::invalid("degree slices are defined for polynomial algebras"));
        }
        let mut basis = Vec::new();
        for idx in index_sets(alg.nvars(), degree) {
            for m in monomials_upto(alg.nvars(), bound as i64 - degree as i64) {
                basis.push((m, idx.clone()));
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
        Ok(FormSlice { alg: alg.clone(), degree, basis, index })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_form(&self, k: usize) -> DifferentialForm {
        let (m, i) = &self.basis[k];
        DifferentialForm::from_terms(&self.alg, self.degree, vec![(i.clone(), self.alg.elem([(m.clone(), self.alg.field.one())].into_iter().collect()))])
    }

    pub fn coords(&self, w: &DifferentialForm) -> Result<Vec<Fq>> {
        let mut v = vec![Fq::new(); self.dim()];
        for (i, f) in &w.terms {
            if f.den.iter().any(|&e| e > 0) {
                return Err(Error::invalid("form has denominators"));
            }
            for (m, c) in &f.num {
                let k = self.index.get(&(m.clone(), i.clone())).ok_or_else(|| Error::BoundExceeded(format!("{w} leaves the slice")))?;
                v[*k] = c.clone();
            }
        }
        Ok(v)
    }

    pub fn form(&self, v: &[Fq]) -> DifferentialForm {
        let mut out = DifferentialForm::zero(&self.alg, self.degree);
        for (k, c) in v.iter().enumerate() {
            if !c.is_empty() {
                out = out.add(&self.basis_form(k).scale(c));
            }
        }
        out
    }
}

/// Row echelon form over `F_q`; returns the pivot rows and their pivot columns.
pub fn row_reduce(f: &FiniteField, rows: &[Vec<Fq>]) -> (Vec<Vec<Fq>>, Vec<usize>) {
    let mut m: Vec<Vec<Fq>> = rows.to_vec();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_empty()) else { continue };
        m.swap(r, pr);
        let inv = f.inv(&m[r][c]).expect("nonzero pivot");
        m[r] = m[r].iter().map(|x| f.mul(x, &inv)).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_empty() {
                let k = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = f.sub(x, &f.mul(&k, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(f: &FiniteField, rows: &[Vec<Fq>]) -> usize {
    row_reduce(f, rows).1.len()
}

/// Kernel basis of the linear map sending the `j`-th basis vector to `images[j]`.
pub fn kernel(f: &FiniteField, images: &[Vec<Fq>]) -> Vec<Vec<Fq>> {
    let n = images.len();
    let cols = images.first().map(|r| r.len()).unwrap_or(0);
    let mt: Vec<Vec<Fq>> = (0..cols).map(|c| (0..n).map(|j| images[j][c].clone()).collect()).collect();
    let (red, pivots) = row_reduce(f, &mt);
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Fq::new(); n];
        x[free] = f.one();
        for (row, &pc) in red.iter().zip(&pivots) {
            x[pc] = f.neg(&row[free]);
        }
        out.push(x);
    }
    out
}

/// Bases of `B^r ⊆ Z^r ⊆ Ω^r` restricted to the degree slice.
#[derive(Debug, Clone)]
pub struct BzSlice {
    pub slice: FormSlice,
    pub omega: Vec<DifferentialForm>,
    pub z: Vec<DifferentialForm>,
    pub b: Vec<DifferentialForm>,
}

impl BzSlice {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.b.len(), self.z.len(), self.omega.len())
    }
}

pub fn bz_slice(alg: &Arc<FpAlgebra>, r: usize, bound: u32) -> Result<BzSlice> {
    let f = &alg.field;
    let slice = FormSlice::new(alg, r, bound)?;
    let next = FormSlice::new(alg, r + 1, bound)?;
    let omega: Vec<DifferentialForm> = (0..slice.dim()).map(|k| slice.basis_form(k)).collect();
    let d_images: Vec<Vec<Fq>> = omega.iter().map(|w| next.coords(&w.d())).collect::<Result<_>>()?;
    let z: Vec<DifferentialForm> = if next.dim() == 0 {
        omega.clone()
    } else {
        kernel(f, &d_images).iter().map(|v| slice.form(v)).collect()
    };
    let b = if r == 0 {
        vec![]
    } else {
        let prev = FormSlice::new(alg, r - 1, bound)?;
        let rows: Vec<Vec<Fq>> = (0..prev.dim()).map(|k| slice.coords(&prev.basis_form(k).d())).collect::<Result<_>>()?;
        row_reduce(f, &rows).0.iter().map(|v| slice.form(v)).collect()
    };
    Ok(BzSlice { slice, omega, z, b })
}

/// `F_p`-linearly independent subset of `dlog u_1 ∧ ... ∧ dlog u_r` over
/// units `u` that are products of at most `word_bound` generators.
pub fn log_forms_span(alg: &Arc<FpAlgebra>, r: usize, gens: &[AlgElem], word_bound: usize) -> Result<Vec<DifferentialForm>> {
    let mut units: Vec<AlgElem> = Vec::new();
    let mut layer: Vec<(usize, AlgElem)> = vec![(0, alg.from_i64(1))];
    for _ in 0..word_bound {
        let mut next = Vec::new();
        for (start, u) in &layer {
            for (k, g) in gens.iter().enumerate().skip(*start) {
                let w = alg.mul(u, g);
                units.push(w.clone());
                next.push((k, w));
            }
        }
        layer = next;
    }
    let logs: Vec<DifferentialForm> = units.iter().map(|u| dlog(alg, u)).collect::<Result<_>>()?;
    let mut candidates = Vec::new();
    if r == 0 {
        candidates.push(DifferentialForm::function(alg, alg.from_i64(1)));
    } else {
        for idx in index_sets(logs.len(), r) {
            let mut w = logs[idx[0]].clone();
            for &k in &idx[1..] {
                w = w.wedge(&logs[k]);
            }
            if !w.is_zero() {
                candidates.push(w);
            }
        }
    }
    independent_subset(alg, &candidates)
}

/// Greedy `F_p`-independent subset, in input order.
pub fn independent_subset(alg: &Arc<FpAlgebra>, forms: &[DifferentialForm]) -> Result<Vec<DifferentialForm>> {
    let vecs = fp_coordinates(alg, forms);
    let fp = FiniteField::prime(alg.field.p)?;
    let mut kept = Vec::new();
    let mut rows: Vec<Vec<Fq>> = Vec::new();
    let mut current = 0;
    for (w, v) in forms.iter().zip(vecs) {
        rows.push(v);
        let rk = rank(&fp, &rows);
        if rk > current {
            current = rk;
            kept.push(w.clone());
        } else {
            rows.pop();
        }
    }
    Ok(kept)
}

/// Coordinates over `F_p` after clearing a common denominator.
fn fp_coordinates(alg: &Arc<FpAlgebra>, forms: &[DifferentialForm]) -> Vec<Vec<Fq>> {
    let mut den = vec![0u32; alg.inverted.len()];
    for w in forms {
        for c in w.terms.values() {
            for (d, e) in den.iter_mut().zip(&c.den) {
                *d = (*d).max(*e);
            }
        }
    }
    let mut index: BTreeMap<(Vec<usize>, Monomial, usize), usize> = BTreeMap::new();
    let mut raw: Vec<Vec<(usize, u64)>> = Vec::new();
    for w in forms {
        let mut entries = Vec::new();
        for (i, c) in &w.terms {
            for (m, x) in alg.lift_den(c, &den) {
                for (k, v) in alg.field.coords(&x).into_iter().enumerate() {
                    let n = index.len();
                    let pos = *index.entry((i.clone(), m.clone(), k)).or_insert(n);
                    entries.push((pos, v));
                }
            }
        }
        raw.push(entries);
    }
    let n = index.len();
    raw.into_iter()
        .map(|entries| {
            let mut v = vec![Fq::new(); n];
            for (pos, x) in entries {
                v[pos] = upoly::trim(vec![x]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: u64, vars: &[&str]) -> Arc<FpAlgebra> {
        FpAlgebra::polynomial(&FiniteField::prime(p).unwrap(), vars).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let a = alg(3, &["x", "y"]);
        let x = DifferentialForm::function(&a, a.var(0));
        assert_eq!(x.d().to_string(), "dx");
        let x3 = DifferentialForm::function(&a, a.pow(&a.var(0), 3));
        assert!(x3.d().is_zero());
        let xy = DifferentialForm::function(&a, a.mul(&a.var(0), &a.var(1)));
        let want = DifferentialForm::dx(&a, 0).mul_fn(&a.var(1)).add(&DifferentialForm::dx(&a, 1).mul_fn(&a.var(0)));
        assert_eq!(xy.d(), want);
        assert!(xy.d().d().is_zero());
        assert!(DifferentialForm::dx(&a, 0).wedge(&DifferentialForm::dx(&a, 0)).is_zero());
    }

    #[test]
    fn dlog_examples() {
        let f = FiniteField::prime(5).unwrap();
        let x = alg(5, &["x"]).var_poly(0);
        let one_minus_x = alg(5, &["x"]).poly(&[(vec![0], 1), (vec![1], -1)]);
        let a = FpAlgebra::new(&f, &["x"], vec![x, one_minus_x.clone()]).unwrap();
        let dl = dlog(&a, &a.var(0)).unwrap();
        assert_eq!(dl.to_string(), "(1)/(x)*dx");
        assert!(dlog(&a, &a.pow(&a.var(0), 5)).unwrap().is_zero());
        let u = a.elem(one_minus_x);
        let prod = dlog(&a, &a.mul(&a.var(0), &u)).unwrap();
        assert_eq!(prod, dl.add(&dlog(&a, &u).unwrap()));
        assert!(prod.d().is_zero());
        assert_eq!(dlog(&a, &a.add(&a.var(0), &a.from_i64(1))).unwrap_err().kind(), "non-unit");
    }

    #[test]
    fn cartier_examples() {
        let a = alg(2, &["x"]);
        let dx = DifferentialForm::dx(&a, 0);
        let c = cartier_inverse(&dx);
        assert_eq!(c.to_string(), "x*dx");
        assert!(c.is_closed());
        assert!(cartier_inverse(&DifferentialForm::zero(&a, 1)).is_zero());
        let s = bz_slice(&a, 0, 3).unwrap();
        assert_eq!(s.dims(), (0, 2, 4));
        let s = bz_slice(&a, 1, 3).unwrap();
        assert_eq!(s.dims(), (2, 3, 3));
        assert_eq!(bz_slice(&a, 2, 3).unwrap().dims(), (0, 0, 0));
    }

    #[test]
    fn artin_schreier_kernels_have_p_elements() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (5, 2)] {
            let f = FiniteField::of_order(p, k).unwrap();
            assert_eq!(artin_schreier_kernel(&f).len() as u64, p);
        }
    }

    #[test]
    fn log_forms() {
        let f = FiniteField::prime(3).unwrap();
        let base = alg(3, &["x"]);
        let x = base.var_poly(0);
        let omx = base.poly(&[(vec![0], 1), (vec![1], -1)]);
        let a = FpAlgebra::new(&f, &["x"], vec![x, omx.clone()]).unwrap();
        let gens = [a.var(0), a.elem(omx)];
        let span = log_forms_span(&a, 1, &gens, 2).unwrap();
        assert_eq!(span.len(), 2);
        assert!(span.iter().all(|w| w.is_closed()));
        assert!(log_forms_span(&a, 2, &gens[..1], 1).unwrap().is_empty());
    }
}
