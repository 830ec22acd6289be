//! Sparse multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};

pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Degrevlex on the first `k` variables, ties broken by degrevlex on the
    /// rest. Eliminates the first `k` variables.
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Block(k) => {
                let k = (*k).min(a.len());
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::DegRevLex => "degrevlex".into(),
            MonomialOrder::Block(k) => format!("block({k})"),
        }
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

pub fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_div(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mono_degree(a: &[u32]) -> u64 {
    a.iter().map(|&e| e as u64).sum()
}

pub fn mono_coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// A polynomial ring `k[x_1, ..., x_n]` with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: FieldSpec,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: FieldSpec, vars: &[S], order: MonomialOrder) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { order, ..self.clone() })
    }

    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Arc<Self>> {
        PolyRing::new(self.field, vars, self.order)
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Terms are kept sorted by decreasing monomial in the ring's order, with no
/// zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Coeff)>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polynomial {
    /// Compares term by term from the leading term down.
    fn cmp(&self, other: &Self) -> Ordering {
        let order = self.ring.order;
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let c = order.cmp(&a.0, &b.0).then_with(|| a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Coeff::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Self {
        let c = ring.field.normalize(c);
        let terms = if c.is_zero() { vec![] } else { vec![(vec![0; ring.nvars()], c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn from_i64(ring: &Arc<PolyRing>, n: i64) -> Self {
        Self::constant(ring, Coeff::from_integer(n.into()))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        let mut m = vec![0; ring.nvars()];
        m[i] = 1;
        Polynomial { ring: ring.clone(), terms: vec![(m, Coeff::one())] }
    }

    pub fn var_named(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        let i = ring.var_index(name).ok_or_else(|| Error::UnknownVariable(name.into()))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Arc<PolyRing>, exps: Monomial, c: Coeff) -> Self {
        assert_eq!(exps.len(), ring.nvars());
        let c = ring.field.normalize(c);
        let terms = if c.is_zero() { vec![] } else { vec![(exps, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let field = ring.field;
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), ring.nvars(), "exponent vector length");
            let c = field.normalize(c);
            let e = acc.entry(m).or_insert_with(Coeff::zero);
            *e = field.add(e, &c);
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Coeff> {
        if self.is_zero() {
            Some(Coeff::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| mono_degree(m)).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m[var]).max()
    }

    /// Index of the only variable occurring, if the polynomial is univariate
    /// (constants report `None`).
    pub fn univariate_var(&self) -> Option<usize> {
        let mut found = None;
        for (m, _) in &self.terms {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    match found {
                        None => found = Some(i),
                        Some(j) if j == i => {}
                        Some(_) => return None,
                    }
                }
            }
        }
        found
    }

    pub fn uses_only(&self, vars: &[usize]) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| m.iter().enumerate().all(|(i, &e)| e == 0 || vars.contains(&i)))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let field = self.ring.field;
        let c = field.normalize(c.clone());
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, &c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul_term(&self, mono: &[u32], c: &Coeff) -> Self {
        let field = self.ring.field;
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (mono_mul(m, mono), field.mul(a, c)))
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn make_monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.ring.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch in polynomial arithmetic");
        let field = self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == other.terms.len() {
                Ordering::Greater
            } else {
                order.cmp(&self.terms[i].0, &other.terms[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { field.neg(c) } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        field.sub(&self.terms[i].1, &other.terms[j].1)
                    } else {
                        field.add(&self.terms[i].1, &other.terms[j].1)
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch in polynomial arithmetic");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let field = self.ring.field;
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = mono_mul(ma, mb);
                let c = field.mul(ca, cb);
                let e = acc.entry(m).or_insert_with(Coeff::zero);
                *e = field.add(e, &c);
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = self.ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: usize) -> Self {
        let field = self.ring.field;
        let terms = self.terms.iter().filter(|(m, _)| m[var] > 0).map(|(m, c)| {
            let mut m2 = m.clone();
            m2[var] -= 1;
            (m2, field.mul(c, &field.from_i64(m[var] as i64)))
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Substitutes `images[i]` for variable `i`; the images determine the target ring.
    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[Polynomial]) -> Self {
        assert_eq!(images.len(), self.ring.nvars());
        let field = target.field;
        let mut acc = Polynomial::zero(target);
        let mut cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, field.normalize(c.clone()));
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    let p = cache.entry((i, e)).or_insert_with(|| images[i].pow(e)).clone();
                    t = &t * &p;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `var_map[i]` of the target.
    pub fn map_vars(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Self {
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m2 = vec![0; n];
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    m2[var_map[i]] += e;
                }
            }
            (m2, c.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    /// Moves the polynomial into a ring with the same variables but a different order.
    pub fn reorder(&self, target: &Arc<PolyRing>) -> Self {
        assert_eq!(target.nvars(), self.ring.nvars());
        let order = target.order;
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: target.clone(), terms }
    }

    /// Evaluates at a point with coordinates in the base field.
    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        let field = self.ring.field;
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = field.mul(&t, &field.pow(&point[i], e as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Dense coefficient list (ascending degree) of a univariate polynomial in `var`.
    pub fn univariate_coeffs(&self, var: usize) -> Result<Vec<Coeff>> {
        if !self.uses_only(&[var]) {
            return Err(Error::NotUnivariate);
        }
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Coeff::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m[var] as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_univariate(ring: &Arc<PolyRing>, var: usize, coeffs: &[Coeff]) -> Self {
        let n = ring.nvars();
        Polynomial::from_terms(
            ring,
            coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(d, c)| {
                let mut m = vec![0; n];
                m[var] = d as u32;
                (m, c.clone())
            }),
        )
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.product(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let field = self.ring.field;
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

pub(crate) fn fmt_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Terms in decreasing order, e.g. `x^2 + 2*x*y - 3/2`. The output
    /// re-parses to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.ring.vars[i].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[i], e)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", fmt_coeff(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_coeff(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(FieldSpec::Rationals, &["x", "y"], MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn degrevlex_orders_as_expected() {
        let o = MonomialOrder::DegRevLex;
        // x^2 > x*y > y^2 > x > y > 1
        let ms = [vec![2, 0], vec![1, 1], vec![0, 2], vec![1, 0], vec![0, 1], vec![0, 0]];
        for w in ms.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        // x*z^? check on three variables: x*y*z^0 vs x^0*y^2... degrevlex: y^2 > x*z
        assert_eq!(o.cmp(&[0, 2, 0], &[1, 0, 1]), Ordering::Greater);
    }

    #[test]
    fn arithmetic_and_display() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string(), "x^2 - y^2");
        let q = (&x + &Polynomial::one(&r)).pow(3);
        assert_eq!(q.to_string(), "x^3 + 3*x^2 + 3*x + 1");
        assert!((&p - &p).is_zero());
        assert_eq!(p.derivative(0).to_string(), "2*x");
    }

    #[test]
    fn duplicate_variables_rejected() {
        assert!(PolyRing::new(FieldSpec::Rationals, &["x", "x"], MonomialOrder::Lex).is_err());
    }

    #[test]
    fn substitution() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = &(&x * &y) + &Polynomial::from_i64(&r, 1);
        let s = p.substitute(&r, &[y.clone(), &x + &y]);
        assert_eq!(s.to_string(), "x*y + y^2 + 1");
    }
}
