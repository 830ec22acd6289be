//! Ideals of polynomial rings and the standard operations on them.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{groebner_polys, normal_form_poly};
use crate::poly::{same_ring, MonomialOrder, PolyRing, Polynomial};

/// Ideal given by generators, with its reduced Gröbner basis (for the ring's
/// own order) computed on first use.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gs: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gs.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    pub fn principal(f: &Polynomial) -> Self {
        Ideal::new(f.ring(), vec![f.clone()]).expect("same ring")
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal { ring: ring.clone(), gens: vec![], gb: OnceLock::new() }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Ideal::principal(&Polynomial::one(ring))
    }

    /// The ideal generated by all variables.
    pub fn origin(ring: &Arc<PolyRing>) -> Self {
        Ideal::new(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect()).unwrap()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Gröbner basis for the ring's order, cached after the first call.
    pub fn groebner_basis(&self) -> Result<&[Polynomial]> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = groebner_polys(&self.ring, &self.gens)?;
        let _ = self.gb.set(g);
        Ok(self.gb.get().unwrap())
    }

    /// The same ideal with its generators replaced by the reduced basis.
    pub fn canonical(&self) -> Result<Ideal> {
        let gb = self.groebner_basis()?.to_vec();
        let out = Ideal { ring: self.ring.clone(), gens: gb.clone(), gb: OnceLock::new() };
        let _ = out.gb.set(gb);
        Ok(out)
    }

    /// Reduced Gröbner basis for another monomial order, expressed in the
    /// ring carrying that order.
    pub fn groebner_in(&self, order: MonomialOrder) -> Result<Vec<Polynomial>> {
        if order == self.ring.order() {
            return Ok(self.groebner_basis()?.to_vec());
        }
        let r = self.ring.with_order(order);
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.reorder(&r)).collect();
        groebner_polys(&r, &gens)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(normal_form_poly(f, self.groebner_basis()?))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_as(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.iter().any(|g| g.is_constant()))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn add(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned().collect())
    }

    pub fn mul(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn pow(&self, e: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..e {
            acc = Ideal::new(&self.ring, acc.mul(self)?.groebner_basis()?.to_vec())?;
        }
        Ok(acc)
    }

    /// `I ∩ J`, by eliminating `t` from `t I + (1 - t) J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let ext = Elimination::new(&self.ring, 1);
        let t = Polynomial::var(&ext.ring, 0);
        let one_minus_t = &Polynomial::one(&ext.ring) - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &ext.lift(g));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &ext.lift(g));
        }
        ext.eliminate(&gens)
    }

    /// `I : f`.
    pub fn quotient(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let meet = self.intersect(&Ideal::principal(f))?;
        let gens = meet
            .gens
            .iter()
            .map(|g| exact_div(g, f).ok_or_else(|| Error::invalid("inexact division in ideal quotient")))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `I : f^∞`, by eliminating `z` from `I + (1 - z f)`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::ZeroSaturator);
        }
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let ext = Elimination::new(&self.ring, 1);
        let z = Polynomial::var(&ext.ring, 0);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| ext.lift(g)).collect();
        gens.push(&Polynomial::one(&ext.ring) - &(&z * &ext.lift(f)));
        ext.eliminate(&gens)
    }

    /// `I : J^∞ = ∩_g (I : g^∞)` over the generators `g` of `J`.
    pub fn saturate_ideal(&self, j: &Ideal) -> Result<Ideal> {
        let mut acc: Option<Ideal> = None;
        for g in &j.gens {
            let s = self.saturate(g)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// Krull dimension of `R/I` from a maximal set of variables independent
    /// modulo the leading-term ideal; `-1` for the unit ideal.
    pub fn dimension(&self) -> Result<i64> {
        let gb = self.groebner_basis()?;
        if gb.iter().any(|g| g.is_constant()) {
            return Ok(-1);
        }
        let leads: Vec<&Vec<u32>> = gb.iter().map(|g| g.leading_monomial().unwrap()).collect();
        Ok(max_independent_set(self.ring.nvars(), &leads) as i64)
    }

    /// Ideal generated by the elements of `self` only involving `keep`, computed
    /// with an elimination order.
    pub fn eliminate(&self, drop: &[usize]) -> Result<Ideal> {
        let n = self.ring.nvars();
        let keep: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
        let perm: Vec<usize> = drop.iter().chain(&keep).copied().collect();
        let names: Vec<String> = perm.iter().map(|&i| self.ring.vars()[i].clone()).collect();
        let er = PolyRing::new(self.ring.field(), &names, MonomialOrder::Block(drop.len()))?;
        let mut to_ext = vec![0; n];
        for (pos, &i) in perm.iter().enumerate() {
            to_ext[i] = pos;
        }
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.map_vars(&er, &to_ext)).collect();
        let gb = groebner_polys(&er, &gens)?;
        let back: Vec<usize> = perm.clone();
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter(|g| g.leading_monomial().map(|m| m[..drop.len()].iter().all(|&e| e == 0)).unwrap_or(true))
            .map(|g| g.map_vars(&self.ring, &back))
            .collect();
        Ideal::new(&self.ring, kept)
    }
}

/// Helper ring with `k` fresh leading variables under a block order.
pub(crate) struct Elimination {
    pub base: Arc<PolyRing>,
    pub ring: Arc<PolyRing>,
    pub k: usize,
}

impl Elimination {
    pub fn new(base: &Arc<PolyRing>, k: usize) -> Self {
        let mut names: Vec<String> = Vec::new();
        let mut c = 0;
        while names.len() < k {
            let name = format!("_e{c}");
            c += 1;
            if base.var_index(&name).is_none() {
                names.push(name);
            }
        }
        names.extend(base.vars().iter().cloned());
        let ring = PolyRing::new(base.field(), &names, MonomialOrder::Block(k)).expect("fresh names");
        Elimination { base: base.clone(), ring, k }
    }

    pub fn lift(&self, f: &Polynomial) -> Polynomial {
        let map: Vec<usize> = (0..self.base.nvars()).map(|i| i + self.k).collect();
        f.map_vars(&self.ring, &map)
    }

    /// Drops back to the base ring; `f` must not involve the fresh variables.
    pub fn lower(&self, f: &Polynomial) -> Polynomial {
        let map: Vec<usize> = (0..self.ring.nvars()).map(|i| i.saturating_sub(self.k)).collect();
        f.map_vars(&self.base, &map)
    }

    pub fn is_free(&self, f: &Polynomial) -> bool {
        f.terms().iter().all(|(m, _)| m[..self.k].iter().all(|&e| e == 0))
    }

    pub fn eliminate(&self, gens: &[Polynomial]) -> Result<Ideal> {
        let gb = groebner_polys(&self.ring, gens)?;
        let kept: Vec<Polynomial> = gb.iter().filter(|g| self.is_free(g)).map(|g| self.lower(g)).collect();
        let out = Ideal::new(&self.base, kept)?;
        Ok(out)
    }
}

pub(crate) fn max_independent_set(n: usize, leads: &[&Vec<u32>]) -> usize {
    let mut best = 0;
    fn rec(i: usize, n: usize, chosen: &mut Vec<bool>, size: usize, leads: &[&Vec<u32>], best: &mut usize) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        chosen[i] = true;
        let ok = leads.iter().all(|m| m.iter().enumerate().any(|(j, &e)| e > 0 && !chosen[j]));
        if ok {
            rec(i + 1, n, chosen, size + 1, leads, best);
        }
        chosen[i] = false;
        rec(i + 1, n, chosen, size, leads, best);
    }
    rec(0, n, &mut vec![false; n], 0, leads, &mut best);
    best
}

/// Exact quotient `g / f`, or `None` when `f` does not divide `g`.
pub fn exact_div(g: &Polynomial, f: &Polynomial) -> Option<Polynomial> {
    if f.is_zero() {
        return None;
    }
    let ring = g.ring();
    let field = ring.field();
    let (fm, fc) = (f.leading_monomial()?.clone(), f.leading_coeff()?.clone());
    let mut rem = g.clone();
    let mut q = Polynomial::zero(ring);
    while let Some(m) = rem.leading_monomial().cloned() {
        if !crate::poly::mono_divides(&fm, &m) {
            return None;
        }
        let c = field.div(rem.leading_coeff().unwrap(), &fc).ok()?;
        let mono = crate::poly::mono_div(&m, &fm);
        rem = &rem - &f.mul_term(&mono, &c);
        q = &q + &Polynomial::monomial(ring, mono, c);
    }
    Some(q)
}
