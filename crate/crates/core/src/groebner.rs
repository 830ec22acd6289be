//! Buchberger's algorithm for submodules of free modules `R^r`.
//!
//! Ideals are the rank-one case. Pairs are selected by the sugar strategy and
//! pruned with the Gebauer–Möller criteria; the coprime-leading-term criterion
//! is only applied in rank one, where it is valid.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::poly::{
    mono_coprime, mono_degree, mono_div, mono_divides, mono_lcm, mono_mul, Monomial, PolyRing, Polynomial,
};

/// How module terms `m * e_i` are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModuleOrder {
    /// Position over term: lower component index wins. Eliminates leading components.
    Pot,
    /// Term over position: monomial first, so degree-compatible when the ring order is.
    Top,
}

/// Upper bound on processed critical pairs before giving up.
pub const DEFAULT_MAX_PAIRS: usize = 400_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    terms: Vec<(usize, Monomial, Coeff)>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(usize, Monomial, Coeff)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<(usize, &Monomial, &Coeff)> {
        self.terms.first().map(|(c, m, a)| (*c, m, a))
    }

    /// Largest component index with a nonzero entry.
    pub fn max_component(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.0).max()
    }

    pub fn min_component(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.0).min()
    }
}

/// Arithmetic context: a ring plus a module order.
#[derive(Debug, Clone)]
pub struct ModCtx {
    pub ring: Arc<PolyRing>,
    pub order: ModuleOrder,
    pub max_pairs: usize,
}

impl ModCtx {
    pub fn new(ring: &Arc<PolyRing>, order: ModuleOrder) -> Self {
        ModCtx { ring: ring.clone(), order, max_pairs: DEFAULT_MAX_PAIRS }
    }

    pub fn cmp_term(&self, a: (usize, &[u32]), b: (usize, &[u32])) -> Ordering {
        let mo = self.ring.order();
        match self.order {
            ModuleOrder::Pot => b.0.cmp(&a.0).then_with(|| mo.cmp(a.1, b.1)),
            ModuleOrder::Top => mo.cmp(a.1, b.1).then_with(|| b.0.cmp(&a.0)),
        }
    }

    pub fn from_polys(&self, entries: &[Polynomial]) -> Vector {
        let mut terms = Vec::new();
        for (i, p) in entries.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((i, m.clone(), c.clone()));
            }
        }
        terms.sort_by(|a, b| self.cmp_term((b.0, &b.1), (a.0, &a.1)));
        Vector { terms }
    }

    pub fn from_poly(&self, p: &Polynomial) -> Vector {
        self.from_polys(std::slice::from_ref(p))
    }

    pub fn to_polys(&self, v: &Vector, rank: usize) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); rank];
        for (i, m, c) in &v.terms {
            parts[*i].push((m.clone(), c.clone()));
        }
        parts.into_iter().map(|t| Polynomial::from_terms(&self.ring, t)).collect()
    }

    /// Computes `a - c * mono * b`.
    pub fn sub_mul(&self, a: &Vector, c: &Coeff, mono: &[u32], b: &Vector) -> Vector {
        let field = self.ring.field();
        let scaled: Vec<(usize, Monomial, Coeff)> =
            b.terms.iter().map(|(i, m, x)| (*i, mono_mul(m, mono), field.mul(x, c))).collect();
        let mut out = Vec::with_capacity(a.terms.len() + scaled.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < scaled.len() {
            let ord = if i == a.terms.len() {
                Ordering::Less
            } else if j == scaled.len() {
                Ordering::Greater
            } else {
                self.cmp_term((a.terms[i].0, &a.terms[i].1), (scaled[j].0, &scaled[j].1))
            };
            match ord {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (k, m, x) = &scaled[j];
                    out.push((*k, m.clone(), field.neg(x)));
                    j += 1;
                }
                Ordering::Equal => {
                    let x = field.sub(&a.terms[i].2, &scaled[j].2);
                    if !x.is_zero() {
                        out.push((a.terms[i].0, a.terms[i].1.clone(), x));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Vector { terms: out }
    }

    pub fn add(&self, a: &Vector, b: &Vector) -> Vector {
        let field = self.ring.field();
        let neg_one = field.neg(&Coeff::one());
        self.sub_mul(a, &neg_one, &vec![0; self.ring.nvars()], b)
    }

    pub fn scale(&self, a: &Vector, c: &Coeff) -> Vector {
        let field = self.ring.field();
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { terms: a.terms.iter().map(|(i, m, x)| (*i, m.clone(), field.mul(x, c))).collect() }
    }

    pub fn make_monic(&self, a: &Vector) -> Vector {
        match a.terms.first() {
            None => a.clone(),
            Some((_, _, lc)) => {
                let inv = self.ring.field().inv(lc).expect("nonzero");
                self.scale(a, &inv)
            }
        }
    }

    fn find_reducer<'a>(&self, comp: usize, mono: &[u32], basis: &'a [Vector]) -> Option<&'a Vector> {
        basis.iter().find(|g| {
            let (gc, gm, _) = g.leading().expect("basis elements are nonzero");
            gc == comp && mono_divides(gm, mono)
        })
    }

    /// Full reduction of `v` modulo `basis`: no term of the result is
    /// divisible by a leading term of the basis.
    pub fn normal_form(&self, v: &Vector, basis: &[Vector]) -> Vector {
        let field = self.ring.field();
        let mut p = v.clone();
        let mut rem: Vec<(usize, Monomial, Coeff)> = Vec::new();
        // `p` holds the unprocessed tail; everything in `rem` is irreducible.
        while let Some((comp, mono, c)) = p.terms.first().cloned() {
            if let Some(g) = self.find_reducer(comp, &mono, basis) {
                let (_, gm, gc) = g.leading().unwrap();
                let q = field.div(&c, gc).expect("monic or nonzero leading coefficient");
                p = self.sub_mul(&p, &q, &mono_div(&mono, gm), g);
            } else {
                rem.push(p.terms.remove(0));
            }
        }
        Vector { terms: rem }
    }

    /// Reduced Gröbner basis of the submodule generated by `gens`, sorted by
    /// increasing leading term.
    pub fn groebner(&self, gens: &[Vector]) -> Result<Vec<Vector>> {
        let rank_one = gens.iter().all(|g| g.max_component().unwrap_or(0) == 0);
        let mut basis: Vec<Vector> = Vec::new();
        let mut sugar: Vec<u64> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        let mut input: Vec<Vector> = gens.iter().filter(|g| !g.is_zero()).map(|g| self.make_monic(g)).collect();
        input.sort_by(|a, b| {
            let (ac, am, _) = a.leading().unwrap();
            let (bc, bm, _) = b.leading().unwrap();
            self.cmp_term((ac, am), (bc, bm))
        });
        for g in input {
            let r = self.normal_form(&g, &basis);
            if r.is_zero() {
                continue;
            }
            let s = r.terms.iter().map(|t| mono_degree(&t.1)).max().unwrap_or(0);
            self.insert(&mut basis, &mut sugar, &mut pairs, self.make_monic(&r), s, rank_one);
        }

        let mut processed = 0usize;
        while !pairs.is_empty() {
            processed += 1;
            if processed > self.max_pairs {
                return Err(Error::ResourceExhausted(format!("more than {} critical pairs", self.max_pairs)));
            }
            let idx = (0..pairs.len())
                .min_by(|&a, &b| {
                    pairs[a]
                        .sugar
                        .cmp(&pairs[b].sugar)
                        .then_with(|| self.cmp_term((pairs[a].comp, &pairs[a].lcm), (pairs[b].comp, &pairs[b].lcm)))
                })
                .unwrap();
            let pair = pairs.swap_remove(idx);
            let s = self.s_vector(&basis[pair.i], &basis[pair.j], &pair.lcm);
            let r = self.normal_form(&s, &basis);
            if !r.is_zero() {
                self.insert(&mut basis, &mut sugar, &mut pairs, self.make_monic(&r), pair.sugar, rank_one);
            }
        }
        Ok(self.interreduce(basis))
    }

    fn s_vector(&self, a: &Vector, b: &Vector, lcm: &[u32]) -> Vector {
        let (_, am, _) = a.leading().unwrap();
        let (_, bm, _) = b.leading().unwrap();
        let field = self.ring.field();
        let left = Vector {
            terms: a.terms.iter().map(|(i, m, c)| (*i, mono_mul(m, &mono_div(lcm, am)), c.clone())).collect(),
        };
        // both inputs are monic
        self.sub_mul(&left, &field.one(), &mono_div(lcm, bm), b)
    }

    fn insert(
        &self,
        basis: &mut Vec<Vector>,
        sugar: &mut Vec<u64>,
        pairs: &mut Vec<Pair>,
        h: Vector,
        h_sugar: u64,
        rank_one: bool,
    ) {
        let k = basis.len();
        let (hc, hm, _) = h.leading().map(|(c, m, a)| (c, m.clone(), a.clone())).unwrap();

        // chain criterion on existing pairs
        pairs.retain(|p| {
            if p.comp != hc || !mono_divides(&hm, &p.lcm) {
                return true;
            }
            let li = mono_lcm(basis[p.i].leading().unwrap().1, &hm);
            let lj = mono_lcm(basis[p.j].leading().unwrap().1, &hm);
            li == p.lcm || lj == p.lcm
        });

        let mut fresh: Vec<(Pair, bool)> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let (gc, gm, _) = g.leading().unwrap();
            if gc != hc {
                continue;
            }
            let lcm = mono_lcm(gm, &hm);
            let s = (sugar[i] + mono_degree(&lcm) - mono_degree(gm)).max(h_sugar + mono_degree(&lcm) - mono_degree(&hm));
            let coprime = rank_one && mono_coprime(gm, &hm);
            fresh.push((Pair { i, j: k, lcm, comp: hc, sugar: s }, coprime));
        }
        // M: drop pairs whose lcm is properly divisible by another new lcm
        let lcms: Vec<Monomial> = fresh.iter().map(|(p, _)| p.lcm.clone()).collect();
        fresh.retain(|(p, _)| !lcms.iter().any(|l| l != &p.lcm && mono_divides(l, &p.lcm)));
        // F: one pair per lcm; if any with that lcm is coprime, drop them all
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        for (p, cop) in fresh {
            if let Some(existing) = kept.iter_mut().find(|(q, _)| q.lcm == p.lcm) {
                existing.1 |= cop;
            } else {
                kept.push((p, cop));
            }
        }
        pairs.extend(kept.into_iter().filter(|(_, cop)| !cop).map(|(p, _)| p));
        basis.push(h);
        sugar.push(h_sugar);
    }

    fn interreduce(&self, basis: Vec<Vector>) -> Vec<Vector> {
        let mut minimal: Vec<Vector> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let (gc, gm, _) = g.leading().unwrap();
            let redundant = basis.iter().enumerate().any(|(j, h)| {
                let (hc, hm, _) = h.leading().unwrap();
                j != i && hc == gc && mono_divides(hm, gm) && (hm != gm || j < i)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<Vector> =
                minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
            let g = &minimal[i];
            let head = Vector { terms: vec![g.terms[0].clone()] };
            let tail = Vector { terms: g.terms[1..].to_vec() };
            let tail = self.normal_form(&tail, &others);
            out.push(self.make_monic(&self.add(&head, &tail)));
        }
        out.sort_by(|a, b| {
            let (ac, am, _) = a.leading().unwrap();
            let (bc, bm, _) = b.leading().unwrap();
            self.cmp_term((ac, am), (bc, bm))
        });
        out
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
    sugar: u64,
}

/// Reduced Gröbner basis of an ideal in the ring's own order.
pub fn groebner_polys(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let ctx = ModCtx::new(ring, ModuleOrder::Pot);
    let vs: Vec<Vector> = gens.iter().map(|g| ctx.from_poly(g)).collect();
    let gb = ctx.groebner(&vs)?;
    Ok(gb.iter().map(|v| ctx.to_polys(v, 1).pop().unwrap()).collect())
}

pub fn normal_form_poly(f: &Polynomial, gb: &[Polynomial]) -> Polynomial {
    let ctx = ModCtx::new(f.ring(), ModuleOrder::Pot);
    let basis: Vec<Vector> = gb.iter().map(|g| ctx.from_poly(g)).collect();
    ctx.to_polys(&ctx.normal_form(&ctx.from_poly(f), &basis), 1).pop().unwrap()
}
