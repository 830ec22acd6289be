//! Finitely presented modules `R^r / S`: syzygies, free resolutions, Tor,
//! Hilbert-series degrees and lengths at primes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{ModCtx, ModuleOrder, Vector};
use crate::ideal::{Elimination, Ideal};
use crate::poly::{mono_divides, mono_lcm, Monomial, MonomialOrder, PolyRing, Polynomial, same_ring};

/// Column vector in `R^r`.
pub type Column = Vec<Polynomial>;

/// `R^rank` modulo the submodule spanned by `relations`.
#[derive(Debug, Clone)]
pub struct ModulePresentation {
    ring: Arc<PolyRing>,
    rank: usize,
    relations: Vec<Column>,
}

impl ModulePresentation {
    pub fn new(ring: &Arc<PolyRing>, rank: usize, relations: Vec<Column>) -> Result<Self> {
        for c in &relations {
            if c.len() != rank {
                return Err(Error::invalid(format!("relation of length {} in a rank {rank} module", c.len())));
            }
            if c.iter().any(|p| !same_ring(p.ring(), ring)) {
                return Err(Error::RingMismatch);
            }
        }
        let relations = relations.into_iter().filter(|c| c.iter().any(|p| !p.is_zero())).collect();
        Ok(ModulePresentation { ring: ring.clone(), rank, relations })
    }

    /// `R/I`.
    pub fn cyclic(i: &Ideal) -> Self {
        let rel = i.gens().iter().map(|g| vec![g.clone()]).collect();
        ModulePresentation::new(i.ring(), 1, rel).unwrap()
    }

    pub fn free(ring: &Arc<PolyRing>, rank: usize) -> Self {
        ModulePresentation { ring: ring.clone(), rank, relations: vec![] }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Column] {
        &self.relations
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let z = Polynomial::zero(&self.ring);
        let mut rel: Vec<Column> = Vec::new();
        for c in &self.relations {
            let mut v = c.clone();
            v.extend(std::iter::repeat(z.clone()).take(other.rank));
            rel.push(v);
        }
        for c in &other.relations {
            let mut v = vec![z.clone(); self.rank];
            v.extend(c.iter().cloned());
            rel.push(v);
        }
        ModulePresentation::new(&self.ring, self.rank + other.rank, rel)
    }

    /// `M ⊗ R/J`.
    pub fn tensor_quotient(&self, j: &Ideal) -> Result<Self> {
        let mut rel = self.relations.clone();
        rel.extend(ideal_columns(j, self.rank));
        ModulePresentation::new(&self.ring, self.rank, rel)
    }

    /// `R^r / (S : f^∞)`, the image of `M` in `M_f`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroSaturator);
        }
        if f.is_constant() || self.rank == 0 {
            return Ok(self.clone());
        }
        let base = self.ring.with_order(MonomialOrder::DegRevLex);
        let ext = Elimination::new(&base, 1);
        let ctx = ModCtx::new(&ext.ring, ModuleOrder::Top);
        let lift = |p: &Polynomial| ext.lift(&p.reorder(&base));
        let mut gens: Vec<Vector> =
            self.relations.iter().map(|c| ctx.from_polys(&c.iter().map(lift).collect::<Vec<_>>())).collect();
        let z = Polynomial::var(&ext.ring, 0);
        let rab = &Polynomial::one(&ext.ring) - &(&z * &lift(f));
        for i in 0..self.rank {
            gens.push(ctx.from_polys(&unit_column(&ext.ring, self.rank, i, &rab)));
        }
        let gb = ctx.groebner(&gens)?;
        let rel: Vec<Column> = gb
            .iter()
            .map(|v| ctx.to_polys(v, self.rank))
            .filter(|c| c.iter().all(|p| ext.is_free(p)))
            .map(|c| c.iter().map(|p| ext.lower(p).reorder(&self.ring)).collect())
            .collect();
        ModulePresentation::new(&self.ring, self.rank, rel)
    }

    /// Per-component leading monomial ideals under a degree-compatible order.
    fn leading_ideals(&self) -> Result<Vec<Vec<Monomial>>> {
        let base = self.ring.with_order(MonomialOrder::DegRevLex);
        let ctx = ModCtx::new(&base, ModuleOrder::Top);
        let gens: Vec<Vector> = self
            .relations
            .iter()
            .map(|c| ctx.from_polys(&c.iter().map(|p| p.reorder(&base)).collect::<Vec<_>>()))
            .collect();
        let gb = ctx.groebner(&gens)?;
        let mut out = vec![Vec::new(); self.rank];
        for v in &gb {
            let (c, m, _) = v.leading().unwrap();
            out[c].push(m.clone());
        }
        Ok(out)
    }

    /// Dimension of the support and its degree (multiplicity of the top-dimensional
    /// part, from the affine Hilbert polynomial). The zero module has dimension -1.
    pub fn dimension_and_degree(&self) -> Result<(i64, u64)> {
        let n = self.ring.nvars();
        let mut best: (i64, u64) = (-1, 0);
        for lt in self.leading_ideals()? {
            let (d, deg) = hilbert_dim_degree(n, &lt);
            if d > best.0 {
                best = (d, deg);
            } else if d == best.0 && d >= 0 {
                best.1 += deg;
            }
        }
        Ok(best)
    }

    pub fn dimension(&self) -> Result<i64> {
        Ok(self.dimension_and_degree()?.0)
    }

    /// `dim_k M`, for modules of finite length.
    pub fn vector_dimension(&self) -> Result<u64> {
        match self.dimension_and_degree()? {
            (-1, _) => Ok(0),
            (0, d) => Ok(d),
            (d, _) => Err(Error::PositiveDimensional(d)),
        }
    }

    /// `Ann(M) = ∩_i (S : e_i)`.
    pub fn annihilator(&self) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for i in 0..self.rank {
            let e = unit_column(&self.ring, self.rank, i, &Polynomial::one(&self.ring));
            let syz = syzygies(&self.ring, self.rank, &[e], &self.relations)?;
            let colon = Ideal::new(&self.ring, syz.into_iter().map(|mut c| c.remove(0)).collect())?;
            acc = if i == 0 { colon } else { acc.intersect(&colon)? };
        }
        Ok(acc)
    }

    /// Length of `M_P` over `R_P`. `support` is any ideal annihilating `M`
    /// for which `P` is a minimal prime.
    pub fn length_at(&self, p: &Ideal, support: &Ideal) -> Result<u64> {
        let s0 = isolating_element(support, p)?;
        self.length_at_with(p, &s0)
    }

    /// As [`Self::length_at`], given an element outside `P` that vanishes on
    /// every other component of the support.
    pub fn length_at_with(&self, p: &Ideal, s0: &Polynomial) -> Result<u64> {
        let d = p.dimension()?;
        let local = self.saturate(s0)?;
        let (dim, deg) = local.dimension_and_degree()?;
        if dim < d {
            return Ok(0);
        }
        if dim > d {
            return Err(Error::InfiniteLength);
        }
        let (pd, pdeg) = ModulePresentation::cyclic(p).dimension_and_degree()?;
        debug_assert_eq!(pd, d);
        if deg % pdeg != 0 {
            return Err(Error::invalid("localized degree is not a multiple of the residue degree"));
        }
        Ok(deg / pdeg)
    }
}

/// An element of `(Q : P^∞)` outside `P`, which exists exactly when `P` is a
/// minimal prime of `Q`.
pub fn isolating_element(q: &Ideal, p: &Ideal) -> Result<Polynomial> {
    if !p.contains_ideal(q)? {
        return Err(Error::invalid("prime does not contain the support ideal"));
    }
    let sat = q.saturate_ideal(p)?;
    let gb = sat.groebner_basis()?;
    for g in gb {
        if !p.contains(g)? {
            return Ok(g.clone());
        }
    }
    Err(Error::InfiniteLength)
}

fn unit_column(ring: &Arc<PolyRing>, rank: usize, i: usize, f: &Polynomial) -> Column {
    (0..rank).map(|j| if j == i { f.clone() } else { Polynomial::zero(ring) }).collect()
}

pub(crate) fn ideal_columns(j: &Ideal, rank: usize) -> Vec<Column> {
    let mut out = Vec::new();
    for i in 0..rank {
        for g in j.gens() {
            out.push(unit_column(j.ring(), rank, i, g));
        }
    }
    out
}

/// Generators of `{a ∈ R^k : Σ a_j cols_j ∈ span(modulo)}`, where the
/// columns and `modulo` live in `R^rank`.
pub fn syzygies(ring: &Arc<PolyRing>, rank: usize, cols: &[Column], modulo: &[Column]) -> Result<Vec<Column>> {
    let k = cols.len();
    if k == 0 {
        return Ok(vec![]);
    }
    let base = ring.with_order(MonomialOrder::DegRevLex);
    let ctx = ModCtx::new(&base, ModuleOrder::Pot);
    let zero = Polynomial::zero(&base);
    let mut gens = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        let mut v: Vec<Polynomial> = c.iter().map(|p| p.reorder(&base)).collect();
        v.extend((0..k).map(|l| if l == j { Polynomial::one(&base) } else { zero.clone() }));
        gens.push(ctx.from_polys(&v));
    }
    for c in modulo {
        let mut v: Vec<Polynomial> = c.iter().map(|p| p.reorder(&base)).collect();
        v.extend(std::iter::repeat(zero.clone()).take(k));
        gens.push(ctx.from_polys(&v));
    }
    let gb = ctx.groebner(&gens)?;
    let mut out = Vec::new();
    for v in &gb {
        if v.min_component().map(|c| c >= rank).unwrap_or(false) {
            let all = ctx.to_polys(v, rank + k);
            out.push(all[rank..].iter().map(|p| p.reorder(ring)).collect());
        }
    }
    Ok(out)
}

/// Removes generators made redundant by relations with a constant entry,
/// rewriting the remaining relations. Returns the kept generator indices.
pub fn trim_generators(gens: &mut Vec<Column>, rels: &mut Vec<Column>) -> Vec<usize> {
    let mut kept: Vec<usize> = (0..gens.len()).collect();
    loop {
        rels.retain(|r| r.iter().any(|p| !p.is_zero()));
        let hit = rels.iter().enumerate().find_map(|(ri, r)| {
            r.iter().position(|p| !p.is_zero() && p.is_constant()).map(|j| (ri, j))
        });
        let Some((ri, j)) = hit else { break };
        let s = rels.remove(ri);
        let field = s[j].field();
        let sj = s[j].constant_value().unwrap();
        for t in rels.iter_mut() {
            if t[j].is_zero() {
                continue;
            }
            // t - (t_j / s_j) s, with t_j possibly non-constant
            let factor = t[j].scale(&field.inv(&sj).unwrap());
            for (l, x) in t.iter_mut().enumerate() {
                *x = &*x - &(&factor * &s[l]);
            }
        }
        for t in rels.iter_mut() {
            t.remove(j);
        }
        gens.remove(j);
        kept.remove(j);
    }
    kept
}

/// Free resolution `... → F_2 → F_1 → F_0 → M → 0`, optionally over the
/// quotient ring `R / base`.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    ring: Arc<PolyRing>,
    ranks: Vec<usize>,
    /// `maps[i]` is `d_{i+1}: F_{i+1} → F_i`, as its list of columns.
    maps: Vec<Vec<Column>>,
    base: Option<Ideal>,
}

impl FreeResolution {
    /// A complex of free modules given directly by its maps.
    pub fn from_parts(ring: &Arc<PolyRing>, ranks: Vec<usize>, maps: Vec<Vec<Column>>) -> Self {
        FreeResolution { ring: ring.clone(), ranks, maps, base: None }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn maps(&self) -> &[Vec<Column>] {
        &self.maps
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Whether every `d_i ∘ d_{i+1}` is exactly zero (modulo the base ideal).
    pub fn composites_vanish(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            let (d, e) = (&w[0], &w[1]);
            for col in e {
                for row in 0..d.first().map(|c| c.len()).unwrap_or(0) {
                    let mut acc = Polynomial::zero(&self.ring);
                    for (j, x) in col.iter().enumerate() {
                        acc = &acc + &(&d[j][row] * x);
                    }
                    let r = match &self.base {
                        Some(b) => b.normal_form(&acc)?,
                        None => acc,
                    };
                    if !r.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

pub fn free_resolution(m: &ModulePresentation) -> Result<FreeResolution> {
    free_resolution_over(m, None)
}

/// Resolution by iterated syzygies, trimming constant-entry relations at
/// every step. Stops after `nvars + 1` maps.
pub fn free_resolution_over(m: &ModulePresentation, base: Option<&Ideal>) -> Result<FreeResolution> {
    let ring = m.ring.clone();
    let reduce = |c: &Column| -> Result<Column> {
        match base {
            Some(b) => c.iter().map(|p| b.normal_form(p)).collect(),
            None => Ok(c.clone()),
        }
    };
    let nonzero = |c: &Column| c.iter().any(|p| !p.is_zero());
    let mut ranks = vec![m.rank];
    let mut maps: Vec<Vec<Column>> = Vec::new();
    let mut current: Vec<Column> =
        m.relations.iter().map(&reduce).collect::<Result<Vec<_>>>()?.into_iter().filter(nonzero).collect();
    let limit = ring.nvars() + 1;
    while !current.is_empty() && maps.len() < limit {
        let target_rank = *ranks.last().unwrap();
        let modulo = base.map(|b| ideal_columns(b, target_rank)).unwrap_or_default();
        let mut syz: Vec<Column> = syzygies(&ring, target_rank, &current, &modulo)?
            .iter()
            .map(&reduce)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(nonzero)
            .collect();
        trim_generators(&mut current, &mut syz);
        dedup_columns(&mut syz);
        ranks.push(current.len());
        maps.push(current);
        current = syz;
    }
    Ok(FreeResolution { ring, ranks, maps, base: base.cloned() })
}

fn dedup_columns(cols: &mut Vec<Column>) {
    let mut seen: Vec<Column> = Vec::new();
    cols.retain(|c| {
        if seen.contains(c) {
            false
        } else {
            seen.push(c.clone());
            true
        }
    });
}

/// Presentations of `H_i(F ⊗ R/J)`, i.e. `Tor_i(M, R/J)` for the module `M`
/// resolved by `res` (over the resolution's base ring).
pub fn tor_modules(res: &FreeResolution, j: &Ideal) -> Result<Vec<ModulePresentation>> {
    let ring = &res.ring;
    let mut out = Vec::new();
    for i in 0..res.ranks.len() {
        let r = res.ranks[i];
        let mut cycles: Vec<Column> = if i == 0 {
            (0..r).map(|l| unit_column(ring, r, l, &Polynomial::one(ring))).collect()
        } else {
            let prev = res.ranks[i - 1];
            syzygies(ring, prev, &res.maps[i - 1], &ideal_columns(j, prev))?
        };
        let mut boundaries: Vec<Column> = ideal_columns(j, r);
        if let Some(next) = res.maps.get(i) {
            boundaries.extend(next.iter().cloned());
        }
        let mut rels = syzygies(ring, r, &cycles, &boundaries)?;
        trim_generators(&mut cycles, &mut rels);
        out.push(ModulePresentation::new(ring, cycles.len(), rels)?);
    }
    Ok(out)
}

/// `Tor_i^R(R/I, R/J)` for `i = 0, 1, ...`, with `R` optionally replaced by
/// `R/base` (both `I` and `J` must then contain `base`).
pub fn tor_of_quotients(i: &Ideal, j: &Ideal, base: Option<&Ideal>) -> Result<Vec<ModulePresentation>> {
    let res = free_resolution_over(&ModulePresentation::cyclic(i), base)?;
    tor_modules(&res, j)
}

/// Lengths of the localized modules `Tor_i(R/I, R/J)_m`.
pub fn tor_lengths_at_point(i: &Ideal, j: &Ideal, m: &Ideal) -> Result<Vec<u64>> {
    if !crate::zerodim::is_maximal(m)? {
        return Err(Error::NotMaximal(m.to_string()));
    }
    tor_lengths_at(i, j, m, None)
}

/// Lengths of `Tor_i(R/I, R/J)` at a minimal prime `P` of `I + J`.
pub fn tor_lengths_at(i: &Ideal, j: &Ideal, p: &Ideal, base: Option<&Ideal>) -> Result<Vec<u64>> {
    let support = i.add(j)?;
    let s0 = isolating_element(&support, p)?;
    let mut out: Vec<u64> = Vec::new();
    for t in tor_of_quotients(i, j, base)? {
        out.push(t.length_at_with(p, &s0)?);
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    if out.len() == 1 {
        out.push(0);
    }
    Ok(out)
}

// ---- Hilbert series of monomial ideals ----

fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    let mut sorted = gens.to_vec();
    sorted.sort_by_key(|m| m.iter().map(|&e| e as u64).sum::<u64>());
    for m in sorted {
        if !out.iter().any(|g| mono_divides(g, &m)) {
            out.push(m);
        }
    }
    out
}

fn poly_sub(a: &[i128], b: &[i128]) -> Vec<i128> {
    let n = a.len().max(b.len());
    let mut out: Vec<i128> = (0..n).map(|i| a.get(i).unwrap_or(&0) - b.get(i).unwrap_or(&0)).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus_t_pow(d: u64) -> Vec<i128> {
    let mut v = vec![0i128; d as usize + 1];
    v[0] += 1;
    v[d as usize] -= 1;
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1-t)^n` of `R / (gens)`.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<i128> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    let deg = |m: &Monomial| m.iter().map(|&e| e as u64).sum::<u64>();
    let coprime = gens.iter().enumerate().all(|(i, a)| {
        gens[i + 1..].iter().all(|b| a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0))
    });
    if coprime {
        return gens.iter().fold(vec![1], |acc, m| poly_mul(&acc, &one_minus_t_pow(deg(m))));
    }
    // pivot on a variable power: N(J) = N(J + (p)) + t^deg(p) N(J : p)
    let m = gens.iter().find(|m| m.iter().filter(|&&e| e > 0).count() > 1).unwrap_or(&gens[0]).clone();
    let v = m.iter().position(|&e| e > 0).unwrap();
    let mut pivot = vec![0u32; m.len()];
    pivot[v] = (m[v] + 1) / 2;
    let mut with_p = gens.clone();
    with_p.push(pivot.clone());
    let quotient: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let l = mono_lcm(g, &pivot);
            l.iter().zip(&pivot).map(|(a, b)| a - b).collect()
        })
        .collect();
    let a = hilbert_numerator(&with_p);
    let mut shift = vec![0i128; pivot[v] as usize];
    shift.extend(hilbert_numerator(&quotient));
    poly_sub(&a, &shift.iter().map(|x| -x).collect::<Vec<_>>())
}

/// Dimension and degree of `R / (gens)` in `n` variables; `(-1, 0)` for the unit ideal.
pub fn hilbert_dim_degree(n: usize, gens: &[Monomial]) -> (i64, u64) {
    let mut num = hilbert_numerator(gens);
    if num.is_empty() {
        return (-1, 0);
    }
    let mut k = 0usize;
    while num.iter().sum::<i128>() == 0 {
        // divide by (1 - t)
        let mut q = vec![0i128; num.len() - 1];
        let mut carry = 0i128;
        for (i, c) in num.iter().enumerate().take(num.len() - 1) {
            carry += c;
            q[i] = carry;
        }
        num = q;
        k += 1;
    }
    let deg: i128 = num.iter().sum();
    debug_assert!(deg > 0);
    ((n - k) as i64, deg as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_polynomial;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(FieldSpec::Rationals, vars, MonomialOrder::DegRevLex).unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn hilbert_data() {
        assert_eq!(hilbert_dim_degree(2, &[]), (2, 1));
        assert_eq!(hilbert_dim_degree(2, &[vec![2, 0], vec![1, 1], vec![0, 2]]), (0, 3));
        assert_eq!(hilbert_dim_degree(2, &[vec![2, 1]]), (1, 3));
        assert_eq!(hilbert_dim_degree(3, &[vec![0, 0, 0]]), (-1, 0));
        assert_eq!(hilbert_dim_degree(3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]), (1, 3));
    }

    #[test]
    fn resolution_ranks() {
        let r = ring(&["x", "y"]);
        let res = free_resolution(&ModulePresentation::cyclic(&ideal(&r, &["x"]))).unwrap();
        assert_eq!(res.ranks(), &[1, 1]);
        let res = free_resolution(&ModulePresentation::cyclic(&ideal(&r, &["x", "y"]))).unwrap();
        assert_eq!(res.ranks(), &[1, 2, 1]);
        assert!(res.composites_vanish().unwrap());
        let res = free_resolution(&ModulePresentation::cyclic(&ideal(&r, &["x^2", "x*y"]))).unwrap();
        assert_eq!(res.ranks(), &[1, 2, 1]);
        let syz: Vec<String> = res.maps()[1][0].iter().map(|p| p.to_string()).collect();
        assert!(syz == ["y", "-x"] || syz == ["-y", "x"], "{syz:?}");
    }

    #[test]
    fn tor_lengths_examples() {
        let r = ring(&["x", "y"]);
        let m = ideal(&r, &["x", "y"]);
        assert_eq!(tor_lengths_at_point(&ideal(&r, &["x"]), &ideal(&r, &["y"]), &m).unwrap(), vec![1, 0]);
        assert_eq!(tor_lengths_at_point(&ideal(&r, &["y - x^2"]), &ideal(&r, &["y"]), &m).unwrap(), vec![2, 0]);
        let not_max = ideal(&r, &["x"]);
        assert!(matches!(tor_lengths_at_point(&not_max, &not_max, &not_max), Err(Error::NotMaximal(_))));
    }

    #[test]
    fn two_planes_through_the_origin() {
        let r = ring(&["x", "y", "z", "w"]);
        let i = ideal(&r, &["x", "y"]).intersect(&ideal(&r, &["z", "w"])).unwrap();
        let j = ideal(&r, &["x - z", "y - w"]);
        let lens = tor_lengths_at_point(&i, &j, &Ideal::origin(&r)).unwrap();
        assert_eq!(lens, vec![3, 1]);
    }

    #[test]
    fn lengths_at_positive_dimensional_primes() {
        let r = ring(&["x", "y"]);
        let m = ModulePresentation::cyclic(&ideal(&r, &["x^2*y"]));
        let support = ideal(&r, &["x^2*y"]);
        assert_eq!(m.length_at(&ideal(&r, &["x"]), &support).unwrap(), 2);
        assert_eq!(m.length_at(&ideal(&r, &["y"]), &support).unwrap(), 1);
    }

    #[test]
    fn annihilator_of_sum() {
        let r = ring(&["x", "y"]);
        let m = ModulePresentation::cyclic(&ideal(&r, &["x"])).direct_sum(&ModulePresentation::cyclic(&ideal(&r, &["y"])));
        assert!(m.unwrap().annihilator().unwrap().same_as(&ideal(&r, &["x*y"])).unwrap());
    }
}
