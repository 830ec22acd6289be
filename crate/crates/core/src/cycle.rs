//! Algebraic cycles on affine schemes: proper intersection, Serre's
//! intersection product, cycles of modules and pullbacks.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::{isolating_element, tor_modules, FreeResolution, ModulePresentation};
use crate::poly::{same_ring, PolyRing, Polynomial};
use crate::zerodim::{is_maximal, minimal_primes_zero_dim};

/// `Spec R/I_X` inside affine space, with `I_X` asserted radical.
#[derive(Debug, Clone)]
pub struct AffineScheme {
    ring: Arc<PolyRing>,
    ideal: Ideal,
    dim: i64,
    smooth: bool,
}

impl AffineScheme {
    pub fn affine_space(ring: &Arc<PolyRing>) -> Arc<Self> {
        Arc::new(AffineScheme { ring: ring.clone(), ideal: Ideal::zero(ring), dim: ring.nvars() as i64, smooth: true })
    }

    pub fn new(ring: &Arc<PolyRing>, ideal: Ideal) -> Result<Arc<Self>> {
        if !same_ring(ideal.ring(), ring) {
            return Err(Error::RingMismatch);
        }
        let ideal = ideal.canonical()?;
        let dim = ideal.dimension()?;
        if dim < 0 {
            return Err(Error::invalid("defining ideal is the unit ideal"));
        }
        let smooth = ideal.is_zero();
        Ok(Arc::new(AffineScheme { ring: ring.clone(), ideal, dim, smooth }))
    }

    /// Verifies the Jacobian criterion: `I_X` plus the `c × c` minors of the
    /// Jacobian of its generators is the unit ideal, `c` the codimension.
    pub fn with_smoothness_witness(ring: &Arc<PolyRing>, ideal: Ideal) -> Result<Arc<Self>> {
        let x = AffineScheme::new(ring, ideal)?;
        let c = ring.nvars() as i64 - x.dim;
        let gens = x.ideal.gens().to_vec();
        let jac: Vec<Vec<Polynomial>> = gens.iter().map(|g| (0..ring.nvars()).map(|v| g.derivative(v)).collect()).collect();
        let mut witness = x.ideal.gens().to_vec();
        for rows in subsets(gens.len(), c as usize) {
            for cols in subsets(ring.nvars(), c as usize) {
                let m: Vec<Vec<Polynomial>> = rows.iter().map(|&r| cols.iter().map(|&k| jac[r][k].clone()).collect()).collect();
                witness.push(determinant(&m, ring));
            }
        }
        if !Ideal::new(ring, witness)?.is_unit()? {
            return Err(Error::invalid("Jacobian criterion fails: scheme is not smooth"));
        }
        Ok(Arc::new(AffineScheme { smooth: true, ..(*x).clone() }))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn dimension(&self) -> i64 {
        self.dim
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    fn base(&self) -> Option<&Ideal> {
        if self.ideal.is_zero() {
            None
        } else {
            Some(&self.ideal)
        }
    }

    fn same(&self, other: &AffineScheme) -> bool {
        same_ring(&self.ring, &other.ring) && self.ideal.gens() == other.ideal.gens()
    }

    /// Codimension in `X` of `V(J)`, or `None` when `V(J)` is empty.
    pub fn codim_of(&self, j: &Ideal) -> Result<Option<i64>> {
        let d = j.add(&self.ideal)?.dimension()?;
        Ok(if d < 0 { None } else { Some(self.dim - d) })
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
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
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn determinant(m: &[Vec<Polynomial>], ring: &Arc<PolyRing>) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero(ring);
            for j in 0..n {
                let minor: Vec<Vec<Polynomial>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|x| x.1.clone()).collect()).collect();
                let t = &m[0][j] * &determinant(&minor, ring);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// An integral subscheme, keyed by the reduced Gröbner basis of its ideal
/// (which contains `I_X`).
#[derive(Clone)]
pub struct PrimeCycle {
    ideal: Ideal,
    codim: usize,
}

impl PrimeCycle {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    fn key(&self) -> &[Polynomial] {
        self.ideal.gens()
    }
}

impl PartialEq for PrimeCycle {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for PrimeCycle {}

impl PartialOrd for PrimeCycle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeCycle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().len().cmp(&other.key().len()).then_with(|| self.key().cmp(other.key()))
    }
}

impl fmt::Debug for PrimeCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PrimeCycle {
    /// Generators largest leading term first, e.g. `[x, y]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gs: Vec<String> = self.key().iter().rev().map(|g| g.to_string()).collect();
        write!(f, "[{}]", gs.join(", "))
    }
}

/// A formal integer combination of prime cycles of one codimension.
#[derive(Clone)]
pub struct Cycle {
    scheme: Arc<AffineScheme>,
    codim: usize,
    terms: BTreeMap<PrimeCycle, i64>,
}

impl PartialEq for Cycle {
    fn eq(&self, other: &Self) -> bool {
        self.scheme.same(&other.scheme) && self.codim == other.codim && self.terms == other.terms
    }
}

impl Eq for Cycle {}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle[codim {}]({self})", self.codim)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                write!(f, "{} * {p}", c)?;
            } else if *c < 0 {
                write!(f, " - {} * {p}", -c)?;
            } else {
                write!(f, " + {} * {p}", c)?;
            }
        }
        Ok(())
    }
}

impl Cycle {
    pub fn zero(scheme: &Arc<AffineScheme>, codim: usize) -> Self {
        Cycle { scheme: scheme.clone(), codim, terms: BTreeMap::new() }
    }

    /// Cycle `1 · [V(P)]`. Primality is asserted by the caller; the ideal is
    /// checked to be proper and of the stated codimension when one is given.
    pub fn prime(scheme: &Arc<AffineScheme>, p: &Ideal) -> Result<Self> {
        let pc = prime_cycle(scheme, p, None)?;
        let codim = pc.codim;
        let mut terms = BTreeMap::new();
        terms.insert(pc, 1);
        Ok(Cycle { scheme: scheme.clone(), codim, terms })
    }

    pub fn prime_with_codim(scheme: &Arc<AffineScheme>, p: &Ideal, codim: usize) -> Result<Self> {
        let pc = prime_cycle(scheme, p, Some(codim))?;
        let mut terms = BTreeMap::new();
        terms.insert(pc, 1);
        Ok(Cycle { scheme: scheme.clone(), codim, terms })
    }

    pub fn from_terms(scheme: &Arc<AffineScheme>, codim: usize, terms: &[(i64, Ideal)]) -> Result<Self> {
        let mut c = Cycle::zero(scheme, codim);
        for (k, p) in terms {
            c = c.add(&Cycle::prime_with_codim(scheme, p, codim)?.scale(*k))?;
        }
        Ok(c)
    }

    pub fn scheme(&self) -> &Arc<AffineScheme> {
        &self.scheme
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PrimeCycle, i64)> {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, p: PrimeCycle, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &Cycle) -> Result<Cycle> {
        if !self.scheme.same(&other.scheme) {
            return Err(Error::SchemeMismatch);
        }
        if self.codim != other.codim && !self.is_zero() && !other.is_zero() {
            return Err(Error::invalid("adding cycles of different codimension"));
        }
        let mut out = if self.is_zero() { Cycle { codim: other.codim, ..self.clone() } } else { self.clone() };
        for (p, c) in &other.terms {
            out.add_term(p.clone(), *c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Cycle {
        let mut out = Cycle::zero(&self.scheme, self.codim);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c * k);
        }
        out
    }

    pub fn neg(&self) -> Cycle {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Cycle) -> Result<Cycle> {
        self.add(&other.neg())
    }

    /// `Σ coefficient · [k(P) : k]` for cycles of points.
    pub fn degree(&self) -> Result<i64> {
        let mut acc = 0;
        for (p, c) in &self.terms {
            let d = crate::zerodim::quotient_dimension(&p.ideal)? as i64;
            acc += c * d;
        }
        Ok(acc)
    }
}

fn prime_cycle(scheme: &AffineScheme, p: &Ideal, codim: Option<usize>) -> Result<PrimeCycle> {
    if !same_ring(p.ring(), &scheme.ring) {
        return Err(Error::RingMismatch);
    }
    let full = p.add(&scheme.ideal)?.canonical()?;
    let d = full.dimension()?;
    if d < 0 {
        return Err(Error::invalid(format!("{p} is the unit ideal")));
    }
    let c = (scheme.dim - d) as usize;
    if let Some(k) = codim {
        if k != c {
            return Err(Error::Codimension(format!("{p} has codimension {c}, not {k}")));
        }
    }
    Ok(PrimeCycle { ideal: full, codim: c })
}

fn check_same(c: &Cycle, d: &Cycle) -> Result<()> {
    if c.scheme.same(&d.scheme) {
        Ok(())
    } else {
        Err(Error::SchemeMismatch)
    }
}

/// Every component of `V(I_C + I_D)` has codimension at least `p + q`, for
/// every pair of prime terms.
pub fn intersects_properly(c: &Cycle, d: &Cycle) -> Result<bool> {
    check_same(c, d)?;
    let x = &c.scheme;
    for (pc, _) in &c.terms {
        for (pd, _) in &d.terms {
            if let Some(k) = x.codim_of(&pc.ideal.add(&pd.ideal)?)? {
                if k < (c.codim + d.codim) as i64 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The components of `V(support)` of dimension `dim_target`, enumerated when
/// the support is zero-dimensional and otherwise taken from `candidates` after
/// verifying that they account for the whole top-dimensional degree.
pub fn components(
    x: &AffineScheme,
    support: &Ideal,
    dim_target: i64,
    candidates: Option<&[Ideal]>,
) -> Result<Vec<Ideal>> {
    let support = support.add(&x.ideal)?;
    let d = support.dimension()?;
    if d < 0 || d < dim_target {
        return Ok(vec![]);
    }
    if d > dim_target {
        return Err(Error::Codimension(format!("support has dimension {d}, expected at most {dim_target}")));
    }
    if d == 0 {
        return minimal_primes_zero_dim(&support);
    }
    let cands = candidates.ok_or(Error::MissingComponents)?;
    let mut chosen: Vec<Ideal> = Vec::new();
    for c in cands {
        let c = c.add(&x.ideal)?.canonical()?;
        if c.dimension()? == d && c.contains_ideal(&support)? && !chosen.iter().any(|k| k.gens() == c.gens()) {
            chosen.push(c);
        }
    }
    // a prime of the right dimension is maximal among them; anything strictly
    // below another candidate is not prime
    let mut keep = Vec::new();
    for (k, c) in chosen.iter().enumerate() {
        let mut below = false;
        for (l, other) in chosen.iter().enumerate() {
            if l != k && other.contains_ideal(c)? {
                below = true;
                break;
            }
        }
        if !below {
            keep.push(c.clone());
        }
    }
    let mut chosen = keep;
    let m = ModulePresentation::cyclic(&support);
    let (_, total) = m.dimension_and_degree()?;
    let mut covered = 0u64;
    for p in &chosen {
        let len = m.length_at(p, &support)?;
        let (_, pdeg) = ModulePresentation::cyclic(p).dimension_and_degree()?;
        covered += len * pdeg;
    }
    if covered != total {
        return Err(Error::ComponentsIncomplete(format!("candidates account for degree {covered} of {total}")));
    }
    chosen.sort_by(|a, b| a.gens().len().cmp(&b.gens().len()).then_with(|| a.gens().cmp(b.gens())));
    Ok(chosen)
}

/// `Σ_i (-1)^i length_P Tor_i^{R_X}(R/I, R/J)` at a minimal prime `P` of `I + J`.
pub fn tor_euler_at(x: &AffineScheme, i: &Ideal, j: &Ideal, p: &Ideal) -> Result<i64> {
    let i = i.add(&x.ideal)?;
    let j = j.add(&x.ideal)?;
    let lens = crate::module::tor_lengths_at(&i, &j, p, x.base())?;
    Ok(lens.iter().enumerate().map(|(k, &l)| if k % 2 == 0 { l as i64 } else { -(l as i64) }).sum())
}

/// Serre's intersection multiplicity of two properly intersecting prime
/// cycles at a maximal ideal `W`.
pub fn serre_multiplicity(x: &Arc<AffineScheme>, c: &Ideal, d: &Ideal, w: &Ideal) -> Result<i64> {
    let cc = Cycle::prime(x, c)?;
    let dd = Cycle::prime(x, d)?;
    if !intersects_properly(&cc, &dd)? {
        return Err(Error::ImproperIntersection);
    }
    let w = w.add(&x.ideal)?;
    if !is_maximal(&w)? {
        return Err(Error::NotMaximal(w.to_string()));
    }
    let sum = c.add(d)?;
    if !w.contains_ideal(&sum)? {
        return Err(Error::invalid("the point does not lie on both cycles"));
    }
    tor_euler_at(x, c, d, &w)
}

pub fn intersection_product(c: &Cycle, d: &Cycle) -> Result<Cycle> {
    intersection_product_on(c, d, None)
}

/// `C · D = Σ_W m(W; C, D) W`, bilinear over the prime terms.
pub fn intersection_product_on(c: &Cycle, d: &Cycle, candidates: Option<&[Ideal]>) -> Result<Cycle> {
    check_same(c, d)?;
    if !intersects_properly(c, d)? {
        return Err(Error::ImproperIntersection);
    }
    let x = &c.scheme;
    let codim = c.codim + d.codim;
    let mut out = Cycle::zero(x, codim);
    let target = x.dim - codim as i64;
    for (pc, a) in &c.terms {
        for (pd, b) in &d.terms {
            let sum = pc.ideal.add(&pd.ideal)?;
            for w in components(x, &sum, target, candidates)? {
                let m = tor_euler_at(x, &pc.ideal, &pd.ideal, &w)?;
                out.add_term(prime_cycle(x, &w, Some(codim))?, a * b * m);
            }
        }
    }
    Ok(out)
}

/// `Z_p(M) = Σ length_P(M_P) · P` over the codimension-`p` components of the support.
pub fn cycle_of_module(x: &Arc<AffineScheme>, m: &ModulePresentation, p: usize, candidates: Option<&[Ideal]>) -> Result<Cycle> {
    let ann = m.annihilator()?.add(&x.ideal)?;
    let target = x.dim - p as i64;
    let d = ann.dimension()?;
    if d > target {
        return Err(Error::Codimension(format!("support has codimension {} < {p}", x.dim - d)));
    }
    let mut out = Cycle::zero(x, p);
    let m = m.tensor_quotient(&x.ideal)?;
    for w in components(x, &ann, target, candidates)? {
        let len = m.length_at(&w, &ann)?;
        out.add_term(prime_cycle(x, &w, Some(p))?, len as i64);
    }
    Ok(out)
}

pub fn cycle_of_ideal(x: &Arc<AffineScheme>, i: &Ideal, p: usize, candidates: Option<&[Ideal]>) -> Result<Cycle> {
    cycle_of_module(x, &ModulePresentation::cyclic(&i.add(&x.ideal)?), p, candidates)
}

/// `Σ_i (-1)^i Z_n(Tor_i(R/I, R/J))`.
pub fn euler_cycle(x: &Arc<AffineScheme>, i: &Ideal, j: &Ideal, n: usize, candidates: Option<&[Ideal]>) -> Result<Cycle> {
    let sum = i.add(j)?;
    let target = x.dim - n as i64;
    if let Some(k) = x.codim_of(&sum)? {
        if k < n as i64 {
            return Err(Error::Codimension(format!("V(I + J) has codimension {k} < {n}")));
        }
    }
    let mut out = Cycle::zero(x, n);
    for w in components(x, &sum, target, candidates)? {
        let m = tor_euler_at(x, i, j, &w)?;
        out.add_term(prime_cycle(x, &w, Some(n))?, m);
    }
    Ok(out)
}

/// How a morphism is known to be flat.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlatKind {
    /// `X = Y × A^k` with `f` the projection: pulled-back primes stay prime.
    Projection,
    /// `X = D(h) ⊂ Y`, presented with an inverse variable: pulled-back primes
    /// are prime or the unit ideal.
    Localization,
    /// Flat by assertion; components must be enumerable or supplied.
    Asserted,
}

/// A morphism `f: X → Y` given by the images of the target's variables.
#[derive(Debug, Clone)]
pub struct SchemeMorphism {
    source: Arc<AffineScheme>,
    target: Arc<AffineScheme>,
    images: Vec<Polynomial>,
    flat: Option<FlatKind>,
}

impl SchemeMorphism {
    pub fn new(source: &Arc<AffineScheme>, target: &Arc<AffineScheme>, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != target.ring.nvars() || images.iter().any(|p| !same_ring(p.ring(), &source.ring)) {
            return Err(Error::InvalidMorphism);
        }
        let f = SchemeMorphism { source: source.clone(), target: target.clone(), images, flat: None };
        for g in target.ideal.gens() {
            if !source.ideal.contains(&f.pull_poly(g))? {
                return Err(Error::InvalidMorphism);
            }
        }
        Ok(f)
    }

    pub fn identity(x: &Arc<AffineScheme>) -> Self {
        let images = (0..x.ring.nvars()).map(|v| Polynomial::var(&x.ring, v)).collect();
        SchemeMorphism { source: x.clone(), target: x.clone(), images, flat: Some(FlatKind::Projection) }
    }

    pub fn with_flat(mut self, kind: FlatKind) -> Self {
        self.flat = Some(kind);
        self
    }

    pub fn source(&self) -> &Arc<AffineScheme> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AffineScheme> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn pull_poly(&self, g: &Polynomial) -> Polynomial {
        g.substitute(&self.source.ring, &self.images)
    }

    pub fn pull_ideal(&self, i: &Ideal) -> Result<Ideal> {
        let gens = i.gens().iter().map(|g| self.pull_poly(g)).collect();
        Ideal::new(&self.source.ring, gens)?.add(&self.source.ideal)
    }

    /// `self ∘ first`: first `first: W → X`, then `self: X → Y`.
    pub fn after(&self, first: &SchemeMorphism) -> Result<SchemeMorphism> {
        if !first.target.same(&self.source) {
            return Err(Error::SchemeMismatch);
        }
        let images = self.images.iter().map(|g| first.pull_poly(g)).collect();
        SchemeMorphism::new(&first.source, &self.target, images)
    }
}

/// Flat pullback: `Z_p(R_X / I_C R_X)` for each prime term.
pub fn flat_pullback(f: &SchemeMorphism, c: &Cycle, candidates: Option<&[Ideal]>) -> Result<Cycle> {
    let kind = f.flat.ok_or(Error::NotFlat)?;
    if !c.scheme.same(&f.target) {
        return Err(Error::SchemeMismatch);
    }
    let x = &f.source;
    let mut out = Cycle::zero(x, c.codim);
    for (p, k) in &c.terms {
        let ext = f.pull_ideal(&p.ideal)?;
        if ext.is_unit()? {
            continue;
        }
        match kind {
            FlatKind::Projection | FlatKind::Localization => {
                out.add_term(prime_cycle(x, &ext, Some(c.codim))?, *k);
            }
            FlatKind::Asserted => {
                let z = cycle_of_ideal(x, &ext, c.codim, candidates)?;
                out = out.add(&z.scale(*k))?;
            }
        }
    }
    Ok(out)
}

/// Whether every term `W` of `C` has `f^{-1}(W)` of codimension at least `p`.
pub fn graph_good_position(f: &SchemeMorphism, c: &Cycle) -> Result<bool> {
    for (p, _) in &c.terms {
        if let Some(k) = f.source.codim_of(&f.pull_ideal(&p.ideal)?)? {
            if k < c.codim as i64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `f^*(C) = Γ_f · pr_Y^*(C)`, computed as `Σ_i (-1)^i Z_p(Tor_i^{R_Y}(R_Y/I_W, R_X))`
/// by resolving `R_Y/I_W` over `R_Y` and pulling the resolution back along `f`.
pub fn graph_pullback(f: &SchemeMorphism, c: &Cycle, candidates: Option<&[Ideal]>) -> Result<Cycle> {
    if !c.scheme.same(&f.target) {
        return Err(Error::SchemeMismatch);
    }
    if !graph_good_position(f, c)? {
        return Err(Error::GoodPosition(format!("a preimage has codimension below {}", c.codim)));
    }
    let x = &f.source;
    let y = &f.target;
    let target_dim = x.dim - c.codim as i64;
    let mut out = Cycle::zero(x, c.codim);
    for (p, k) in &c.terms {
        let support = f.pull_ideal(&p.ideal)?;
        let comps = components(x, &support, target_dim, candidates)?;
        if comps.is_empty() {
            continue;
        }
        let res = crate::module::free_resolution_over(&ModulePresentation::cyclic(&p.ideal), y.base())?;
        let pulled = pull_resolution(f, &res);
        let tors = tor_modules(&pulled, &x.ideal)?;
        for w in comps {
            let s0 = isolating_element(&support, &w)?;
            let mut m = 0i64;
            for (i, t) in tors.iter().enumerate() {
                let l = t.length_at_with(&w, &s0)? as i64;
                m += if i % 2 == 0 { l } else { -l };
            }
            out.add_term(prime_cycle(x, &w, Some(c.codim))?, k * m);
        }
    }
    Ok(out)
}

fn pull_resolution(f: &SchemeMorphism, res: &FreeResolution) -> FreeResolution {
    let maps = res
        .maps()
        .iter()
        .map(|d| d.iter().map(|col| col.iter().map(|e| f.pull_poly(e)).collect()).collect())
        .collect();
    FreeResolution::from_parts(&f.source.ring, res.ranks().to_vec(), maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_polynomial;
    use crate::poly::MonomialOrder;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(FieldSpec::Rationals, vars, MonomialOrder::DegRevLex).unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn products_in_the_plane() {
        let r = ring(&["x", "y"]);
        let a2 = AffineScheme::affine_space(&r);
        let c = |g: &str| Cycle::prime(&a2, &ideal(&r, &[g])).unwrap();
        assert_eq!(intersection_product(&c("x"), &c("y")).unwrap().to_string(), "1 * [x, y]");
        assert_eq!(intersection_product(&c("y - x^2"), &c("y")).unwrap().to_string(), "2 * [x, y]");
        assert_eq!(
            intersection_product(&c("y - x^2"), &c("y - 1")).unwrap().to_string(),
            "1 * [x - 1, y - 1] + 1 * [x + 1, y - 1]"
        );
        assert!(intersects_properly(&c("x"), &c("y")).unwrap());
        assert!(!intersects_properly(&c("x"), &c("x")).unwrap());
        assert_eq!(intersection_product(&c("x"), &c("x")).unwrap_err(), Error::ImproperIntersection);
    }

    #[test]
    fn module_cycles() {
        let r = ring(&["x"]);
        let a1 = AffineScheme::affine_space(&r);
        let z = cycle_of_ideal(&a1, &ideal(&r, &["x^2"]), 1, None).unwrap();
        assert_eq!(z.to_string(), "2 * [x]");
        let r2 = ring(&["x", "y"]);
        let a2 = AffineScheme::affine_space(&r2);
        let cands = [ideal(&r2, &["x"]), ideal(&r2, &["y"])];
        let z = cycle_of_ideal(&a2, &ideal(&r2, &["x^2*y"]), 1, Some(&cands)).unwrap();
        assert_eq!(z.to_string(), "1 * [y] + 2 * [x]");
        assert_eq!(cycle_of_ideal(&a2, &ideal(&r2, &["x^2*y"]), 1, None).unwrap_err(), Error::MissingComponents);
        let err = cycle_of_ideal(&a2, &ideal(&r2, &["x^2*y"]), 1, Some(&cands[..1])).unwrap_err();
        assert!(matches!(err, Error::ComponentsIncomplete(_)));
    }

    #[test]
    fn pullbacks_along_squaring() {
        let rx = ring(&["x"]);
        let ry = ring(&["y"]);
        let x = AffineScheme::affine_space(&rx);
        let y = AffineScheme::affine_space(&ry);
        let f = SchemeMorphism::new(&x, &y, vec![parse_polynomial("x^2", &rx).unwrap()]).unwrap();
        let c1 = Cycle::prime(&y, &ideal(&ry, &["y - 1"])).unwrap();
        assert_eq!(graph_pullback(&f, &c1, None).unwrap().to_string(), "1 * [x - 1] + 1 * [x + 1]");
        let c0 = Cycle::prime(&y, &ideal(&ry, &["y"])).unwrap();
        assert_eq!(graph_pullback(&f, &c0, None).unwrap().to_string(), "2 * [x]");
        let id = SchemeMorphism::identity(&y);
        assert_eq!(graph_pullback(&id, &c1, None).unwrap(), c1);
    }
}
