//! The finite categories `E_n`, their cosimplicial functoriality, the hat
//! construction and homology of truncated nerves.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::snf::{chain_homology, AbelianGroup, IntMatrix};

pub const DEFAULT_EN_BOUND: usize = 4;
pub const MAX_NERVE_DIM: usize = 4;

/// A triple `(A, B, i)` with `i ∈ A ⊆ B ⊆ {i..n}`. Sets are bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnObject {
    pub n: usize,
    pub i: usize,
    pub a: u32,
    pub b: u32,
}

fn mask(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &k| m | (1 << k))
}

fn members(m: u32) -> Vec<usize> {
    (0..32).filter(|k| m & (1 << k) != 0).collect()
}

fn tail(j: usize, n: usize) -> u32 {
    (j..=n).fold(0, |m, k| m | (1 << k))
}

impl EnObject {
    pub fn new(n: usize, i: usize, a: &[usize], b: &[usize]) -> Result<Self> {
        if n >= 31 {
            return Err(Error::BoundExceeded(format!("n = {n}")));
        }
        let obj = EnObject { n, i, a: mask(a), b: mask(b) };
        if !obj.is_valid() {
            return Err(Error::invalid(format!("{obj} is not an object of E_{n}")));
        }
        Ok(obj)
    }

    pub fn is_valid(&self) -> bool {
        self.i <= self.n
            && self.a & (1 << self.i) != 0
            && self.a & !self.b == 0
            && self.b & !tail(self.i, self.n) == 0
    }

    pub fn a(&self) -> Vec<usize> {
        members(self.a)
    }

    pub fn b(&self) -> Vec<usize> {
        members(self.b)
    }

    /// Whether the unique morphism `self → other` exists.
    pub fn maps_to(&self, other: &EnObject) -> bool {
        self.n == other.n
            && self.i <= other.i
            && self.b & tail(other.i, self.n) & !other.b == 0
            && other.a & !self.a == 0
    }
}

impl fmt::Display for EnObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |m: u32| members(m).iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({{{}}},{{{}}},{})", set(self.a), set(self.b), self.i)
    }
}

/// A finite category with at most one morphism between any ordered pair of
/// objects, together with a marking of weak equivalences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    labels: Vec<String>,
    hom: Vec<Vec<bool>>,
    weak: Vec<Vec<bool>>,
}

impl FiniteCategory {
    pub fn new(labels: Vec<String>, hom: Vec<Vec<bool>>, weak: Vec<Vec<bool>>) -> Result<Self> {
        let k = labels.len();
        if hom.len() != k || weak.len() != k || hom.iter().chain(weak.iter()).any(|r| r.len() != k) {
            return Err(Error::invalid("hom and weak tables must be square of the object count"));
        }
        let c = FiniteCategory { labels, hom, weak };
        for x in 0..k {
            if !c.hom[x][x] || !c.weak[x][x] {
                return Err(Error::invalid(format!("missing identity on {}", c.labels[x])));
            }
            for y in 0..k {
                if c.weak[x][y] && !c.hom[x][y] {
                    return Err(Error::invalid("weak equivalence without a morphism"));
                }
                if c.hom[x][y] && c.hom[y][x] && !c.weak[x][y] {
                    return Err(Error::invalid("isomorphism not marked weak"));
                }
                for z in 0..k {
                    if c.hom[x][y] && c.hom[y][z] && !c.hom[x][z] {
                        return Err(Error::invalid("morphisms do not compose"));
                    }
                }
            }
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn has_morphism(&self, x: usize, y: usize) -> bool {
        self.hom[x][y]
    }

    pub fn is_weak(&self, x: usize, y: usize) -> bool {
        self.weak[x][y]
    }

    pub fn morphism_count(&self) -> usize {
        self.hom.iter().flatten().filter(|&&h| h).count()
    }

    pub fn full_subcategory(&self, objects: &[usize]) -> FiniteCategory {
        let pick = |t: &Vec<Vec<bool>>| objects.iter().map(|&x| objects.iter().map(|&y| t[x][y]).collect()).collect();
        FiniteCategory {
            labels: objects.iter().map(|&x| self.labels[x].clone()).collect(),
            hom: pick(&self.hom),
            weak: pick(&self.weak),
        }
    }

    /// An object receiving a morphism from every object.
    pub fn terminal(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|x| self.hom[x][t]))
    }

    /// An object with a morphism to every object.
    pub fn initial(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|x| self.hom[t][x]))
    }

    /// Weak equivalences compose.
    pub fn weak_closed_under_composition(&self) -> bool {
        let k = self.len();
        (0..k).all(|x| (0..k).all(|y| !self.weak[x][y] || (0..k).all(|z| !self.weak[y][z] || self.weak[x][z])))
    }

    /// Two-out-of-six for every composable triple `w → x → y → z`.
    pub fn two_out_of_six(&self) -> bool {
        let k = self.len();
        for w in 0..k {
            for x in (0..k).filter(|&x| self.hom[w][x]) {
                for y in (0..k).filter(|&y| self.hom[x][y] && self.weak[w][y]) {
                    for z in (0..k).filter(|&z| self.hom[y][z] && self.weak[x][z]) {
                        if !(self.weak[w][x] && self.weak[x][y] && self.weak[y][z] && self.weak[w][z]) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The terminal category.
pub fn point_category() -> FiniteCategory {
    FiniteCategory { labels: vec!["*".into()], hom: vec![vec![true]], weak: vec![vec![true]] }
}

/// The poset `0 → 1 → ... → n` with only identities weak.
pub fn ordinal(n: usize) -> FiniteCategory {
    let k = n + 1;
    FiniteCategory {
        labels: (0..k).map(|i| i.to_string()).collect(),
        hom: (0..k).map(|x| (0..k).map(|y| x <= y).collect()).collect(),
        weak: (0..k).map(|x| (0..k).map(|y| x == y).collect()).collect(),
    }
}

/// `E_n` with its object list and the functor to `[n]`.
#[derive(Debug, Clone)]
pub struct EnCategory {
    pub n: usize,
    pub objects: Vec<EnObject>,
    pub category: FiniteCategory,
    index: HashMap<EnObject, usize>,
}

impl EnCategory {
    pub fn index_of(&self, x: &EnObject) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Objects of the fibre `E_{n,i}`.
    pub fn fiber(&self, i: usize) -> Vec<usize> {
        (0..self.objects.len()).filter(|&k| self.objects[k].i == i).collect()
    }

    pub fn fiber_category(&self, i: usize) -> FiniteCategory {
        self.category.full_subcategory(&self.fiber(i))
    }
}

pub fn en_objects(n: usize) -> Vec<EnObject> {
    let mut out = Vec::new();
    for i in 0..=n {
        let rest = tail(i, n) & !(1 << i);
        // subsets of `rest` in increasing order
        let mut b_sub = 0u32;
        loop {
            let b = b_sub | (1 << i);
            let mut a_sub = 0u32;
            loop {
                out.push(EnObject { n, i, a: a_sub | (1 << i), b });
                if a_sub == b_sub {
                    break;
                }
                a_sub = (a_sub.wrapping_sub(b_sub)) & b_sub;
            }
            if b_sub == rest {
                break;
            }
            b_sub = (b_sub.wrapping_sub(rest)) & rest;
        }
    }
    out.sort();
    out
}

pub fn build_en(n: usize) -> Result<EnCategory> {
    build_en_bounded(n, DEFAULT_EN_BOUND)
}

pub fn build_en_bounded(n: usize, bound: usize) -> Result<EnCategory> {
    if n > bound || n >= 31 {
        return Err(Error::BoundExceeded(format!("n = {n} exceeds bound {bound}")));
    }
    let objects = en_objects(n);
    let hom: Vec<Vec<bool>> = objects.iter().map(|x| objects.iter().map(|y| x.maps_to(y)).collect()).collect();
    let weak = objects
        .iter()
        .enumerate()
        .map(|(a, x)| objects.iter().enumerate().map(|(b, y)| hom[a][b] && x.i == y.i).collect())
        .collect();
    let category = FiniteCategory::new(objects.iter().map(|o| o.to_string()).collect(), hom, weak)?;
    let index = objects.iter().enumerate().map(|(k, o)| (*o, k)).collect();
    Ok(EnCategory { n, objects, category, index })
}

/// A monotone map `[m] → [n]` given by its values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monotone {
    pub target: usize,
    pub values: Vec<usize>,
}

impl Monotone {
    pub fn new(values: Vec<usize>, target: usize) -> Result<Self> {
        if values.is_empty() || values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v > target) {
            return Err(Error::NonMonotone);
        }
        Ok(Monotone { target, values })
    }

    pub fn identity(n: usize) -> Self {
        Monotone { target: n, values: (0..=n).collect() }
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Monotone) -> Result<Monotone> {
        if g.source() != self.target {
            return Err(Error::invalid("maps are not composable"));
        }
        Monotone::new(self.values.iter().map(|&v| g.values[v]).collect(), g.target)
    }

    fn image(&self, m: u32) -> u32 {
        members(m).iter().fold(0, |acc, &k| acc | (1 << self.values[k]))
    }
}

/// All monotone maps `[m] → [n]`.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Monotone> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; m + 1];
    loop {
        out.push(Monotone { target: n, values: cur.clone() });
        let mut k = m + 1;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < n {
                let v = cur[k] + 1;
                for c in cur.iter_mut().skip(k) {
                    *c = v;
                }
                break;
            }
        }
    }
}

/// `f_*(A, B, i) = (f(A), f(B), f(i))`.
pub fn cosimplicial_push(f: &Monotone, x: &EnObject) -> Result<EnObject> {
    Monotone::new(f.values.clone(), f.target)?;
    if x.n != f.source() || !x.is_valid() {
        return Err(Error::invalid(format!("{x} is not an object of E_{}", f.source())));
    }
    Ok(EnObject { n: f.target, i: f.values[x.i], a: f.image(x.a), b: f.image(x.b) })
}

/// Checks that `f_*` sends morphisms of `E_m` to morphisms of `E_n`.
pub fn push_is_functorial(f: &Monotone, source: &EnCategory, target: &EnCategory) -> Result<bool> {
    let pushed: Vec<EnObject> = source.objects.iter().map(|x| cosimplicial_push(f, x)).collect::<Result<_>>()?;
    for (a, x) in pushed.iter().enumerate() {
        if target.index_of(x).is_none() {
            return Ok(false);
        }
        for (b, y) in pushed.iter().enumerate() {
            if source.category.has_morphism(a, b) && !x.maps_to(y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Objects `(c, k)` for `k ≤ levels`. A morphism `(c,k) → (d,l)` exists when
/// `c = d, k ≤ l` or when `c → d` exists and `l > k`.
pub fn hat_category(c: &FiniteCategory, levels: usize) -> Result<FiniteCategory> {
    if levels == 0 {
        return Err(Error::invalid("hat construction needs at least one level"));
    }
    let objs: Vec<(usize, usize)> = (0..c.len()).flat_map(|x| (0..=levels).map(move |k| (x, k))).collect();
    let labels = objs.iter().map(|&(x, k)| format!("({}, {k})", c.labels[x])).collect();
    let hom: Vec<Vec<bool>> = objs
        .iter()
        .map(|&(x, k)| objs.iter().map(|&(y, l)| (x == y && k <= l) || (c.hom[x][y] && l > k)).collect())
        .collect();
    let weak = objs
        .iter()
        .enumerate()
        .map(|(a, &(x, _))| objs.iter().enumerate().map(|(b, &(y, _))| hom[a][b] && x == y).collect())
        .collect();
    FiniteCategory::new(labels, hom, weak)
}

/// Nondegenerate simplices of the nerve and their boundary matrices.
#[derive(Debug, Clone)]
pub struct NerveComplex {
    pub simplices: Vec<Vec<Vec<usize>>>,
    pub boundaries: Vec<IntMatrix>,
}

impl NerveComplex {
    pub fn new(c: &FiniteCategory, dim: usize) -> Result<Self> {
        if dim > MAX_NERVE_DIM + 1 {
            return Err(Error::BoundExceeded(format!("nerve dimension {dim}")));
        }
        let mut simplices: Vec<Vec<Vec<usize>>> = vec![(0..c.len()).map(|x| vec![x]).collect()];
        for _ in 0..dim {
            let prev = simplices.last().unwrap();
            let next: Vec<Vec<usize>> = prev
                .iter()
                .flat_map(|s| {
                    let last = *s.last().unwrap();
                    (0..c.len()).filter(move |&y| y != last && c.hom[last][y]).map(move |y| {
                        let mut t = s.clone();
                        t.push(y);
                        t
                    })
                })
                .collect();
            simplices.push(next);
        }
        let mut boundaries = Vec::new();
        for k in 1..simplices.len() {
            let index: HashMap<&Vec<usize>, usize> = simplices[k - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut d = vec![vec![0i64; simplices[k].len()]; simplices[k - 1].len()];
            for (col, s) in simplices[k].iter().enumerate() {
                for skip in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(skip);
                    if face.windows(2).any(|w| w[0] == w[1]) {
                        continue;
                    }
                    let row = index[&face];
                    d[row][col] += if skip % 2 == 0 { 1 } else { -1 };
                }
            }
            boundaries.push(d);
        }
        Ok(NerveComplex { simplices, boundaries })
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.simplices.iter().map(|s| s.len()).collect()
    }

    pub fn homology(&self) -> Result<Vec<AbelianGroup>> {
        chain_homology(&self.ranks(), &self.boundaries)
    }
}

/// Integral homology of the nerve in degrees `0..=dim`.
pub fn nerve_homology(c: &FiniteCategory, dim: usize) -> Result<Vec<AbelianGroup>> {
    if dim > MAX_NERVE_DIM {
        return Err(Error::BoundExceeded(format!("nerve dimension {dim} exceeds {MAX_NERVE_DIM}")));
    }
    let mut h = NerveComplex::new(c, dim + 1)?.homology()?;
    h.truncate(dim + 1);
    Ok(h)
}

/// Reduced homology vanishes through `dim`.
pub fn is_acyclic(c: &FiniteCategory, dim: usize) -> Result<bool> {
    let h = nerve_homology(c, dim)?;
    Ok(h.first().is_some_and(|h0| h0.free_rank == 1 && h0.torsion.is_empty()) && h.iter().skip(1).all(|g| g.is_zero()))
}
