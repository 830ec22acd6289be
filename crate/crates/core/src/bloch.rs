//! Algebraic simplices, Bloch's cycle groups `z^r(X, n)` with their face
//! conditions, the simplicial boundary and the weight-one regulator.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::cycle::{graph_pullback, AffineScheme, Cycle, SchemeMorphism};
use crate::error::{Error, Result};
use crate::field::{pow_mod_u64, Coeff, FieldSpec};
use crate::ideal::Ideal;
use crate::poly::{PolyRing, Polynomial};
use crate::snf::{chain_homology, AbelianGroup, IntMatrix};
use crate::upoly;

/// `X × Δ^n` with `t_0` eliminated: the ring carries the variables of `X`
/// followed by `prefix1, ..., prefixn`.
#[derive(Debug, Clone)]
pub struct AlgebraicSimplex {
    base: Arc<AffineScheme>,
    prefix: String,
    n: usize,
    scheme: Arc<AffineScheme>,
}

impl AlgebraicSimplex {
    pub fn new(base: &Arc<AffineScheme>, prefix: &str, n: usize) -> Result<Arc<Self>> {
        let br = base.ring();
        let mut vars: Vec<String> = br.vars().to_vec();
        vars.extend((1..=n).map(|j| format!("{prefix}{j}")));
        let ring = PolyRing::new(br.field(), &vars, br.order())?;
        let lift: Vec<usize> = (0..br.nvars()).collect();
        let gens = base.ideal().gens().iter().map(|g| g.map_vars(&ring, &lift)).collect();
        let scheme = if base.ideal().is_zero() {
            AffineScheme::affine_space(&ring)
        } else {
            AffineScheme::new(&ring, Ideal::new(&ring, gens)?)?
        };
        Ok(Arc::new(AlgebraicSimplex { base: base.clone(), prefix: prefix.to_string(), n, scheme }))
    }

    /// `Δ^n` over the ground field.
    pub fn standard(field: FieldSpec, prefix: &str, n: usize) -> Result<Arc<Self>> {
        let point = PolyRing::new(field, &[] as &[&str], crate::poly::MonomialOrder::DegRevLex)?;
        AlgebraicSimplex::new(&AffineScheme::affine_space(&point), prefix, n)
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &Arc<AffineScheme> {
        &self.base
    }

    pub fn scheme(&self) -> &Arc<AffineScheme> {
        &self.scheme
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.scheme.ring()
    }

    fn offset(&self) -> usize {
        self.base.ring().nvars()
    }

    /// The barycentric coordinate `t_j`, with `t_0 = 1 - t_1 - ... - t_n`.
    pub fn coordinate(&self, j: usize) -> Polynomial {
        let r = self.ring();
        if j == 0 {
            let mut f = Polynomial::one(r);
            for k in 1..=self.n {
                f = &f - &Polynomial::var(r, self.offset() + k - 1);
            }
            f
        } else {
            Polynomial::var(r, self.offset() + j - 1)
        }
    }

    /// The ideal of the iterated face `{t_j = 0 : j ∈ s}`.
    pub fn face_ideal(&self, s: &[usize]) -> Result<Ideal> {
        Ideal::new(self.ring(), s.iter().map(|&j| self.coordinate(j)).collect())?.add(self.scheme.ideal())
    }

    /// Every nonempty set of vertex indices whose face is nonempty.
    pub fn iterated_faces(&self) -> Vec<Vec<usize>> {
        let n = self.n + 1;
        (1u32..(1 << n) - 1).map(|mask| (0..n).filter(|j| mask & (1 << j) != 0).collect()).collect()
    }

    pub fn lower(&self) -> Result<Arc<AlgebraicSimplex>> {
        if self.n == 0 {
            return Err(Error::invalid("Δ^0 has no faces"));
        }
        AlgebraicSimplex::new(&self.base, &self.prefix, self.n - 1)
    }

    /// The coface `δ_i: X × Δ^{n-1} → X × Δ^n` inserting a zero at position `i`.
    pub fn face_map(&self, i: usize) -> Result<SchemeMorphism> {
        if i > self.n {
            return Err(Error::invalid(format!("face index {i} exceeds level {}", self.n)));
        }
        let low = self.lower()?;
        let lr = low.ring();
        let mut images: Vec<Polynomial> = (0..self.offset()).map(|v| Polynomial::var(lr, v)).collect();
        for j in 1..=self.n {
            images.push(match j.cmp(&i) {
                std::cmp::Ordering::Less => low.coordinate(j),
                std::cmp::Ordering::Equal => Polynomial::zero(lr),
                std::cmp::Ordering::Greater => low.coordinate(j - 1),
            });
        }
        SchemeMorphism::new(low.scheme(), &self.scheme, images)
    }
}

/// An element of `z^r(X, n)`, optionally constrained by closed subschemes
/// `Z_i ⊂ X` (given by ideals in the ring of `X`).
#[derive(Debug, Clone)]
pub struct SimplicialCycle {
    simplex: Arc<AlgebraicSimplex>,
    cycle: Cycle,
    extra: Vec<Ideal>,
}

impl PartialEq for SimplicialCycle {
    fn eq(&self, other: &Self) -> bool {
        self.simplex.n == other.simplex.n && self.cycle == other.cycle
    }
}

impl SimplicialCycle {
    pub fn new(simplex: &Arc<AlgebraicSimplex>, cycle: Cycle) -> Result<Self> {
        if !Arc::ptr_eq(cycle.scheme(), simplex.scheme())
            && cycle.scheme().ring() != simplex.scheme().ring()
        {
            return Err(Error::SchemeMismatch);
        }
        Ok(SimplicialCycle { simplex: simplex.clone(), cycle, extra: vec![] })
    }

    /// Adds the family `F` of closed subschemes of `X` defining `z^r_F`.
    pub fn with_conditions(mut self, extra: Vec<Ideal>) -> Self {
        self.extra = extra;
        self
    }

    pub fn simplex(&self) -> &Arc<AlgebraicSimplex> {
        &self.simplex
    }

    pub fn cycle(&self) -> &Cycle {
        &self.cycle
    }

    pub fn level(&self) -> usize {
        self.simplex.n
    }

    pub fn weight(&self) -> usize {
        self.cycle.codim()
    }

    pub fn is_zero(&self) -> bool {
        self.cycle.is_zero()
    }

    pub fn add(&self, other: &SimplicialCycle) -> Result<SimplicialCycle> {
        Ok(SimplicialCycle { cycle: self.cycle.add(&other.cycle)?, ..self.clone() })
    }

    pub fn scale(&self, k: i64) -> SimplicialCycle {
        SimplicialCycle { cycle: self.cycle.scale(k), ..self.clone() }
    }

    fn lift_base(&self, i: &Ideal) -> Result<Ideal> {
        let r = self.simplex.ring();
        let lift: Vec<usize> = (0..self.simplex.offset()).collect();
        Ideal::new(r, i.gens().iter().map(|g| g.map_vars(r, &lift)).collect())
    }

    /// Whether every term meets `X × F` in codimension at least `r` inside
    /// `X × F` for every iterated face `F`, and likewise `Z_i × F`.
    pub fn face_good_position(&self) -> Result<bool> {
        let r = self.weight() as i64;
        let s = &self.simplex;
        let mut strata: Vec<Ideal> = vec![Ideal::zero(s.ring())];
        for z in &self.extra {
            strata.push(self.lift_base(z)?);
        }
        let mut faces = vec![vec![]];
        faces.extend(s.iterated_faces());
        for z in &strata {
            for f in &faces {
                if z.is_zero() && f.is_empty() {
                    continue;
                }
                let ambient = s.face_ideal(f)?.add(z)?;
                let d = ambient.dimension()?;
                for (p, _) in self.cycle.terms() {
                    let e = ambient.add(p.ideal())?.dimension()?;
                    if e >= 0 && e > d - r {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `∂_i z`, the pullback along the `i`-th coface.
    pub fn face(&self, i: usize, candidates: Option<&[Ideal]>) -> Result<SimplicialCycle> {
        let low = self.simplex.lower()?;
        let delta = self.simplex.face_map(i)?;
        let cycle = graph_pullback(&delta, &self.cycle, candidates)?;
        Ok(SimplicialCycle { simplex: low, cycle, extra: self.extra.clone() })
    }

    /// `Σ (-1)^i ∂_i z`; positive-dimensional face components are taken from
    /// `candidates` (ideals in the ring one level down).
    pub fn boundary(&self, candidates: Option<&[Ideal]>) -> Result<SimplicialCycle> {
        if !self.face_good_position()? {
            return Err(Error::GoodPosition("cycle meets a face improperly".into()));
        }
        let low = self.simplex.lower()?;
        let mut acc = Cycle::zero(low.scheme(), self.weight());
        for i in 0..=self.level() {
            let f = self.face(i, candidates)?;
            acc = acc.add(&f.cycle.scale(if i % 2 == 0 { 1 } else { -1 }))?;
        }
        Ok(SimplicialCycle { simplex: low, cycle: acc, extra: self.extra.clone() })
    }
}

/// Principal candidate ideals `(f ∘ δ_i)` one level down, for each listed
/// factor `f` and each coface.
pub fn face_pool(simplex: &AlgebraicSimplex, factors: &[Polynomial]) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    for i in 0..=simplex.level() {
        let d = simplex.face_map(i)?;
        for f in factors {
            let g = d.pull_poly(f);
            if !g.is_constant() {
                out.push(Ideal::principal(&g));
            }
        }
    }
    Ok(out)
}

/// A finite piece of the cycle complex: per level, a list of generators and
/// the integer boundary matrices `d_n: C_n → C_{n-1}`.
#[derive(Debug, Clone)]
pub struct SubcomplexPresentation {
    pub weight: usize,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

impl SubcomplexPresentation {
    /// Builds the matrices by expressing each boundary in the next level's
    /// generators. Generators are indexed by level starting at 0.
    pub fn from_cycles(levels: &[Vec<SimplicialCycle>], candidates: Option<&[Ideal]>) -> Result<Self> {
        let weight = levels.iter().flatten().next().map(|z| z.weight()).unwrap_or(0);
        let mut boundaries = Vec::new();
        for n in 1..levels.len() {
            let lower = &levels[n - 1];
            let mut m = vec![vec![0i64; levels[n].len()]; lower.len()];
            for (col, z) in levels[n].iter().enumerate() {
                let b = z.boundary(candidates)?;
                let coeffs = express(&b, lower)?;
                for (row, c) in coeffs.into_iter().enumerate() {
                    m[row][col] = c;
                }
            }
            boundaries.push(m);
        }
        Ok(SubcomplexPresentation { weight, ranks: levels.iter().map(|l| l.len()).collect(), boundaries })
    }

    pub fn homology(&self) -> Result<Vec<AbelianGroup>> {
        chain_homology(&self.ranks, &self.boundaries)
    }
}

/// Coefficients of `b` in the given generators; each prime may occur in at most
/// one generator, with nonzero coefficient dividing `b`'s.
fn express(b: &SimplicialCycle, gens: &[SimplicialCycle]) -> Result<Vec<i64>> {
    let mut rest = b.cycle.clone();
    let mut out = vec![0i64; gens.len()];
    for (k, g) in gens.iter().enumerate() {
        let Some((p, c)) = g.cycle.terms().next() else { continue };
        let want = rest.terms().find(|(q, _)| *q == p).map(|(_, v)| v).unwrap_or(0);
        if want % c != 0 {
            return Err(Error::invalid("boundary is not an integer combination of the generators"));
        }
        out[k] = want / c;
        rest = rest.sub(&g.cycle.scale(want / c))?;
    }
    if !rest.is_zero() {
        return Err(Error::invalid(format!("boundary term {rest} lies outside the subcomplex")));
    }
    Ok(out)
}

/// The regulator `z^1(Spec k, 1) → k^*`: a closed point with monic minimal
/// polynomial `g` in the coordinate `t_1` maps to `Norm(t/(t-1)) = g(0)/g(1)`.
pub fn weight1_regulator(z: &SimplicialCycle) -> Result<Coeff> {
    if z.level() != 1 || z.weight() != 1 || z.simplex.base.ring().nvars() != 0 {
        return Err(Error::invalid("regulator is defined on z^1(Spec k, 1)"));
    }
    let field = z.simplex.ring().field();
    let mut acc = field.one();
    for (p, c) in z.cycle.terms() {
        let g = p.ideal().gens()[0].make_monic();
        let g0 = g.evaluate(&[field.zero()]);
        let g1 = g.evaluate(&[field.one()]);
        if g0 == field.zero() || g1 == field.zero() {
            return Err(Error::GoodPosition("point lies on a face".into()));
        }
        let v = field.div(&g0, &g1)?;
        let v = if c >= 0 { field_pow(field, &v, c as u64) } else { field.inv(&field_pow(field, &v, (-c) as u64))? };
        acc = field.mul(&acc, &v);
    }
    Ok(acc)
}

fn field_pow(field: FieldSpec, a: &Coeff, e: u64) -> Coeff {
    field.pow(a, e)
}

/// Dense bivariate polynomial over `F_p`: `coeffs[k]` multiplies the `k`-th
/// monomial `t1^a t2^b` in the order produced by [`plane_monomials`].
pub fn plane_monomials(deg: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for d in 0..=deg {
        for a in (0..=d).rev() {
            out.push((a, d - a));
        }
    }
    out
}

/// Restrictions of each monomial to the three edges of `Δ²`, parametrized as
/// in [`AlgebraicSimplex::face_map`].
fn edge_tables(monos: &[(u32, u32)], p: u64) -> [Vec<upoly::Up>; 3] {
    let one_minus_s = vec![1 % p, p - 1];
    let s = vec![0, 1 % p];
    let params = [(one_minus_s, s.clone()), (vec![], s.clone()), (s, vec![])];
    params.map(|(x, y)| {
        monos
            .iter()
            .map(|&(a, b)| {
                let mut t = vec![1 % p];
                for _ in 0..a {
                    t = upoly::mul(&t, &x, p);
                }
                for _ in 0..b {
                    t = upoly::mul(&t, &y, p);
                }
                t
            })
            .collect()
    })
}

fn restrict(h: &[u64], table: &[upoly::Up], p: u64, out: &mut Vec<u64>) {
    out.clear();
    for (&c, t) in h.iter().zip(table) {
        if c == 0 {
            continue;
        }
        if out.len() < t.len() {
            out.resize(t.len(), 0);
        }
        for (o, &v) in out.iter_mut().zip(t) {
            *o = (*o + c * v) % p;
        }
    }
    while out.last() == Some(&0) {
        out.pop();
    }
}

/// Outcome of enumerating plane curves on `Δ²` over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegulatorSweep {
    pub cycles: u64,
    pub failures: u64,
    pub values: BTreeSet<u64>,
}

/// Enumerates every effective divisor `V(h)` on `Δ²` over `F_p` with
/// `deg h ≤ max_degree` (normalized so the leading coefficient is 1) that meets
/// all faces properly, and evaluates the regulator of its boundary through the
/// divisor of `h` on each edge.
pub fn sweep_boundary_regulators(p: u64, max_degree: u32) -> RegulatorSweep {
    let monos = plane_monomials(max_degree);
    let m = monos.len();
    let total = p.pow(m as u32);
    let mut sweep = RegulatorSweep { cycles: 0, failures: 0, values: BTreeSet::new() };
    let tables = edge_tables(&monos, p);
    let mut edges = [Vec::new(), Vec::new(), Vec::new()];
    let mut h = vec![0u64; m];
    for code in 0..total {
        let mut c = code;
        for x in h.iter_mut() {
            *x = c % p;
            c /= p;
        }
        let Some(top) = h.iter().rposition(|&x| x != 0) else { continue };
        if h[top] != 1 || top == 0 {
            continue;
        }
        for (e, t) in edges.iter_mut().zip(&tables) {
            restrict(&h, t, p, e);
        }
        let mut reg = 1u64;
        let mut proper = true;
        for (i, q) in edges.iter().enumerate() {
            if q.is_empty() {
                proper = false;
                break;
            }
            let q0 = upoly::eval(q, 0, p);
            let q1 = upoly::eval(q, 1, p);
            if q0 == 0 || q1 == 0 {
                proper = false;
                break;
            }
            let v = q0 * crate::field::inv_mod_u64(q1, p).unwrap() % p;
            reg = reg * if i % 2 == 0 { v } else { crate::field::inv_mod_u64(v, p).unwrap() } % p;
        }
        if !proper {
            continue;
        }
        sweep.cycles += 1;
        if reg != 1 {
            sweep.failures += 1;
        }
        sweep.values.insert(reg);
    }
    sweep
}

/// Regulator values of all closed points of degree `≤ max_degree` on `Δ¹`
/// over `F_p` that avoid both vertices.
pub fn point_regulator_values(p: u64, max_degree: usize) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for d in 1..=max_degree {
        for code in 0..p.pow(d as u32) {
            let mut g: upoly::Up = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if !upoly::is_irreducible(&g, p) {
                continue;
            }
            let g0 = upoly::eval(&g, 0, p);
            let g1 = upoly::eval(&g, 1, p);
            if g0 == 0 || g1 == 0 {
                continue;
            }
            out.insert(g0 * pow_mod_u64(g1, p - 2, p) % p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn points_on_the_interval() {
        let d1 = AlgebraicSimplex::standard(q(), "t", 1).unwrap();
        let r = d1.ring().clone();
        let pt = |s: &str| {
            let c = Cycle::prime(d1.scheme(), &Ideal::principal(&parse_polynomial(s, &r).unwrap())).unwrap();
            SimplicialCycle::new(&d1, c).unwrap()
        };
        assert!(pt("t1 - 1/2").face_good_position().unwrap());
        assert!(!pt("t1").face_good_position().unwrap());
        assert!(!pt("t1 - 1").face_good_position().unwrap());
        assert!(pt("t1 - 1/2").boundary(None).unwrap().is_zero());
        assert_eq!(weight1_regulator(&pt("t1 - 3")).unwrap(), q().from_i64(3) / q().from_i64(2));
    }

    #[test]
    fn face_maps_of_the_triangle() {
        let d2 = AlgebraicSimplex::standard(q(), "t", 2).unwrap();
        let images: Vec<String> =
            (0..3).map(|i| d2.face_map(i).unwrap().images().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")).collect();
        assert_eq!(images, ["-t1 + 1,t1", "0,t1", "t1,0"]);
        assert_eq!(d2.iterated_faces().len(), 6);
    }

    #[test]
    fn plane_sweep_over_f3() {
        let s = sweep_boundary_regulators(3, 1);
        assert!(s.cycles > 0);
        assert_eq!(s.failures, 0);
        assert_eq!(point_regulator_values(5, 2), [1, 2, 3, 4].into_iter().collect());
    }

    #[test]
    fn eta_prime_boundary() {
        let base_ring = PolyRing::new(q(), &["t", "u"], crate::poly::MonomialOrder::DegRevLex).unwrap();
        let base = AffineScheme::affine_space(&base_ring);
        let d1 = AlgebraicSimplex::new(&base, "s", 1).unwrap();
        let r = d1.ring().clone();
        let curve = |s: &str| Cycle::prime(d1.scheme(), &Ideal::principal(&parse_polynomial(s, &r).unwrap())).unwrap();
        let phi = curve("u*(s1*t + 1 - s1) - 1");
        let psi = curve("s1 + t*(1 - s1) - t*u").neg();
        let eta = SimplicialCycle::new(&d1, phi.add(&psi).unwrap()).unwrap();
        assert!(eta.face_good_position().unwrap());
        let low = d1.lower().unwrap();
        let lr = low.ring().clone();
        let pool: Vec<Ideal> =
            ["u*t - 1", "u - 1", "t"].iter().map(|g| Ideal::principal(&parse_polynomial(g, &lr).unwrap())).collect();
        let b = eta.boundary(Some(&pool)).unwrap();
        assert_eq!(b.cycle().to_string(), "1 * [t]");
        let z = parse_polynomial("s1 + t*(1 - s1) - t*u", &r).unwrap();
        let at = |i: usize| Ideal::principal(&d1.face_map(i).unwrap().pull_poly(&z));
        let want = |g: &str| Ideal::principal(&parse_polynomial(g, &lr).unwrap());
        assert!(at(1).same_as(&want("t*(1 - u)")).unwrap());
        assert!(at(0).same_as(&want("1 - t*u")).unwrap());
    }
}
