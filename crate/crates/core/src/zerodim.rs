//! Zero-dimensional ideals: standard monomials, radicals and the maximal
//! ideals containing them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor::univariate_factor_bounded;
use crate::factor::DEFAULT_DEGREE_BOUND;
use crate::ideal::Ideal;
use std::sync::Arc;

use crate::poly::{mono_divides, Monomial, MonomialOrder, PolyRing, Polynomial};

/// Monomials outside the leading-term ideal, i.e. a basis of `R/I`.
pub fn standard_monomials(i: &Ideal) -> Result<Vec<Monomial>> {
    let gb = i.groebner_basis()?;
    let n = i.ring().nvars();
    let leads: Vec<&Monomial> = gb.iter().map(|g| g.leading_monomial().unwrap()).collect();
    if leads.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return Ok(vec![]);
    }
    let mut bounds = vec![0u32; n];
    for (v, b) in bounds.iter_mut().enumerate() {
        *b = leads
            .iter()
            .filter(|m| m.iter().enumerate().all(|(j, &e)| j == v || e == 0))
            .map(|m| m[v])
            .min()
            .ok_or(Error::PositiveDimensional(i.dimension()?))?;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(v: usize, cur: &mut Monomial, bounds: &[u32], leads: &[&Monomial], out: &mut Vec<Monomial>) {
        if v == cur.len() {
            if !leads.iter().any(|m| mono_divides(m, cur)) {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..bounds[v] {
            cur[v] = e;
            // prune: if already divisible with the remaining exponents zero, larger ones are too
            if leads.iter().any(|m| mono_divides(m, cur) && m[v + 1..].iter().all(|&x| x == 0)) {
                break;
            }
            rec(v + 1, cur, bounds, leads, out);
        }
        cur[v] = 0;
    }
    rec(0, &mut cur, &bounds, &leads, &mut out);
    Ok(out)
}

/// `dim_k R/I` for a zero-dimensional (or unit) ideal.
pub fn quotient_dimension(i: &Ideal) -> Result<usize> {
    Ok(standard_monomials(i)?.len())
}

/// Monic generator of `I ∩ k[x_var]`.
pub fn univariate_in(i: &Ideal, var: usize) -> Result<Polynomial> {
    let ring = i.ring();
    let others: Vec<usize> = (0..ring.nvars()).filter(|&v| v != var).collect();
    let e = i.eliminate(&others)?;
    let gb = e.groebner_basis()?;
    gb.iter()
        .filter(|g| g.uses_only(&[var]))
        .min_by_key(|g| g.total_degree())
        .cloned()
        .map(|g| g.make_monic())
        .ok_or(Error::PositiveDimensional(i.dimension()?))
}

fn squarefree_part(f: &Polynomial, bound: usize) -> Result<Polynomial> {
    let fac = univariate_factor_bounded(f, bound)?;
    let mut acc = Polynomial::one(f.ring());
    for (g, _) in &fac.factors {
        acc = &acc * g;
    }
    Ok(acc)
}

/// Radical of a zero-dimensional ideal: adjoin the squarefree part of the
/// univariate polynomial in each variable.
pub fn radical_zero_dim(i: &Ideal) -> Result<Ideal> {
    radical_with(i, DEFAULT_DEGREE_BOUND)
}

fn radical_with(i: &Ideal, bound: usize) -> Result<Ideal> {
    let dim = i.dimension()?;
    if dim > 0 {
        return Err(Error::PositiveDimensional(dim));
    }
    if dim < 0 {
        return Ok(i.clone());
    }
    let mut gens = i.groebner_basis()?.to_vec();
    for v in 0..i.ring().nvars() {
        gens.push(squarefree_part(&univariate_in(i, v)?, bound)?);
    }
    Ideal::new(i.ring(), gens)?.canonical()
}

/// Maximal ideals containing `I`, canonical and sorted.
pub fn minimal_primes_zero_dim(i: &Ideal) -> Result<Vec<Ideal>> {
    minimal_primes_zero_dim_with(i, DEFAULT_DEGREE_BOUND, 0x9e37)
}

pub fn minimal_primes_zero_dim_with(i: &Ideal, bound: usize, seed: u64) -> Result<Vec<Ideal>> {
    let dim = i.dimension()?;
    if dim > 0 {
        return Err(Error::PositiveDimensional(dim));
    }
    if dim < 0 {
        return Ok(vec![]);
    }
    let rad = radical_with(i, bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    split(&rad, bound, &mut rng, &mut out)?;
    out.sort_by(|a, b| a.gens().cmp(b.gens()));
    Ok(out)
}

/// Test functions: the coordinates, then random linear forms, then random
/// quadratic ones (needed over small fields where no linear form generates
/// the residue field of every point).
fn test_form(ring: &Arc<PolyRing>, attempt: usize, rng: &mut ChaCha8Rng) -> Polynomial {
    let n = ring.nvars();
    if attempt < n {
        return Polynomial::var(ring, n - 1 - attempt);
    }
    let range = match ring.field().characteristic() {
        0 => 10 + attempt as i64,
        p => p.min(1 << 30) as i64,
    };
    let coeff = |rng: &mut ChaCha8Rng| ring.field().from_i64(rng.gen_range(0..range));
    let mut f = Polynomial::zero(ring);
    for v in 0..n {
        f = &f + &Polynomial::var(ring, v).scale(&coeff(rng));
    }
    if attempt >= n + 12 {
        for v in 0..n {
            for w in v..n {
                let m = &Polynomial::var(ring, v) * &Polynomial::var(ring, w);
                f = &f + &m.scale(&coeff(rng));
            }
        }
    }
    f
}

/// Splits a radical zero-dimensional ideal into maximal ideals along the
/// factors of minimal polynomials of test functions.
fn split(rad: &Ideal, bound: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Ideal>) -> Result<()> {
    let ring = rad.ring().clone();
    let n = ring.nvars();
    let total = quotient_dimension(rad)?;
    if total == 0 {
        return Ok(());
    }
    for attempt in 0..(n + 60) {
        let form = test_form(&ring, attempt, rng);
        if form.is_constant() {
            continue;
        }
        let minpoly = minimal_polynomial(rad, &form)?;
        let fac = univariate_factor_bounded(&minpoly, bound)?;
        if fac.factors.len() == 1 {
            if minpoly.total_degree().unwrap_or(0) as usize == total {
                out.push(rad.canonical()?);
                return Ok(());
            }
            continue;
        }
        let mut images: Vec<Polynomial> = (0..n).map(|v| Polynomial::var(&ring, v)).collect();
        images.push(form.clone());
        for (g, _) in &fac.factors {
            let mut gs = rad.groebner_basis()?.to_vec();
            gs.push(g.substitute(&ring, &images));
            split(&Ideal::new(&ring, gs)?, bound, rng, out)?;
        }
        return Ok(());
    }
    Err(Error::ResourceExhausted("no splitting function found".into()))
}

/// Minimal polynomial of `form` in `R/I`, as a polynomial in a fresh last variable.
fn minimal_polynomial(i: &Ideal, form: &Polynomial) -> Result<Polynomial> {
    let ring = i.ring();
    let n = ring.nvars();
    let mut names: Vec<String> = ring.vars().to_vec();
    let mut tname = "_T".to_string();
    while names.contains(&tname) {
        tname.push('_');
    }
    names.push(tname);
    let er = PolyRing::new(ring.field(), &names, MonomialOrder::DegRevLex)?;
    let embed: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Polynomial> = i.gens().iter().map(|g| g.map_vars(&er, &embed)).collect();
    let t = Polynomial::var(&er, n);
    gens.push(&t - &form.map_vars(&er, &embed));
    univariate_in(&Ideal::new(&er, gens)?, n)
}

/// Whether `m` is a maximal ideal: zero-dimensional, radical and with a single
/// minimal prime.
pub fn is_maximal(m: &Ideal) -> Result<bool> {
    if m.dimension()? != 0 {
        return Ok(false);
    }
    let primes = minimal_primes_zero_dim(m)?;
    Ok(primes.len() == 1 && primes[0].same_as(m)?)
}

pub fn residue_degree(m: &Ideal) -> Result<usize> {
    quotient_dimension(m)
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

    fn shown(ps: &[Ideal]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn spec_examples() {
        let r2 = ring(&["x", "y"]);
        assert_eq!(shown(&minimal_primes_zero_dim(&ideal(&r2, &["x", "y"])).unwrap()), vec!["(y, x)"]);
        let r1 = ring(&["x"]);
        assert_eq!(shown(&minimal_primes_zero_dim(&ideal(&r1, &["x^2-1"])).unwrap()), vec!["(x - 1)", "(x + 1)"]);
        assert_eq!(shown(&minimal_primes_zero_dim(&ideal(&r1, &["x^2+1"])).unwrap()), vec!["(x^2 + 1)"]);
    }

    #[test]
    fn positive_dimensional_rejected() {
        let r2 = ring(&["x", "y"]);
        assert_eq!(minimal_primes_zero_dim(&ideal(&r2, &["x"])).unwrap_err(), Error::PositiveDimensional(1));
    }

    #[test]
    fn non_separating_coordinates() {
        // four points (±1, ±1): neither coordinate separates them
        let r2 = ring(&["x", "y"]);
        let ps = minimal_primes_zero_dim(&ideal(&r2, &["x^2-1", "y^2-1"])).unwrap();
        assert_eq!(ps.len(), 4);
        for p in &ps {
            assert_eq!(quotient_dimension(p).unwrap(), 1);
        }
        // a conjugate pair over Q(i) plus a rational point, with multiplicity
        let ps = minimal_primes_zero_dim(&ideal(&r2, &["(x^2+1)*(x-2)^2", "y - x"])).unwrap();
        assert_eq!(shown(&ps), vec!["(y - 2, x - 2)", "(x - y, y^2 + 1)"]);
    }

    #[test]
    fn conjugate_points_over_f2() {
        // both coordinates generate F_4, and no linear form separates the four points
        let r = PolyRing::new(FieldSpec::Prime(2), &["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let ps = minimal_primes_zero_dim(&ideal(&r, &["x^2+x+1", "y^2+y+1"])).unwrap();
        assert_eq!(ps.len(), 2);
        for p in &ps {
            assert_eq!(quotient_dimension(p).unwrap(), 2);
            assert!(is_maximal(p).unwrap());
        }
    }

    #[test]
    fn maximality() {
        let r2 = ring(&["x", "y"]);
        assert!(is_maximal(&ideal(&r2, &["x", "y^2+1"])).unwrap());
        assert!(!is_maximal(&ideal(&r2, &["x", "y^2"])).unwrap());
        assert!(!is_maximal(&ideal(&r2, &["x", "y^2-1"])).unwrap());
        assert!(!is_maximal(&ideal(&r2, &["x"])).unwrap());
    }

    #[test]
    fn standard_monomial_count() {
        let r2 = ring(&["x", "y"]);
        assert_eq!(quotient_dimension(&ideal(&r2, &["y - x^2", "y"])).unwrap(), 2);
        assert_eq!(quotient_dimension(&ideal(&r2, &["x^2", "x*y", "y^2"])).unwrap(), 3);
    }
}
