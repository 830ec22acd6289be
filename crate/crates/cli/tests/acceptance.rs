//! The acceptance suite: eleven criteria, each with a time limit, reported one
//! line apiece. The test fails if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use cyclecalc::cycle::{
    cycle_of_ideal, euler_cycle, graph_pullback, intersection_product_on, serre_multiplicity, AffineScheme, Cycle,
    SchemeMorphism,
};
use cyclecalc::module::tor_lengths_at;
use cyclecalc::zerodim::quotient_dimension;
use cyclecalc::{parse_polynomial, FieldSpec, Ideal, MonomialOrder, PolyRing};
use num_rational::BigRational;
use num_traits::Zero;

fn qring(vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(FieldSpec::Rationals, vars, MonomialOrder::DegRevLex).unwrap()
}

fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect()).unwrap()
}

fn prime(x: &Arc<AffineScheme>, gens: &[&str]) -> Cycle {
    Cycle::prime(x, &ideal(x.ring(), gens)).unwrap()
}

// ---------------------------------------------------------------------------
// exact linear algebra for the oracles

fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        let prow = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let k = &row[c] / &pivot;
            for (x, y) in row.iter_mut().zip(&prow) {
                *x -= &k * y;
            }
        }
        r += 1;
    }
    r
}

/// Monomials of degree `d` in `n` variables outside the monomial ideal.
fn standard_monomials(n: usize, d: u32, ideal: &[Vec<u32>]) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n - 1 {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=d).rev() {
            cur.push(e);
            rec(n, d - e, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(n, d, &mut Vec::new(), &mut all);
    all.retain(|m| !ideal.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b)));
    all
}

/// Matrix of multiplication by a linear form from `(R/I)_d` to `(R/I)_{d+1}`,
/// one row per source monomial.
fn linear_mult(form: &[i64], src: &[Vec<u32>], dst: &[Vec<u32>]) -> Vec<Vec<BigRational>> {
    src.iter()
        .map(|m| {
            let mut row = vec![BigRational::zero(); dst.len()];
            for (v, &c) in form.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut t = m.clone();
                t[v] += 1;
                if let Some(k) = dst.iter().position(|s| *s == t) {
                    row[k] += BigRational::from_integer(c.into());
                }
            }
            row
        })
        .collect()
}

/// Lengths of `Tor_i(R/I, R/(l_1, l_2))` for a monomial ideal `I` and linear
/// forms `l_1, l_2` meeting in the origin only, from the graded Koszul complex
/// `0 → (R/I)(-2) → (R/I)(-1)^2 → R/I → 0` summed over degrees.
fn koszul_tor_lengths(n: usize, mono_ideal: &[Vec<u32>], l1: &[i64], l2: &[i64], max_deg: u32) -> [i64; 3] {
    let basis: Vec<Vec<Vec<u32>>> = (0..=max_deg).map(|d| standard_monomials(n, d, mono_ideal)).collect();
    let dim = |d: i64| if d < 0 { 0 } else { basis[d as usize].len() };
    let mut tor = [0i64; 3];
    for d in 0..=max_deg as i64 {
        // d1: (R/I)_{d-1}^2 → (R/I)_d ; d2: (R/I)_{d-2} → (R/I)_{d-1}^2
        let r1 = if d >= 1 {
            let mut rows = linear_mult(l1, &basis[d as usize - 1], &basis[d as usize]);
            rows.extend(linear_mult(l2, &basis[d as usize - 1], &basis[d as usize]));
            rank(rows)
        } else {
            0
        };
        let r2 = if d >= 2 {
            let a = linear_mult(l2, &basis[d as usize - 2], &basis[d as usize - 1]);
            let b = linear_mult(l1, &basis[d as usize - 2], &basis[d as usize - 1]);
            let rows: Vec<Vec<BigRational>> =
                a.into_iter().zip(b).map(|(x, y)| x.into_iter().map(|v| -v).chain(y).collect()).collect();
            rank(rows)
        } else {
            0
        };
        let h0 = dim(d) as i64 - r1 as i64;
        let h1 = 2 * dim(d - 1) as i64 - r1 as i64 - r2 as i64;
        let h2 = dim(d - 2) as i64 - r2 as i64;
        if d + 1 >= max_deg as i64 {
            assert_eq!((h0, h1, h2), (0, 0, 0), "homology in degree {d} should vanish");
        }
        tor[0] += h0;
        tor[1] += h1;
        tor[2] += h2;
    }
    tor
}

// ---------------------------------------------------------------------------
// criteria

fn serre_two_planes() -> String {
    let r = qring(&["x", "y", "z", "w"]);
    let a4 = AffineScheme::affine_space(&r);
    let planes = ideal(&r, &["x*z", "x*w", "y*z", "y*w"]);
    let diagonal = ideal(&r, &["x - z", "y - w"]);
    let origin = ideal(&r, &["x", "y", "z", "w"]);
    let mono: Vec<Vec<u32>> = vec![vec![1, 0, 1, 0], vec![1, 0, 0, 1], vec![0, 1, 1, 0], vec![0, 1, 0, 1]];
    let tor = koszul_tor_lengths(4, &mono, &[1, 0, -1, 0], &[0, 1, 0, -1], 6);
    let oracle_chi = tor[0] - tor[1] + tor[2];
    assert_eq!((tor, oracle_chi), ([3, 1, 0], 2));
    let e = serre_multiplicity(&a4, &planes, &diagonal, &origin).unwrap();
    let naive = quotient_dimension(&planes.add(&diagonal).unwrap()).unwrap();
    assert_eq!(e, oracle_chi);
    assert_eq!(naive as i64, tor[0]);
    assert_eq!(tor_lengths_at(&planes, &diagonal, &origin, None).unwrap(), vec![3, 1]);
    format!("multiplicity {e}, naive length {naive}")
}

fn tor_formula_suite() -> String {
    struct Case {
        vars: &'static [&'static str],
        left: &'static [&'static str],
        right: &'static [&'static str],
        pool: &'static [&'static [&'static str]],
        tor1: bool,
    }
    let cases = [
        Case { vars: &["x", "y"], left: &["x"], right: &["y"], pool: &[], tor1: false },
        Case { vars: &["x", "y"], left: &["y - x^2"], right: &["y"], pool: &[], tor1: false },
        Case { vars: &["x", "y"], left: &["y - x^2"], right: &["y - 1"], pool: &[], tor1: false },
        Case { vars: &["x", "y"], left: &["x^2", "x*y"], right: &["y"], pool: &[&["x"]], tor1: true },
        Case { vars: &["x", "y", "z"], left: &["x", "y"], right: &["z - x - y - 1"], pool: &[], tor1: false },
        Case { vars: &["x", "y", "z", "w"], left: &["x*z", "x*w", "y*z", "y*w"], right: &["x - z", "y - w"], pool: &[&["x", "y"], &["z", "w"]], tor1: true },
    ];
    let mut tor1_seen = 0;
    for c in &cases {
        let r = qring(c.vars);
        let x = AffineScheme::affine_space(&r);
        let (i, j) = (ideal(&r, c.left), ideal(&r, c.right));
        let mut pool: Vec<Ideal> = c.pool.iter().map(|g| ideal(&r, g)).collect();
        pool.extend([i.clone(), j.clone()]);
        let ci = cycle_of_ideal(&x, &i, r.nvars() - i.dimension().unwrap() as usize, Some(&pool)).unwrap();
        let cj = cycle_of_ideal(&x, &j, r.nvars() - j.dimension().unwrap() as usize, Some(&pool)).unwrap();
        let n = ci.codim() + cj.codim();
        let prod = intersection_product_on(&ci, &cj, None).unwrap();
        let euler = euler_cycle(&x, &i, &j, n, None).unwrap();
        assert_eq!(euler, prod, "{:?} · {:?}", c.left, c.right);
        let support = i.add(&j).unwrap();
        let has_tor1 = cyclecalc::zerodim::minimal_primes_zero_dim(&support)
            .unwrap()
            .iter()
            .any(|p| tor_lengths_at(&i, &j, p, None).unwrap().get(1).is_some_and(|&l| l > 0));
        assert_eq!(has_tor1, c.tor1, "{:?} · {:?}", c.left, c.right);
        tor1_seen += has_tor1 as usize;
    }
    format!("{} instances, {tor1_seen} with Tor_1 ≠ 0", cases.len())
}

fn associativity_suite() -> String {
    let mut count = 0;
    let r = qring(&["x", "y", "z"]);
    let a3 = AffineScheme::affine_space(&r);
    let triples: [[&str; 3]; 8] = [
        ["z - x^2", "z - y^2", "z - 1"],
        ["x", "y", "z"],
        ["x + y + z", "x - y", "z - x^2"],
        ["z - x*y", "x - 1", "y + z"],
        ["z - x^2 - y^2", "x - y", "z - 2"],
        ["x*y - 1", "z - x", "y - z^2"],
        ["z^2 - x", "y - x", "z - y - 2"],
        ["x^2 - y", "y^2 - z", "x - z - 1"],
    ];
    let factors: Vec<Ideal> = [
        ["z - x^2", "x - y"],
        ["z - x^2", "x + y"],
        ["z - 1", "x - 1"],
        ["z - 1", "x + 1"],
        ["z - 1", "y - 1"],
        ["z - 1", "y + 1"],
        ["z - 2", "x^2 + y^2 - 2"],
    ]
    .iter()
    .map(|g| ideal(&r, g))
    .collect();
    for t in &triples {
        let cs: Vec<Cycle> = t.iter().map(|g| prime(&a3, &[g])).collect();
        let mut pool = factors.clone();
        for i in 0..3 {
            for j in i + 1..3 {
                pool.push(ideal(&r, &[t[i], t[j]]));
            }
        }
        let left = intersection_product_on(&intersection_product_on(&cs[0], &cs[1], Some(&pool)).unwrap(), &cs[2], None).unwrap();
        let right = intersection_product_on(&cs[0], &intersection_product_on(&cs[1], &cs[2], Some(&pool)).unwrap(), None).unwrap();
        assert_eq!(left, right, "{t:?}");
        assert!(!left.is_zero());
        count += 1;
    }
    // in the plane, with the fundamental class and non-prime cycles
    let r2 = qring(&["x", "y"]);
    let a2 = AffineScheme::affine_space(&r2);
    let whole = Cycle::prime(&a2, &Ideal::zero(&r2)).unwrap();
    let parabola = prime(&a2, &["y - x^2"]);
    let axis = prime(&a2, &["y"]);
    let pair = prime(&a2, &["x - 1"]).add(&prime(&a2, &["x + 1"]).scale(2)).unwrap();
    let pool = vec![ideal(&r2, &["y - x^2"]), ideal(&r2, &["y"]), ideal(&r2, &["x - 1"]), ideal(&r2, &["x + 1"])];
    let plane_triples = [(&whole, &parabola, &axis), (&parabola, &whole, &axis), (&pair, &axis, &whole), (&parabola, &pair, &whole)];
    for (a, b, c) in plane_triples {
        let left = intersection_product_on(&intersection_product_on(a, b, Some(&pool)).unwrap(), c, Some(&pool)).unwrap();
        let right = intersection_product_on(a, &intersection_product_on(b, c, Some(&pool)).unwrap(), Some(&pool)).unwrap();
        assert_eq!(left, right);
        assert!(!left.is_zero());
        count += 1;
    }
    format!("{count} triples")
}

fn functoriality_suite() -> String {
    let r = qring(&["x", "y"]);
    let a2 = AffineScheme::affine_space(&r);
    let map = |imgs: [&str; 2]| SchemeMorphism::new(&a2, &a2, imgs.iter().map(|s| parse_polynomial(s, &r).unwrap()).collect()).unwrap();
    type Pair = ([&'static str; 2], [&'static str; 2], &'static [&'static str], &'static [&'static [&'static str]]);
    let pairs: [Pair; 6] = [
        (["x + y", "y"], ["x^2", "y"], &["x - 1", "y - 2"], &[]),
        (["x*y", "y"], ["x", "y^2 + x"], &["x - 2", "y - 3"], &[]),
        (["x", "x + y^2"], ["x^2 - y", "y"], &["x + 1", "y - 4"], &[]),
        (["x + y", "y"], ["x^2", "y"], &["x - 1"], &[&["x - 1"], &["x + 1"], &["x + y - 1"], &["x + y + 1"]]),
        (["x - y^2", "y"], ["x^2", "y"], &["x"], &[&["x"], &["x - y^2"]]),
        (["y", "x"], ["x + y^2", "y - 1"], &["x - 5", "y - 1"], &[]),
    ];
    for (f, g, c, pool) in &pairs {
        let (f, g) = (map(*f), map(*g));
        let pool: Vec<Ideal> = pool.iter().map(|p| ideal(&r, p)).collect();
        let cycle = prime(&a2, c);
        let gf = g.after(&f).unwrap();
        let lhs = graph_pullback(&gf, &cycle, Some(&pool)).unwrap();
        let rhs = graph_pullback(&f, &graph_pullback(&g, &cycle, Some(&pool)).unwrap(), Some(&pool)).unwrap();
        assert_eq!(lhs, rhs, "{cycle}");
        assert!(!lhs.is_zero());
    }
    format!("{} pairs", pairs.len())
}

fn affine_bezout() -> String {
    let r = qring(&["x", "y"]);
    let a2 = AffineScheme::affine_space(&r);
    type Case = (&'static str, &'static str, u32, u32, &'static [&'static str]);
    let cases: [Case; 3] = [
        ("x^2 + y^2 - 5", "x*y - 2", 2, 2, &[]),
        ("x^2 + y^2 - 5", "(x + y - 3)*(x*y - 2)", 2, 3, &["x + y - 3", "x*y - 2"]),
        ("x*(x^2 - 2)", "y^3 - y", 3, 3, &["x", "x^2 - 2", "y", "y - 1", "y + 1"]),
    ];
    let mut out = Vec::new();
    for (f, g, df, dg, pool) in cases {
        let pool: Vec<Ideal> = pool.iter().chain([&f, &g]).map(|p| ideal(&r, &[p])).collect();
        let cf = cycle_of_ideal(&a2, &ideal(&r, &[f]), 1, Some(&pool)).unwrap();
        let cg = cycle_of_ideal(&a2, &ideal(&r, &[g]), 1, Some(&pool)).unwrap();
        let prod = intersection_product_on(&cf, &cg, None).unwrap();
        for (p, _) in prod.terms() {
            let deg = Cycle::prime(&a2, p.ideal()).unwrap().degree().unwrap();
            assert!(deg <= 2, "point {p} has degree {deg}");
        }
        assert_eq!(prod.degree().unwrap(), (df * dg) as i64, "{f} · {g}");
        out.push(format!("({df},{dg})"));
    }
    format!("degrees {}", out.join(" "))
}

// ---------------------------------------------------------------------------

#[path = "acceptance/more.rs"]
mod more;

use more::*;

#[test]
fn acceptance() {
    type Criterion = (&'static str, u64, fn() -> String);
    let criteria: [Criterion; 11] = [
        ("1. Serre two planes", 10, serre_two_planes),
        ("2. Tor formula suite", 30, tor_formula_suite),
        ("3. associativity suite", 60, associativity_suite),
        ("4. functoriality suite", 60, functoriality_suite),
        ("5. affine Bezout", 30, affine_bezout),
        ("6. Bloch differential", 30, bloch_differential),
        ("7. weight-one regulator", 120, weight_one_regulator),
        ("8. symbol maps", 60, symbol_maps),
        ("9. Cartier", 60, cartier),
        ("10. E_n combinatorics", 60, en_combinatorics),
        ("11. CLI determinism", 30, cli_determinism),
    ];
    let mut failures = Vec::new();
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let took = start.elapsed();
        let line = match outcome {
            Ok(detail) if took <= Duration::from_secs(limit) => format!("PASS {name}: {detail} ({:.2}s, limit {limit}s)", took.as_secs_f64()),
            Ok(detail) => format!("FAIL {name}: {detail} but took {:.2}s, limit {limit}s", took.as_secs_f64()),
            Err(e) => {
                let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default();
                format!("FAIL {name}: {msg}")
            }
        };
        println!("{line}");
        if line.starts_with("FAIL") {
            failures.push(line);
        }
    }
    assert!(failures.is_empty(), "{} criteria failed", failures.len());
}
