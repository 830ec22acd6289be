//! Inputs shared by the benchmarks.

use std::sync::Arc;

use cyclecalc::cycle::AffineScheme;
use cyclecalc::forms::{FiniteField, FpAlgebra};
use cyclecalc::local::{LocalAlgebra, LocalField};
use cyclecalc::symbols::SymbolSum;
use cyclecalc::{parse_polynomial, FieldSpec, Ideal, MonomialOrder, PolyRing};

pub fn ring(vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(FieldSpec::Rationals, vars, MonomialOrder::DegRevLex).unwrap()
}

pub fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect()).unwrap()
}

/// Two planes in `A^4` meeting the diagonal at the origin.
pub fn two_planes() -> (Arc<AffineScheme>, Ideal, Ideal, Ideal) {
    let r = ring(&["x", "y", "z", "w"]);
    let x = AffineScheme::affine_space(&r);
    (x, ideal(&r, &["x*z", "x*w", "y*z", "y*w"]), ideal(&r, &["x - z", "y - w"]), ideal(&r, &["x", "y", "z", "w"]))
}

/// A weight-3 symbol over `Z_5[x, y]` with `x, y, 1 - xy` inverted.
pub fn sample_symbol() -> SymbolSum {
    let fp = FiniteField::prime(5).unwrap();
    let plain = FpAlgebra::polynomial(&fp, &["x", "y"]).unwrap();
    let inv = vec![plain.var_poly(0), plain.var_poly(1), plain.poly(&[(vec![0, 0], 1), (vec![1, 1], -1)])];
    let ra = FpAlgebra::new(&fp, &["x", "y"], inv).unwrap();
    let alg = LocalAlgebra::new(&LocalField::unramified(&fp, 20).unwrap(), &ra).unwrap();
    let qr = ring(&["x", "y", "pi"]);
    let lf = |s: &str| alg.from_polynomial(&parse_polynomial(s, &qr).unwrap(), "pi", None).unwrap();
    SymbolSum::symbol(&alg, vec![lf("pi^2*x*(1 - x*y)"), lf("pi*y^2"), lf("(1 + 5*x)*pi^3")])
}
