//! Milnor symbol sums over a truncated local algebra, reduced by
//! multilinearity and `{x, -x} = 0`, with the residue maps `b` and `φ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::forms::{dlog, DifferentialForm};
use crate::local::{LfPoly, LocalAlgebra};
use crate::poly::Monomial;

/// One slot of a reduced symbol.
#[derive(Debug, Clone)]
pub enum SymbolEntry {
    Pi,
    Unit(LfPoly),
}

type EntryKey = Option<Vec<(Monomial, Vec<BigInt>)>>;

/// `Σ c_k {x_{k,1}, ..., x_{k,r}}` with coefficients in `Z/p`.
#[derive(Debug, Clone)]
pub struct SymbolSum {
    alg: Arc<LocalAlgebra>,
    weight: usize,
    terms: Vec<(i64, Vec<LfPoly>)>,
}

impl SymbolSum {
    pub fn new(alg: &Arc<LocalAlgebra>, weight: usize) -> Self {
        SymbolSum { alg: alg.clone(), weight, terms: vec![] }
    }

    pub fn symbol(alg: &Arc<LocalAlgebra>, entries: Vec<LfPoly>) -> Self {
        SymbolSum { alg: alg.clone(), weight: entries.len(), terms: vec![(1, entries)] }
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra> {
        &self.alg
    }

    pub fn push(&mut self, coeff: i64, entries: Vec<LfPoly>) -> Result<()> {
        if entries.len() != self.weight {
            return Err(Error::invalid(format!("symbol of weight {} in a sum of weight {}", entries.len(), self.weight)));
        }
        self.terms.push((coeff, entries));
        Ok(())
    }

    pub fn add(&self, other: &SymbolSum) -> Result<SymbolSum> {
        if self.weight != other.weight {
            return Err(Error::invalid("adding symbols of different weight"));
        }
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> SymbolSum {
        SymbolSum { terms: self.terms.iter().map(|(c, e)| (c * k, e.clone())).collect(), ..self.clone() }
    }

    /// Concatenation `{x_1, ..., x_r, y_1, ..., y_s}`, bilinear over terms.
    pub fn concat(&self, other: &SymbolSum) -> SymbolSum {
        let mut terms = Vec::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                terms.push((a * b, x.iter().chain(y).cloned().collect()));
            }
        }
        SymbolSum { alg: self.alg.clone(), weight: self.weight + other.weight, terms }
    }
}

/// A symbol sum in normal form: every entry is `π` or a unit, at most one `π`
/// per term and then in the last slot, coefficients in `1..p`, terms sorted.
#[derive(Clone)]
pub struct ReducedSymbol {
    alg: Arc<LocalAlgebra>,
    weight: usize,
    terms: Vec<(u64, Vec<SymbolEntry>)>,
}

impl ReducedSymbol {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(u64, Vec<SymbolEntry>)] {
        &self.terms
    }

    pub fn weight(&self) -> usize {
        self.weight
    }
}

impl fmt::Debug for ReducedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ReducedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, es)| {
                let inner: Vec<String> = es
                    .iter()
                    .map(|e| match e {
                        SymbolEntry::Pi => "pi".to_string(),
                        SymbolEntry::Unit(u) => self.alg.format(u),
                    })
                    .collect();
                format!("{c}*{{{}}}", inner.join(", "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn entry_key(alg: &LocalAlgebra, e: &SymbolEntry, prec: i64) -> EntryKey {
    match e {
        SymbolEntry::Pi => None,
        SymbolEntry::Unit(u) => Some(alg.key(u, prec)),
    }
}

/// Whether the unit entry makes its term vanish modulo `p`: it is `1`, or a
/// 1-unit deep enough to be a `p`-th power.
fn kills_term(alg: &LocalAlgebra, u: &LfPoly) -> Result<bool> {
    if alg.is_signed_one(u) {
        return Ok(true);
    }
    Ok(alg.pth_root(u)?.is_some())
}

/// Rewrites into normal form using multilinearity, alternation and
/// `{π, π} = {-1, π}`, all consequences of `{x, -x} = 0`.
pub fn symbol_reduce(s: &SymbolSum) -> Result<ReducedSymbol> {
    symbol_reduce_with_budget(s, DEFAULT_STEP_BUDGET)
}

pub const DEFAULT_STEP_BUDGET: u64 = 1 << 20;

/// [`symbol_reduce`] failing with `ResourceExhausted` once more than `budget`
/// expanded terms have been produced.
pub fn symbol_reduce_with_budget(s: &SymbolSum, budget: u64) -> Result<ReducedSymbol> {
    let alg = &s.alg;
    let mut steps = 0u64;
    let p = alg.field().p() as i64;
    let mut acc: BTreeMap<Vec<EntryKey>, (i64, Vec<SymbolEntry>)> = BTreeMap::new();
    let mut live: Vec<(i64, Vec<SymbolEntry>)> = Vec::new();
    for (coeff, entries) in &s.terms {
        let mut expanded: Vec<(i64, Vec<SymbolEntry>)> = vec![(*coeff, vec![])];
        for x in entries {
            let v = alg.valuation(x).ok_or_else(|| Error::Precision(format!("entry {} vanishes at the working precision", alg.format(x))))?;
            let mut u = x.clone();
            for _ in 0..v {
                u = alg.div_pi(&u)?;
            }
            if alg.residue_algebra().inverse(&alg.reduce(&u)).is_err() {
                return Err(Error::NonUnit(alg.format(&u)));
            }
            let mut next = Vec::new();
            steps += expanded.len() as u64 * if v > 0 { 2 } else { 1 };
            if steps > budget {
                return Err(Error::ResourceExhausted(format!("symbol rewriting exceeded {budget} steps")));
            }
            for (c, es) in &expanded {
                let mut with_u = es.clone();
                with_u.push(SymbolEntry::Unit(u.clone()));
                next.push((*c, with_u));
                if v > 0 {
                    let mut with_pi = es.clone();
                    with_pi.push(SymbolEntry::Pi);
                    next.push((c * v, with_pi));
                }
            }
            expanded = next;
        }
        for (c, es) in expanded {
            let (c, es) = normalize_pi(alg, c, es);
            let mut dead = false;
            for e in &es {
                if let SymbolEntry::Unit(u) = e {
                    if kills_term(alg, u)? {
                        dead = true;
                        break;
                    }
                }
            }
            if !dead {
                live.push((c, es));
            }
        }
    }
    let prec = live
        .iter()
        .flat_map(|(_, es)| es.iter())
        .filter_map(|e| if let SymbolEntry::Unit(u) = e { Some(alg.precision(u)) } else { None })
        .min()
        .unwrap_or(alg.field().precision());
    for (c, es) in live {
        let key: Vec<EntryKey> = es.iter().map(|e| entry_key(alg, e, prec)).collect();
        let slot = acc.entry(key).or_insert((0, es));
        slot.0 = (slot.0 + c).rem_euclid(p);
    }
    let terms = acc.into_values().filter(|(c, _)| *c != 0).map(|(c, es)| (c as u64, es)).collect();
    Ok(ReducedSymbol { alg: alg.clone(), weight: s.weight, terms })
}

/// Moves every `π` to the end with the alternating sign and replaces
/// `{..., π, π}` by `{..., -1, π}` until at most one `π` remains.
fn normalize_pi(alg: &LocalAlgebra, mut c: i64, mut es: Vec<SymbolEntry>) -> (i64, Vec<SymbolEntry>) {
    loop {
        let n = es.len();
        for i in (0..n).rev() {
            if matches!(es[i], SymbolEntry::Pi) {
                let mut j = i;
                while j + 1 < n && !matches!(es[j + 1], SymbolEntry::Pi) {
                    es.swap(j, j + 1);
                    c = -c;
                    j += 1;
                }
            }
        }
        let pis = es.iter().filter(|e| matches!(e, SymbolEntry::Pi)).count();
        if pis <= 1 {
            return (c, es);
        }
        es[n - 2] = SymbolEntry::Unit(alg.neg(&alg.one()));
    }
}

/// `b`: units-only symbols go to 0, `{u_1, ..., u_{r-1}, π}` to
/// `dlog ū_1 ∧ ... ∧ dlog ū_{r-1}`.
pub fn residue_b(s: &SymbolSum) -> Result<DifferentialForm> {
    let red = symbol_reduce(s)?;
    let ra = s.alg.residue_algebra();
    let mut out = DifferentialForm::zero(ra, s.weight.saturating_sub(1));
    for (c, es) in &red.terms {
        if !matches!(es.last(), Some(SymbolEntry::Pi)) {
            continue;
        }
        out = out.add(&wedge_dlogs(&s.alg, &es[..es.len() - 1])?.scale(&ra.field().from_i64(*c as i64)));
    }
    Ok(out)
}

/// `φ`: `{u_1, ..., u_r}` to `dlog ū_1 ∧ ... ∧ dlog ū_r`, anything with `π` to 0.
pub fn coresidue_phi(s: &SymbolSum) -> Result<DifferentialForm> {
    let red = symbol_reduce(s)?;
    let ra = s.alg.residue_algebra();
    let mut out = DifferentialForm::zero(ra, s.weight);
    for (c, es) in &red.terms {
        if es.iter().any(|e| matches!(e, SymbolEntry::Pi)) {
            continue;
        }
        out = out.add(&wedge_dlogs(&s.alg, es)?.scale(&ra.field().from_i64(*c as i64)));
    }
    Ok(out)
}

fn wedge_dlogs(alg: &LocalAlgebra, es: &[SymbolEntry]) -> Result<DifferentialForm> {
    let ra = alg.residue_algebra();
    let mut w = DifferentialForm::function(ra, ra.from_i64(1));
    for e in es {
        let SymbolEntry::Unit(u) = e else { return Err(Error::invalid("unexpected π")) };
        w = w.wedge(&dlog(ra, &alg.reduce(u))?);
    }
    Ok(w)
}

/// A lower bound for the `U^m` filtration level: the minimum over terms of
/// the deepest 1-unit among the entries (alternation moves it to the front).
/// Terms containing `π` give 0; the zero symbol gives the working precision.
pub fn u_filtration_level(s: &SymbolSum) -> Result<i64> {
    let red = symbol_reduce(s)?;
    let alg = &s.alg;
    let mut level = alg.field().precision();
    for (_, es) in &red.terms {
        let mut best = 0;
        for e in es {
            match e {
                SymbolEntry::Pi => {
                    best = 0;
                    break;
                }
                SymbolEntry::Unit(u) => best = best.max(alg.one_unit_level(u)),
            }
        }
        level = level.min(best);
    }
    Ok(level)
}
