//! Binding resolution and command dispatch.

use std::collections::BTreeMap;
use std::sync::Arc;

use cyclecalc::bloch::{point_regulator_values, sweep_boundary_regulators};
use cyclecalc::cycle::{
    cycle_of_ideal, euler_cycle, graph_pullback, intersection_product_on, serre_multiplicity, AffineScheme, Cycle,
    SchemeMorphism,
};
use cyclecalc::en::{build_en, nerve_homology};
use cyclecalc::forms::{bz_slice, cartier_inverse, dlog, AlgElem, DifferentialForm, FiniteField, FpAlgebra};
use cyclecalc::local::{LocalAlgebra, LocalField, Ramification};
use cyclecalc::snf::AbelianGroup;
use cyclecalc::symbols::{coresidue_phi, residue_b, symbol_reduce_with_budget, u_filtration_level, SymbolSum};
use cyclecalc::{parse_polynomial, Error, FieldSpec, Ideal, MonomialOrder, PolyRing, Polynomial};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::script::{CommandDecl, JobScript};

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub fail_fast: bool,
    pub seed: u64,
    pub step_budget: u64,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { fail_fast: false, seed: 0, step_budget: cyclecalc::symbols::DEFAULT_STEP_BUDGET, timing: false }
    }
}

/// Outcome of one command. `payload` is present iff `status` is `ok`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub index: usize,
    pub command: String,
    pub status: String,
    pub payload: Option<Value>,
    pub message: Option<String>,
    pub millis: Option<u128>,
}

impl ResultRecord {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("index".into(), json!(self.index));
        m.insert("command".into(), json!(self.command));
        m.insert("status".into(), json!(self.status));
        if let Some(p) = &self.payload {
            m.insert("payload".into(), p.clone());
        }
        if let Some(msg) = &self.message {
            m.insert("message".into(), json!(msg));
        }
        if let Some(t) = self.millis {
            m.insert("millis".into(), json!(t));
        }
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let body = match (&self.payload, &self.message) {
            (Some(Value::String(s)), _) => s.clone(),
            (Some(p), _) => p.to_string(),
            (None, Some(m)) if *m != self.status => m.clone(),
            (None, _) => String::new(),
        };
        let mut line = format!("[{}] {}: {}", self.index, self.command, self.status);
        if !body.is_empty() {
            line.push(' ');
            line.push_str(&body);
        }
        if let Some(t) = self.millis {
            line.push_str(&format!(" ({t} ms)"));
        }
        line
    }
}

/// A script whose names all resolve.
pub struct Job {
    pub script: JobScript,
    ring: Arc<PolyRing>,
    space: Arc<AffineScheme>,
    ideals: BTreeMap<String, Ideal>,
    cycles: BTreeMap<String, Cycle>,
}

fn parse_field(text: &str) -> Result<FieldSpec, Error> {
    let t = text.trim();
    if matches!(t, "Q" | "QQ") {
        return Ok(FieldSpec::Rationals);
    }
    let digits = t
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| t.strip_prefix("F_"))
        .or_else(|| t.strip_prefix('F'))
        .ok_or_else(|| Error::Invalid(format!("unknown field {t}")))?;
    let p: u64 = digits.parse().map_err(|_| Error::Invalid(format!("unknown field {t}")))?;
    FieldSpec::prime(p)
}

fn parse_order(text: &str) -> Result<MonomialOrder, Error> {
    match text.trim() {
        "lex" => Ok(MonomialOrder::Lex),
        "degrevlex" | "grevlex" => Ok(MonomialOrder::DegRevLex),
        t => t
            .strip_prefix("block(")
            .and_then(|s| s.strip_suffix(')'))
            .and_then(|k| k.parse().ok())
            .map(MonomialOrder::Block)
            .ok_or_else(|| Error::Invalid(format!("unknown order {t}"))),
    }
}

const OPS: &[(&str, &[&str], &[&str])] = &[
    // (op, required args, optional args)
    ("groebner", &["ideal"], &[]),
    ("dimension", &["ideal"], &[]),
    ("intersect", &["left", "right"], &[]),
    ("cycle", &["ideal"], &["codim", "candidates"]),
    ("intersection_product", &["left", "right"], &["candidates"]),
    ("euler_cycle", &["left", "right"], &["codim", "candidates"]),
    ("serre_multiplicity", &["left", "right", "point"], &[]),
    ("pullback", &["images", "cycle"], &["candidates"]),
    ("dlog", &["poly"], &[]),
    ("d", &["form"], &[]),
    ("cartier_inverse", &["form"], &[]),
    ("bz_slice", &["degree", "bound"], &[]),
    ("symbol_reduce", &["symbol"], &[]),
    ("residue_b", &["symbol"], &[]),
    ("coresidue_phi", &["symbol"], &[]),
    ("filtration_level", &["symbol"], &[]),
    ("en_objects", &["n"], &[]),
    ("nerve_homology", &["n", "dim"], &["fiber"]),
    ("regulator_sweep", &["p", "degree"], &[]),
    ("point_regulators", &["p", "degree"], &[]),
    ("round_trip", &["count"], &["max_degree"]),
];

/// Argument names that refer to bindings, and the binding kinds they accept.
fn name_args(op: &str) -> &'static [(&'static str, &'static [&'static str])] {
    const IDEAL: &[&str] = &["ideals"];
    const CYCLEISH: &[&str] = &["ideals", "cycles"];
    const FORM: &[&str] = &["forms"];
    const SYMBOL: &[&str] = &["symbols"];
    match op {
        "groebner" | "dimension" | "cycle" => &[("ideal", IDEAL)],
        "intersect" | "euler_cycle" => &[("left", IDEAL), ("right", IDEAL)],
        "serre_multiplicity" => &[("left", IDEAL), ("right", IDEAL), ("point", IDEAL)],
        "intersection_product" => &[("left", CYCLEISH), ("right", CYCLEISH)],
        "pullback" => &[("cycle", CYCLEISH)],
        "d" | "cartier_inverse" => &[("form", FORM)],
        "symbol_reduce" | "residue_b" | "coresidue_phi" | "filtration_level" => &[("symbol", SYMBOL)],
        _ => &[],
    }
}

impl Job {
    /// Resolves the ring and every binding, and checks that each command is
    /// known and references bound names only.
    pub fn prepare(script: JobScript) -> Result<Job, Error> {
        let field = parse_field(&script.ring.field)?;
        let ring = PolyRing::new(field, &script.ring.vars, parse_order(&script.ring.order)?)?;
        let space = AffineScheme::affine_space(&ring);
        let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
        let kinds = [
            ("ideals", script.ideals.keys().collect::<Vec<_>>()),
            ("cycles", script.cycles.keys().collect()),
            ("symbols", script.symbols.keys().collect()),
            ("forms", script.forms.keys().collect()),
        ];
        for (kind, names) in &kinds {
            for n in names {
                if seen.insert(n.as_str(), kind).is_some() {
                    return Err(Error::Invalid(format!("name {n} is bound twice")));
                }
            }
        }
        let mut ideals = BTreeMap::new();
        for (name, gens) in &script.ideals {
            let gens = gens.iter().map(|g| parse_polynomial(g, &ring)).collect::<Result<Vec<_>, _>>()?;
            ideals.insert(name.clone(), Ideal::new(&ring, gens)?);
        }
        let mut cycles = BTreeMap::new();
        for (name, decl) in &script.cycles {
            let mut terms = Vec::new();
            for (k, ideal) in &decl.terms {
                let i = ideals.get(ideal).ok_or_else(|| Error::Invalid(format!("cycle {name} references unbound ideal {ideal}")))?;
                terms.push((*k, i.clone()));
            }
            cycles.insert(name.clone(), Cycle::from_terms(&space, decl.codim, &terms)?);
        }
        if (!script.symbols.is_empty() || !script.forms.is_empty()) && field.characteristic() == 0 {
            return Err(Error::UnsupportedField("forms and symbols need a prime field".into()));
        }
        for (k, cmd) in script.run.iter().enumerate() {
            let Some((_, req, opt)) = OPS.iter().find(|(op, _, _)| *op == cmd.op) else {
                return Err(Error::Invalid(format!("command {k}: unknown operation {}", cmd.op)));
            };
            for r in *req {
                if !cmd.args.contains_key(*r) {
                    return Err(Error::Invalid(format!("command {k} ({}): missing argument {r}", cmd.op)));
                }
            }
            for a in cmd.args.keys() {
                if !req.contains(&a.as_str()) && !opt.contains(&a.as_str()) {
                    return Err(Error::Invalid(format!("command {k} ({}): unexpected argument {a}", cmd.op)));
                }
            }
            for (arg, allowed) in name_args(&cmd.op) {
                let name = cmd.args[*arg].as_str().ok_or_else(|| Error::Invalid(format!("command {k}: {arg} must be a name")))?;
                match seen.get(name) {
                    Some(kind) if allowed.contains(kind) => {}
                    Some(kind) => return Err(Error::Invalid(format!("command {k}: {name} is bound in {kind}, expected {}", allowed.join(" or ")))),
                    None => return Err(Error::Invalid(format!("command {k}: unbound name {name}"))),
                }
            }
            if let Some(c) = cmd.args.get("candidates") {
                for n in string_list(c, "candidates")? {
                    if !ideals.contains_key(&n) {
                        return Err(Error::Invalid(format!("command {k}: unbound candidate {n}")));
                    }
                }
            }
        }
        Ok(Job { script, ring, space, ideals, cycles })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn header(&self) -> Value {
        json!({
            "field": self.ring.field().to_string(),
            "vars": self.ring.vars(),
            "order": self.ring.order().name(),
            "commands": self.script.run.len(),
        })
    }

    pub fn run(&self, opts: &RunOptions) -> Vec<ResultRecord> {
        let mut out = Vec::new();
        for (index, cmd) in self.script.run.iter().enumerate() {
            let start = std::time::Instant::now();
            let res = self.execute(cmd, opts);
            let millis = opts.timing.then(|| start.elapsed().as_millis());
            let rec = match res {
                Ok(payload) => ResultRecord { index, command: cmd.echo(), status: "ok".into(), payload: Some(payload), message: None, millis },
                Err(e) => ResultRecord { index, command: cmd.echo(), status: e.kind().into(), payload: None, message: Some(e.to_string()), millis },
            };
            let failed = !rec.is_ok();
            out.push(rec);
            if failed && opts.fail_fast {
                break;
            }
        }
        out
    }

    fn ideal(&self, cmd: &CommandDecl, arg: &str) -> &Ideal {
        &self.ideals[cmd.args[arg].as_str().expect("checked in prepare")]
    }

    /// Candidate components: the listed ideals, or every bound ideal.
    fn candidates(&self, cmd: &CommandDecl) -> Result<Option<Vec<Ideal>>, Error> {
        match cmd.args.get("candidates") {
            Some(c) => Ok(Some(string_list(c, "candidates")?.iter().map(|n| self.ideals[n].clone()).collect())),
            None => Ok(Some(self.ideals.values().cloned().collect())),
        }
    }

    /// A cycle binding, or `[R/I]` in the codimension of `I`.
    fn cycle(&self, cmd: &CommandDecl, arg: &str, cands: Option<&[Ideal]>) -> Result<Cycle, Error> {
        let name = cmd.args[arg].as_str().expect("checked in prepare");
        if let Some(c) = self.cycles.get(name) {
            return Ok(c.clone());
        }
        let i = &self.ideals[name];
        let codim = self.ring.nvars() as i64 - i.dimension()?;
        cycle_of_ideal(&self.space, i, codim.max(0) as usize, cands)
    }

    fn execute(&self, cmd: &CommandDecl, opts: &RunOptions) -> Result<Value, Error> {
        let a = &cmd.args;
        match cmd.op.as_str() {
            "groebner" => Ok(poly_list(self.ideal(cmd, "ideal").groebner_basis()?)),
            "dimension" => Ok(json!(self.ideal(cmd, "ideal").dimension()?)),
            "intersect" => Ok(poly_list(self.ideal(cmd, "left").intersect(self.ideal(cmd, "right"))?.groebner_basis()?)),
            "cycle" => {
                let i = self.ideal(cmd, "ideal");
                let codim = match a.get("codim") {
                    Some(v) => nat(v, "codim")? as usize,
                    None => (self.ring.nvars() as i64 - i.dimension()?).max(0) as usize,
                };
                let cands = self.candidates(cmd)?;
                Ok(cycle_json(&cycle_of_ideal(&self.space, i, codim, cands.as_deref())?))
            }
            "intersection_product" => {
                let cands = self.candidates(cmd)?;
                let c = self.cycle(cmd, "left", cands.as_deref())?;
                let d = self.cycle(cmd, "right", cands.as_deref())?;
                Ok(cycle_json(&intersection_product_on(&c, &d, cands.as_deref())?))
            }
            "euler_cycle" => {
                let (i, j) = (self.ideal(cmd, "left"), self.ideal(cmd, "right"));
                let codim = match a.get("codim") {
                    Some(v) => nat(v, "codim")? as usize,
                    None => (self.ring.nvars() as i64 - i.add(j)?.dimension()?).max(0) as usize,
                };
                let cands = self.candidates(cmd)?;
                Ok(cycle_json(&euler_cycle(&self.space, i, j, codim, cands.as_deref())?))
            }
            "serre_multiplicity" => {
                Ok(json!(serre_multiplicity(&self.space, self.ideal(cmd, "left"), self.ideal(cmd, "right"), self.ideal(cmd, "point"))?))
            }
            "pullback" => {
                let images = string_list(&a["images"], "images")?
                    .iter()
                    .map(|s| parse_polynomial(s, &self.ring))
                    .collect::<Result<Vec<_>, _>>()?;
                let f = SchemeMorphism::new(&self.space, &self.space, images)?;
                let cands = self.candidates(cmd)?;
                let c = self.cycle(cmd, "cycle", None)?;
                Ok(cycle_json(&graph_pullback(&f, &c, cands.as_deref())?))
            }
            "dlog" => {
                let alg0 = self.form_algebra(vec![])?;
                let u = poly_to_fq(&alg0, &parse_polynomial(str_arg(&a["poly"], "poly")?, &self.ring)?);
                let alg = self.form_algebra(vec![u.clone()])?;
                let w = dlog(&alg, &alg.elem(u))?;
                Ok(form_json(&w))
            }
            "d" => Ok(form_json(&self.form(str_arg(&a["form"], "form")?)?.d())),
            "cartier_inverse" => Ok(form_json(&cartier_inverse(&self.form(str_arg(&a["form"], "form")?)?))),
            "bz_slice" => {
                let alg = self.form_algebra(vec![])?;
                let s = bz_slice(&alg, nat(&a["degree"], "degree")? as usize, nat(&a["bound"], "bound")? as u32)?;
                let (b, z, w) = s.dims();
                Ok(json!({"b": b, "z": z, "omega": w}))
            }
            "symbol_reduce" => {
                let s = self.symbol(str_arg(&a["symbol"], "symbol")?)?;
                Ok(json!(symbol_reduce_with_budget(&s, opts.step_budget)?.to_string()))
            }
            "residue_b" | "coresidue_phi" => {
                let s = self.symbol(str_arg(&a["symbol"], "symbol")?)?;
                symbol_reduce_with_budget(&s, opts.step_budget)?;
                let w = if cmd.op == "residue_b" { residue_b(&s)? } else { coresidue_phi(&s)? };
                Ok(form_json(&w))
            }
            "filtration_level" => {
                let s = self.symbol(str_arg(&a["symbol"], "symbol")?)?;
                symbol_reduce_with_budget(&s, opts.step_budget)?;
                Ok(json!(u_filtration_level(&s)?))
            }
            "en_objects" => {
                let en = build_en(nat(&a["n"], "n")? as usize)?;
                Ok(json!({"objects": en.objects.len(), "morphisms": en.category.morphism_count()}))
            }
            "nerve_homology" => {
                let en = build_en(nat(&a["n"], "n")? as usize)?;
                let c = match a.get("fiber") {
                    Some(v) => en.fiber_category(nat(v, "fiber")? as usize),
                    None => en.category.clone(),
                };
                let h = nerve_homology(&c, nat(&a["dim"], "dim")? as usize)?;
                Ok(Value::Array(h.iter().map(group_json).collect()))
            }
            "regulator_sweep" => {
                let s = sweep_boundary_regulators(nat(&a["p"], "p")?, nat(&a["degree"], "degree")? as u32);
                Ok(json!({"cycles": s.cycles, "failures": s.failures, "values": s.values}))
            }
            "point_regulators" => Ok(json!(point_regulator_values(nat(&a["p"], "p")?, nat(&a["degree"], "degree")? as usize))),
            "round_trip" => {
                let count = nat(&a["count"], "count")?;
                let max_degree = a.get("max_degree").map(|v| nat(v, "max_degree")).transpose()?.unwrap_or(4) as u32;
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                let mut failures = 0u64;
                for _ in 0..count {
                    let f = random_polynomial(&self.ring, max_degree, &mut rng);
                    if parse_polynomial(&f.to_string(), &self.ring)? != f {
                        failures += 1;
                    }
                }
                Ok(json!({"count": count, "failures": failures}))
            }
            op => Err(Error::Invalid(format!("unknown operation {op}"))),
        }
    }

    fn prime(&self) -> Result<u64, Error> {
        match self.ring.field() {
            FieldSpec::Prime(p) => Ok(p),
            FieldSpec::Rationals => Err(Error::UnsupportedField("this command needs a prime field".into())),
        }
    }

    fn form_algebra(&self, inverted: Vec<cyclecalc::forms::FqPoly>) -> Result<Arc<FpAlgebra>, Error> {
        FpAlgebra::new(&FiniteField::prime(self.prime()?)?, self.ring.vars(), inverted)
    }

    fn form(&self, name: &str) -> Result<DifferentialForm, Error> {
        let alg = self.form_algebra(vec![])?;
        let terms = &self.script.forms[name];
        let mut w: Option<DifferentialForm> = None;
        for t in terms {
            let c = alg.elem(poly_to_fq(&alg, &parse_polynomial(&t.coeff, &self.ring)?));
            let mut term = DifferentialForm::function(&alg, c);
            for v in &t.dx {
                let j = self.ring.var_index(v).ok_or_else(|| Error::UnknownVariable(v.clone()))?;
                term = term.wedge(&DifferentialForm::dx(&alg, j));
            }
            w = Some(match w {
                None => term,
                Some(w) if w.degree() == term.degree() => w.add(&term),
                Some(_) => return Err(Error::Invalid(format!("form {name} mixes degrees"))),
            });
        }
        Ok(w.unwrap_or_else(|| DifferentialForm::zero(&alg, 0)))
    }

    fn symbol(&self, name: &str) -> Result<SymbolSum, Error> {
        let p = self.prime()?;
        let decl = self.script.local.clone().unwrap_or(crate::script::LocalDecl { precision: 20, residue_degree: 1, eisenstein: vec![], inverted: vec![] });
        let residue = if decl.residue_degree == 1 { FiniteField::prime(p)? } else { FiniteField::of_order(p, decl.residue_degree)? };
        let ram = if decl.eisenstein.is_empty() { Ramification::Unramified } else { Ramification::Eisenstein(decl.eisenstein.clone()) };
        let field = LocalField::new(&residue, ram, decl.precision)?;
        let plain = FpAlgebra::new(&residue, self.ring.vars(), vec![])?;
        let inverted = decl.inverted.iter().map(|u| Ok(poly_to_fq(&plain, &parse_polynomial(u, &self.ring)?))).collect::<Result<Vec<_>, Error>>()?;
        let alg = LocalAlgebra::new(&field, &FpAlgebra::new(&residue, self.ring.vars(), inverted)?)?;
        let mut vars: Vec<String> = self.ring.vars().to_vec();
        vars.push("pi".into());
        let zeta = (decl.residue_degree > 1).then_some("a");
        if let Some(z) = zeta {
            vars.push(z.into());
        }
        let entry_ring = PolyRing::new(FieldSpec::Rationals, &vars, MonomialOrder::DegRevLex)?;
        let terms = &self.script.symbols[name];
        let weight = terms.first().map(|t| t.entries.len()).unwrap_or(0);
        let mut s = SymbolSum::new(&alg, weight);
        for t in terms {
            let entries = t
                .entries
                .iter()
                .map(|e| alg.from_polynomial(&parse_polynomial(e, &entry_ring)?, "pi", zeta))
                .collect::<Result<Vec<_>, _>>()?;
            s.push(t.coeff, entries)?;
        }
        Ok(s)
    }
}

fn string_list(v: &toml::Value, what: &str) -> Result<Vec<String>, Error> {
    v.as_array()
        .and_then(|xs| xs.iter().map(|x| x.as_str().map(String::from)).collect::<Option<Vec<_>>>())
        .ok_or_else(|| Error::Invalid(format!("{what} must be a list of strings")))
}

fn str_arg<'a>(v: &'a toml::Value, what: &str) -> Result<&'a str, Error> {
    v.as_str().ok_or_else(|| Error::Invalid(format!("{what} must be a string")))
}

fn nat(v: &toml::Value, what: &str) -> Result<u64, Error> {
    v.as_integer().and_then(|n| u64::try_from(n).ok()).ok_or_else(|| Error::Invalid(format!("{what} must be a natural number")))
}

fn poly_list(gens: &[Polynomial]) -> Value {
    Value::Array(gens.iter().map(|g| json!(g.to_string())).collect())
}

pub fn cycle_json(c: &Cycle) -> Value {
    json!({
        "codim": c.codim(),
        "cycle": c.to_string(),
        "terms": c.terms().map(|(p, k)| {
            let gens: Vec<String> = p.ideal().gens().iter().rev().map(|g| g.to_string()).collect();
            json!({"coeff": k, "ideal": gens})
        }).collect::<Vec<_>>(),
    })
}

fn form_json(w: &DifferentialForm) -> Value {
    let alg = w.algebra();
    json!({
        "degree": w.degree(),
        "form": w.to_string(),
        "terms": w.terms().map(|(i, c): (&Vec<usize>, &AlgElem)| {
            let dx: Vec<&str> = i.iter().map(|&j| alg.vars()[j].as_str()).collect();
            json!({"dx": dx, "coeff": alg.format_elem(c)})
        }).collect::<Vec<_>>(),
    })
}

fn group_json(g: &AbelianGroup) -> Value {
    json!({"rank": g.free_rank, "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()})
}

fn poly_to_fq(alg: &FpAlgebra, f: &Polynomial) -> cyclecalc::forms::FqPoly {
    let terms: Vec<(Vec<u32>, i64)> = f
        .terms()
        .iter()
        .map(|(m, c)| (m.clone(), c.to_integer().to_i64().expect("reduced coefficient")))
        .collect();
    alg.poly(&terms)
}

/// A polynomial with up to six terms of total degree at most `max_degree`
/// and coefficients in `[-20, 20]`, or fractions of them over `Q`.
pub fn random_polynomial(ring: &Arc<PolyRing>, max_degree: u32, rng: &mut impl Rng) -> Polynomial {
    let n = ring.nvars();
    let mut f = Polynomial::zero(ring);
    for _ in 0..rng.gen_range(0..=6) {
        let mut mono = vec![0u32; n];
        let mut budget = rng.gen_range(0..=max_degree);
        while budget > 0 && n > 0 {
            mono[rng.gen_range(0..n)] += 1;
            budget -= 1;
        }
        let num = rng.gen_range(-20i64..=20);
        let den = if ring.field().characteristic() == 0 { rng.gen_range(1i64..=5) } else { 1 };
        let c = cyclecalc::Coeff::new(num.into(), den.into());
        let c = match ring.field() {
            FieldSpec::Prime(p) => cyclecalc::Coeff::from_integer(num.rem_euclid(p as i64).into()),
            FieldSpec::Rationals => c,
        };
        f = f + Polynomial::monomial(ring, mono, c);
    }
    f
}
