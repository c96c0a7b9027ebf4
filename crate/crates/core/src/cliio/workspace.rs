//! The workspace text format:
//!
//! ```text
//! ring R { char 32003; vars x y z; weights 1 1 1; ideal x*y - z^2; }
//! module M over R { degrees 0 0; relations { x*e1 + z*e2; z*e1 + y*e2 } }
//! prime P in R { x, z }
//! ```
//!
//! `weights` defaults to all ones; `ideal` and the relation list may be
//! omitted or empty.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::modlib::GradedModule;
use crate::ringkernel::{GradedRing, IdealHandle, Poly};

use super::expr::{expr, parse_poly_in, Ctx, Val};
use super::lexer::{Cursor, Token};

#[derive(Clone, Debug)]
pub struct RingDecl {
    pub name: String,
    pub ring: Arc<GradedRing>,
}

#[derive(Clone, Debug)]
pub struct ModuleDecl {
    pub name: String,
    pub ring: String,
    pub module: GradedModule,
}

#[derive(Clone, Debug)]
pub struct PrimeDecl {
    pub name: String,
    pub ring: String,
    pub ideal: IdealHandle,
}

/// Run configuration carried alongside the declarations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkspaceConfig {
    /// Characteristic actually used (after any override).
    pub p: Option<u32>,
    pub n_max: u32,
    /// Truncation policy: the smallest `n ≤ n_max` that works.
    pub truncation: String,
    pub seed: u64,
}

impl Default for WorkspaceConfig {
    fn default() -> Self {
        WorkspaceConfig { p: None, n_max: 12, truncation: "smallest".into(), seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Replaces every declared characteristic.
    pub prime: Option<u32>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default)]
pub struct WorkspaceSpec {
    pub rings: Vec<RingDecl>,
    pub modules: Vec<ModuleDecl>,
    pub primes: Vec<PrimeDecl>,
    pub config: WorkspaceConfig,
}

impl PartialEq for WorkspaceSpec {
    fn eq(&self, o: &Self) -> bool {
        let rings = self.rings.len() == o.rings.len()
            && self.rings.iter().zip(&o.rings).all(|(a, b)| {
                a.name == b.name && a.ring == b.ring && a.ring.defining_ideal() == b.ring.defining_ideal()
            });
        let modules = self.modules.len() == o.modules.len()
            && self.modules.iter().zip(&o.modules).all(|(a, b)| {
                a.name == b.name
                    && a.ring == b.ring
                    && a.module.degrees() == b.module.degrees()
                    && a.module.relations() == b.module.relations()
            });
        let primes = self.primes.len() == o.primes.len()
            && self.primes.iter().zip(&o.primes).all(|(a, b)| {
                a.name == b.name && a.ring == b.ring && a.ideal.generators() == b.ideal.generators()
            });
        rings && modules && primes && self.config == o.config
    }
}

impl WorkspaceSpec {
    pub fn ring(&self, name: &str) -> Result<&RingDecl> {
        self.rings
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown ring '{name}'")))
    }

    pub fn module(&self, name: &str) -> Result<&ModuleDecl> {
        self.modules
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown module '{name}'")))
    }

    fn taken(&self, name: &str) -> bool {
        self.rings.iter().any(|r| r.name == name)
            || self.modules.iter().any(|m| m.name == name)
            || self.primes.iter().any(|p| p.name == name)
    }

    fn resolve_ring(&self, name: &str, at: &Token) -> Result<Arc<GradedRing>> {
        self.rings
            .iter()
            .find(|r| r.name == name)
            .map(|r| r.ring.clone())
            .ok_or_else(|| at.error("unknown identifier"))
    }
}

pub fn parse_spec(text: &str) -> Result<WorkspaceSpec> {
    parse_spec_with(text, &ParseOptions::default())
}

pub fn parse_spec_with(text: &str, opts: &ParseOptions) -> Result<WorkspaceSpec> {
    let mut cur = Cursor::new(text)?;
    let mut spec = WorkspaceSpec::default();
    if let Some(s) = opts.seed {
        spec.config.seed = s;
    }
    while !cur.at_eof() {
        let (kw, kt) = cur.expect_ident("'ring', 'module' or 'prime'")?;
        let (name, nt) = cur.expect_ident("a name")?;
        if spec.taken(&name) {
            return Err(nt.error("name already declared"));
        }
        match kw.as_str() {
            "ring" => {
                let ring = ring_block(&mut cur, opts)?;
                spec.config.p.get_or_insert(ring.field().characteristic());
                spec.rings.push(RingDecl { name, ring });
            }
            "module" => {
                cur.expect_keyword("over")?;
                let (rname, rt) = cur.expect_ident("a ring name")?;
                let ring = spec.resolve_ring(&rname, &rt)?;
                let module = module_block(&mut cur, &ring, &nt)?;
                spec.modules.push(ModuleDecl { name, ring: rname, module });
            }
            "prime" => {
                cur.expect_keyword("in")?;
                let (rname, rt) = cur.expect_ident("a ring name")?;
                let ring = spec.resolve_ring(&rname, &rt)?;
                cur.expect_sym('{')?;
                let gens = poly_list(&mut cur, &ring_ctx(&ring), '}')?;
                cur.expect_sym('}')?;
                let ideal = IdealHandle::new(&ring, gens).map_err(|e| nt.error(e))?;
                spec.primes.push(PrimeDecl { name, ring: rname, ideal });
            }
            _ => return Err(kt.error("expected 'ring', 'module' or 'prime'")),
        }
    }
    Ok(spec)
}

fn ring_ctx(ring: &GradedRing) -> Ctx<'_> {
    Ctx::of_ring(ring)
}

/// Comma-separated polynomials up to (not including) `end`.
fn poly_list(cur: &mut Cursor, cx: &Ctx, end: char) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    if cur.at_sym(end) {
        return Ok(out);
    }
    loop {
        let start = cur.peek().clone();
        match expr(cur, cx, 0)? {
            Val::S(p) => out.push(p),
            Val::V(_) => return Err(start.error("expected a polynomial")),
        }
        if !cur.eat_sym(',') {
            return Ok(out);
        }
    }
}

fn ring_block(cur: &mut Cursor, opts: &ParseOptions) -> Result<Arc<GradedRing>> {
    cur.expect_sym('{')?;
    cur.expect_keyword("char")?;
    let (p, pt) = cur.expect_int("a characteristic")?;
    cur.expect_sym(';')?;
    let declared = u32::try_from(p).map_err(|_| pt.error("characteristic not prime"))?;
    let field = PrimeField::new(opts.prime.unwrap_or(declared)).map_err(|_| pt.error("characteristic not prime"))?;
    let vt = cur.expect_keyword("vars")?;
    let mut names: Vec<String> = Vec::new();
    while !cur.at_sym(';') {
        let (v, t) = cur.expect_ident("a variable name")?;
        if names.contains(&v) {
            return Err(t.error("variable declared twice"));
        }
        names.push(v);
    }
    cur.expect_sym(';')?;
    if names.is_empty() {
        return Err(vt.error("at least one variable is required"));
    }
    let mut weights = vec![1; names.len()];
    if cur.at_keyword("weights") {
        let wt = cur.next();
        weights.clear();
        while !cur.at_sym(';') {
            let (w, t) = cur.expect_int("a weight")?;
            match i32::try_from(w) {
                Ok(w) if w > 0 => weights.push(w),
                _ => return Err(t.error("weights must be positive")),
            }
        }
        cur.expect_sym(';')?;
        if weights.len() != names.len() {
            return Err(wt.error(format!("{} weights for {} variables", weights.len(), names.len())));
        }
    }
    let mut ideal = Vec::new();
    if cur.at_keyword("ideal") {
        let it = cur.next();
        let cx = Ctx { field, names: &names, weights: &weights, gens: None };
        ideal = poly_list(cur, &cx, ';')?;
        cur.expect_sym(';')?;
        if ideal.iter().any(|g| g.constant_term() != 0) {
            return Err(it.error("the ideal must lie in the maximal ideal"));
        }
    }
    cur.expect_sym('}')?;
    GradedRing::new(field, names, weights, ideal).map_err(|e| pt.error(e))
}

fn module_block(cur: &mut Cursor, ring: &Arc<GradedRing>, name: &Token) -> Result<GradedModule> {
    cur.expect_sym('{')?;
    cur.expect_keyword("degrees")?;
    let mut degrees = Vec::new();
    while !cur.at_sym(';') {
        let (d, t) = cur.expect_signed("a degree")?;
        degrees.push(i32::try_from(d).map_err(|_| t.error("degree out of range"))?);
    }
    cur.expect_sym(';')?;
    let mut relations = Vec::new();
    if cur.at_keyword("relations") {
        cur.next();
        cur.expect_sym('{')?;
        let cx = Ctx { gens: Some(&degrees), ..Ctx::of_ring(ring) };
        while !cur.at_sym('}') {
            let start = cur.peek().clone();
            match expr(cur, &cx, 0)? {
                Val::V(v) => relations.push(v),
                Val::S(p) if p.is_zero() => relations.push(vec![Poly::zero(); degrees.len()]),
                Val::S(_) => return Err(start.error("a relation must be a combination of e1..eN")),
            }
            if !cur.eat_sym(';') {
                break;
            }
        }
        cur.expect_sym('}')?;
        cur.eat_sym(';');
    }
    cur.expect_sym('}')?;
    GradedModule::new(ring, degrees, relations).map_err(|e| name.error(e))
}

/// The workspace back in the input format.
pub fn print_spec(spec: &WorkspaceSpec) -> String {
    let mut out = String::new();
    for r in &spec.rings {
        let ring = &r.ring;
        let f = ring.field();
        let _ = writeln!(out, "ring {} {{", r.name);
        let _ = writeln!(out, "  char {};", f.characteristic());
        let _ = writeln!(out, "  vars {};", ring.names().join(" "));
        let w: Vec<String> = ring.weights().iter().map(|w| w.to_string()).collect();
        let _ = writeln!(out, "  weights {};", w.join(" "));
        if !ring.defining_ideal().is_empty() {
            let gens: Vec<String> = ring.defining_ideal().iter().map(|g| g.to_string_with(f, ring.names())).collect();
            let _ = writeln!(out, "  ideal {};", gens.join(", "));
        }
        out.push_str("}\n\n");
    }
    for m in &spec.modules {
        let ring = m.module.ring();
        let d: Vec<String> = m.module.degrees().iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "module {} over {} {{", m.name, m.ring);
        let _ = writeln!(out, "  degrees {};", d.join(" "));
        let rels: Vec<String> = m.module.relations().iter().map(|c| vector_string(ring, c)).collect();
        if rels.is_empty() {
            out.push_str("  relations { }\n");
        } else {
            let _ = writeln!(out, "  relations {{\n    {}\n  }}", rels.join(";\n    "));
        }
        out.push_str("}\n\n");
    }
    for p in &spec.primes {
        let ring = &spec.ring(&p.ring).expect("declared ring").ring;
        let gens: Vec<String> =
            p.ideal.generators().iter().map(|g| g.to_string_with(ring.field(), ring.names())).collect();
        let _ = writeln!(out, "prime {} in {} {{ {} }}\n", p.name, p.ring, gens.join(", "));
    }
    out
}

/// `c_1*e1 + c_2*e2 + ...` with multi-term coefficients parenthesized.
pub fn vector_string(ring: &GradedRing, v: &[Poly]) -> String {
    let mut s = String::new();
    for (k, p) in v.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let body = p.to_string_with(ring.field(), ring.names());
        let (neg, core) = if p.terms().len() == 1 {
            match body.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, body),
            }
        } else {
            (false, format!("({body})"))
        };
        let term = if core == "1" { format!("e{}", k + 1) } else { format!("{core}*e{}", k + 1) };
        match (s.is_empty(), neg) {
            (true, false) => s.push_str(&term),
            (true, true) => s.push_str(&format!("-{term}")),
            (false, false) => s.push_str(&format!(" + {term}")),
            (false, true) => s.push_str(&format!(" - {term}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// A module relation matrix column written as polynomial strings, for echo
/// formats that keep entries separate.
pub fn parse_vector_entries(ring: &GradedRing, entries: &[String]) -> Result<Vec<Poly>> {
    let cx = Ctx::of_ring(ring);
    entries.iter().map(|e| parse_poly_in(&cx, e).map(|p| ring.reduce(&p))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    pub const A1: &str = "
        # the A1 cone
        ring R { char 32003; vars x y z; weights 1 1 1; ideal x*y - z^2; }
        module M over R {
            degrees 0 0;
            relations { x*e1 + z*e2; z*e1 + y*e2 }
        }
        prime P in R { x, z }
    ";

    fn loc(r: Result<WorkspaceSpec>) -> (usize, usize, String) {
        match r {
            Err(Error::Parse { line, col, msg }) => (line, col, msg),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_ring() {
        let s = parse_spec("ring R { char 7; vars t; }").unwrap();
        assert_eq!(s.rings.len(), 1);
        assert_eq!(s.rings[0].ring.nvars(), 1);
        assert_eq!(s.config.p, Some(7));
    }

    #[test]
    fn a1_module_matches_fixture() {
        let s = parse_spec(A1).unwrap();
        let f = PrimeField::new(32003).unwrap();
        let fx = fixtures::a1_cone(f);
        let m = &s.module("M").unwrap().module;
        assert_eq!(*m.ring().as_ref(), *fx);
        assert_eq!(m.relations(), fixtures::a1_matrix(&fx).as_slice());
        assert_eq!(s.primes[0].ideal.generators().len(), 2);
    }

    #[test]
    fn relation_mixing_degrees_is_located() {
        let text = "ring R { char 32003; vars x y z; ideal x*y - z^2; }\nmodule M over R { degrees 0 0; relations { x*e1 + z^2*e2 } }";
        let (line, col, msg) = loc(parse_spec(text));
        assert_eq!((line, col), (2, 51));
        assert!(msg.contains("not homogeneous"), "{msg}");
        // shifting the second generator repairs it: deg z^2 - 1 = deg x
        let ok = text.replace("degrees 0 0", "degrees 0 -1");
        assert!(parse_spec(&ok).is_ok());
    }

    #[test]
    fn error_kinds() {
        let (_, _, msg) = loc(parse_spec("ring R { char 12; vars x; }"));
        assert!(msg.contains("not prime"));
        let (l, c, msg) = loc(parse_spec("ring R { char 7; vars x; }\nmodule M over S { degrees 0; }"));
        assert_eq!((l, c), (2, 15));
        assert!(msg.contains("unknown identifier") && msg.contains("'S'"));
        let (_, _, msg) = loc(parse_spec("ring R { char 7; vars x; }\nmodule M over R { degrees 0; relations { w*e1 } }"));
        assert!(msg.contains("unknown identifier"));
        let (_, _, msg) = loc(parse_spec("ring R { char 7; vars x; ideal x + x^2; }"));
        assert!(msg.contains("not homogeneous"));
        let (_, _, msg) = loc(parse_spec("ring R { char 7; vars x; }\nring R { char 7; vars x; }"));
        assert!(msg.contains("already declared"));
        let (_, _, msg) = loc(parse_spec("ring R { char 7; vars x y; weights 1; }"));
        assert!(msg.contains("weights"));
        assert!(parse_spec("ring R { char 7; vars x; ideal 1; }").is_err());
        assert!(parse_spec("ring R { char 7 vars x; }").is_err());
        assert!(parse_spec("field F").is_err());
    }

    #[test]
    fn prime_override() {
        let s = parse_spec_with(A1, &ParseOptions { prime: Some(101), seed: Some(9) }).unwrap();
        assert_eq!(s.rings[0].ring.field().characteristic(), 101);
        assert_eq!(s.config.p, Some(101));
        assert_eq!(s.config.seed, 9);
    }

    #[test]
    fn print_round_trip() {
        let s = parse_spec(A1).unwrap();
        let printed = print_spec(&s);
        let again = parse_spec(&printed).unwrap();
        assert_eq!(again, s);
        assert_eq!(print_spec(&again), printed);
    }

    #[test]
    fn vector_strings() {
        let f = PrimeField::new(32003).unwrap();
        let r = fixtures::a1_cone(f);
        let v = vec![r.var(0).neg(f), r.var(1).add(f, &r.var(2)).scale(f, 3), r.one()];
        assert_eq!(vector_string(&r, &v), "-x*e1 + (3*y + 3*z)*e2 + e3");
        assert_eq!(vector_string(&r, &[Poly::zero()]), "0");
    }
}
