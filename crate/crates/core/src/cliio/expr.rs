//! Polynomial and module-element expressions: integers, variables, `eK`
//! generator symbols, `+ - * ^` and parentheses. Every sum is checked for
//! homogeneity term by term, so errors point at the offending summand.

use crate::error::Result;
use crate::field::PrimeField;
use crate::ringkernel::poly::vector_degree;
use crate::ringkernel::{GradedRing, Monomial, Poly, Vector};

use super::lexer::{Cursor, Tok, Token};

const MAX_DEPTH: usize = 200;
const MAX_DEGREE: i32 = 4096;

/// What identifiers mean inside an expression.
pub struct Ctx<'a> {
    pub field: PrimeField,
    pub names: &'a [String],
    pub weights: &'a [i32],
    /// Generator degrees when `eK` symbols are allowed.
    pub gens: Option<&'a [i32]>,
}

impl<'a> Ctx<'a> {
    pub fn of_ring(ring: &'a GradedRing) -> Self {
        Ctx { field: ring.field(), names: ring.names(), weights: ring.weights(), gens: None }
    }
}

#[derive(Clone, Debug)]
pub enum Val {
    S(Poly),
    V(Vector),
}

impl Val {
    fn degree(&self, cx: &Ctx) -> Option<i32> {
        match self {
            Val::S(p) => p.degree(),
            Val::V(v) => vector_degree(v, cx.gens.unwrap_or(&[])),
        }
    }

    fn neg(self, f: PrimeField) -> Val {
        match self {
            Val::S(p) => Val::S(p.neg(f)),
            Val::V(v) => Val::V(v.iter().map(|p| p.neg(f)).collect()),
        }
    }
}

fn mul(cx: &Ctx, a: Val, b: Val, at: &Token) -> Result<Val> {
    let f = cx.field;
    if let (Some(da), Some(db)) = (a.degree(cx), b.degree(cx)) {
        if da + db > MAX_DEGREE {
            return Err(at.error(format!("degree exceeds {MAX_DEGREE}")));
        }
    }
    Ok(match (a, b) {
        (Val::S(p), Val::S(q)) => Val::S(p.mul(f, &q)),
        (Val::S(p), Val::V(v)) | (Val::V(v), Val::S(p)) => Val::V(v.iter().map(|c| c.mul(f, &p)).collect()),
        (Val::V(_), Val::V(_)) => return Err(at.error("cannot multiply two module elements")),
    })
}

fn add(cx: &Ctx, a: Val, b: Val, at: &Token) -> Result<Val> {
    let f = cx.field;
    Ok(match (a, b) {
        (Val::S(p), Val::S(q)) => Val::S(p.add(f, &q)),
        (Val::V(v), Val::V(w)) => Val::V(v.iter().zip(&w).map(|(p, q)| p.add(f, q)).collect()),
        _ => return Err(at.error("cannot add a polynomial and a module element")),
    })
}

pub fn expr(cur: &mut Cursor, cx: &Ctx, depth: usize) -> Result<Val> {
    if depth > MAX_DEPTH {
        return Err(cur.peek().error("expression nested too deeply"));
    }
    let mut acc: Option<Val> = None;
    let mut expected: Option<i32> = None;
    let mut first = true;
    loop {
        // a leading sign is optional; later terms need one
        let neg = if cur.eat_sym('-') {
            true
        } else if cur.eat_sym('+') || first {
            false
        } else {
            return Err(cur.peek().error("expected '+' or '-'"));
        };
        first = false;
        let start = cur.peek().clone();
        let mut t = term(cur, cx, depth)?;
        if neg {
            t = t.neg(cx.field);
        }
        if let Some(d) = t.degree(cx) {
            match expected {
                None => expected = Some(d),
                Some(e) if e != d => {
                    return Err(start.error(format!("not homogeneous: term of degree {d}, expected degree {e}")))
                }
                _ => {}
            }
        }
        acc = Some(match acc {
            None => t,
            Some(a) => add(cx, a, t, &start)?,
        });
        if !(cur.at_sym('+') || cur.at_sym('-')) {
            return Ok(acc.expect("at least one term"));
        }
    }
}

fn term(cur: &mut Cursor, cx: &Ctx, depth: usize) -> Result<Val> {
    let mut acc = factor(cur, cx, depth)?;
    while cur.at_sym('*') {
        let star = cur.next();
        let b = factor(cur, cx, depth)?;
        acc = mul(cx, acc, b, &star)?;
    }
    Ok(acc)
}

fn factor(cur: &mut Cursor, cx: &Ctx, depth: usize) -> Result<Val> {
    if depth > MAX_DEPTH {
        return Err(cur.peek().error("expression nested too deeply"));
    }
    if cur.eat_sym('-') {
        return Ok(factor(cur, cx, depth + 1)?.neg(cx.field));
    }
    let base = atom(cur, cx, depth)?;
    if !cur.at_sym('^') {
        return Ok(base);
    }
    let caret = cur.next();
    let (e, et) = cur.expect_int("an exponent")?;
    let Val::S(p) = base else {
        return Err(caret.error("cannot raise a module element to a power"));
    };
    let d = p.degree().unwrap_or(0) as i128;
    if e > MAX_DEGREE as u128 || d * e as i128 > MAX_DEGREE as i128 {
        return Err(et.error(format!("degree exceeds {MAX_DEGREE}")));
    }
    let mut out = Poly::constant(1, cx.names.len());
    for _ in 0..e {
        out = out.mul(cx.field, &p);
    }
    Ok(Val::S(out))
}

fn atom(cur: &mut Cursor, cx: &Ctx, depth: usize) -> Result<Val> {
    let t = cur.next();
    match &t.tok {
        Tok::Int(n) => {
            let p = cx.field.characteristic() as u128;
            Ok(Val::S(Poly::constant((n % p) as u32, cx.names.len())))
        }
        Tok::Ident(s) => {
            if let Some(i) = cx.names.iter().position(|v| v == s) {
                return Ok(Val::S(Poly::monomial(Monomial::variable(i, cx.weights), 1)));
            }
            if let (Some(gens), Some(k)) = (cx.gens, generator_index(s)) {
                if (1..=gens.len()).contains(&k) {
                    let mut v = vec![Poly::zero(); gens.len()];
                    v[k - 1] = Poly::constant(1, cx.names.len());
                    return Ok(Val::V(v));
                }
            }
            Err(t.error("unknown identifier"))
        }
        Tok::Sym('(') => {
            let v = expr(cur, cx, depth + 1)?;
            cur.expect_sym(')')?;
            Ok(v)
        }
        _ => Err(t.error("expected a number, a variable or '('")),
    }
}

fn generator_index(s: &str) -> Option<usize> {
    let digits = s.strip_prefix('e')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// A homogeneous polynomial from a complete string.
pub fn parse_poly_in(cx: &Ctx, text: &str) -> Result<Poly> {
    let mut cur = Cursor::new(text)?;
    let start = cur.peek().clone();
    let v = expr(&mut cur, cx, 0)?;
    if !cur.at_eof() {
        return Err(cur.peek().error("unexpected trailing input"));
    }
    match v {
        Val::S(p) => Ok(p),
        Val::V(_) => Err(start.error("expected a polynomial")),
    }
}

/// Parses a polynomial written in the variables of `ring`, reduced into `R`.
pub fn parse_poly(ring: &GradedRing, text: &str) -> Result<Poly> {
    Ok(ring.reduce(&parse_poly_in(&Ctx::of_ring(ring), text)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fixtures;

    fn cone() -> std::sync::Arc<GradedRing> {
        fixtures::a1_cone(PrimeField::new(32003).unwrap())
    }

    #[test]
    fn printed_polynomials_parse_back() {
        let r = cone();
        let f = r.field();
        let x = r.var(0);
        let z = r.var(2);
        let p = x.mul(f, &x).scale(f, 5).sub(f, &z.mul(f, &x)).add(f, &r.constant(0));
        let s = p.to_string_with(f, r.names());
        assert_eq!(parse_poly(&r, &s).unwrap(), r.reduce(&p));
        assert_eq!(parse_poly(&r, "(x + z)^2 - x^2 - 2*x*z").unwrap(), r.reduce(&z.mul(f, &z)));
        assert_eq!(parse_poly(&r, "x*y").unwrap(), parse_poly(&r, "z^2").unwrap());
        assert!(parse_poly(&r, "0").unwrap().is_zero());
        assert_eq!(parse_poly(&r, "32004").unwrap(), r.one());
    }

    #[test]
    fn inhomogeneous_term_is_located() {
        let r = cone();
        match parse_poly(&r, "x^2 + y*z + x") {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (1, 13));
                assert!(msg.contains("degree 1"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_inputs_are_errors() {
        let r = cone();
        for bad in ["", "x +", "x * * y", "(x", "x)", "w", "e1", "x^", "x^99999", "((((", "x^2^2", "3 x"] {
            assert!(matches!(parse_poly(&r, bad), Err(Error::Parse { .. })), "{bad}");
        }
        let deep = "(".repeat(1000) + "x" + &")".repeat(1000);
        assert!(matches!(parse_poly(&r, &deep), Err(Error::Parse { .. })));
        let signs = "-".repeat(100_000) + "x";
        assert!(matches!(parse_poly(&r, &signs), Err(Error::Parse { .. })));
    }

    #[test]
    fn generators_form_vectors() {
        let r = cone();
        let gens = [0, 0];
        let cx = Ctx { gens: Some(&gens), ..Ctx::of_ring(&r) };
        let mut cur = Cursor::new("x*e1 + z*e2").unwrap();
        let Val::V(v) = expr(&mut cur, &cx, 0).unwrap() else { panic!() };
        assert_eq!(v, vec![r.var(0), r.var(2)]);
        let mut cur = Cursor::new("x*e1 + e2").unwrap();
        assert!(expr(&mut cur, &cx, 0).is_err());
        let mut cur = Cursor::new("e1*e2").unwrap();
        assert!(expr(&mut cur, &cx, 0).is_err());
        let mut cur = Cursor::new("e3").unwrap();
        assert!(expr(&mut cur, &cx, 0).is_err());
    }
}
