//! Monomials and polynomials under the weighted degree-reverse-lexicographic
//! order.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::field::PrimeField;

pub type Exponents = SmallVec<[u16; 8]>;

/// An exponent vector together with its weighted degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: i32,
    exps: Exponents,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { deg: 0, exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn from_exponents(exps: &[u16], weights: &[i32]) -> Self {
        let deg = exps.iter().zip(weights).map(|(&e, &w)| e as i32 * w).sum();
        Monomial { deg, exps: SmallVec::from_slice(exps) }
    }

    pub fn variable(i: usize, weights: &[i32]) -> Self {
        let mut exps: Exponents = SmallVec::from_elem(0, weights.len());
        exps[i] = 1;
        Monomial { deg: weights[i], exps }
    }

    #[inline]
    pub fn degree(&self) -> i32 {
        self.deg
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    /// Number of variable factors counted with multiplicity (the m-adic order).
    pub fn total_exponent(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + o.deg,
            exps: self.exps.iter().zip(o.exps.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.deg <= o.deg && self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial {
            deg: o.deg - self.deg,
            exps: o.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn lcm(&self, o: &Monomial, weights: &[i32]) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(o.exps.iter()).map(|(&a, &b)| a.max(b)).collect();
        let deg = exps.iter().zip(weights).map(|(&e, &w)| e as i32 * w).sum();
        Monomial { deg, exps }
    }

    /// Pure power of a single variable: returns that variable's index.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.deg.cmp(&o.deg) {
            Ordering::Equal => {}
            c => return c,
        }
        for (a, b) in self.exps.iter().zip(o.exps.iter()).rev() {
            if a != b {
                // smaller exponent in the last differing variable wins
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// All monomials of weighted degree `d`, in descending order.
pub fn monomials_of_degree(weights: &[i32], d: i32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let n = weights.len();
    let mut exps = vec![0u16; n];
    fn rec(i: usize, rem: i32, weights: &[i32], exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if rem == 0 {
                out.push(Monomial::from_exponents(exps, weights));
            }
            return;
        }
        let w = weights[i];
        let mut e = 0;
        while e * w <= rem {
            exps[i] = e as u16;
            rec(i + 1, rem - e * w, weights, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, weights, &mut exps, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// A polynomial: terms strictly descending, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, u32)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: u32, nvars: usize) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(Monomial::one(nvars), c)] }
        }
    }

    pub fn monomial(m: Monomial, c: u32) -> Self {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, sorting and combining.
    pub fn from_terms(f: PrimeField, mut terms: Vec<(Monomial, u32)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|t| t.1 == 0) {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    /// Terms already sorted descending and free of zeros.
    pub fn from_sorted_terms(terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// Weighted degree of the leading term.
    pub fn degree(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(n, _)| n.degree() == m.degree()),
        }
    }

    /// The constant coefficient (0 if absent).
    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn add(&self, f: PrimeField, o: &Poly) -> Poly {
        self.add_scaled(f, o, 1, None)
    }

    pub fn sub(&self, f: PrimeField, o: &Poly) -> Poly {
        self.add_scaled(f, o, f.neg(1), None)
    }

    /// `self + c * m * o` by merging.
    pub fn add_scaled(&self, f: PrimeField, o: &Poly, c: u32, m: Option<&Monomial>) -> Poly {
        if c == 0 || o.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = o.terms.iter().map(|(bm, bc)| {
            (match m {
                Some(m) => bm.mul(m),
                None => bm.clone(),
            }, f.mul(*bc, c))
        }).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let x = a.next().unwrap();
                        let y = b.next().unwrap();
                        let s = f.add(x.1, y.1);
                        if s != 0 {
                            out.push((y.0, s));
                        }
                    }
                },
            }
        }
        Poly { terms: out }
    }

    pub fn scale(&self, f: PrimeField, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), f.mul(*x, c))).collect() }
    }

    pub fn neg(&self, f: PrimeField) -> Poly {
        self.scale(f, f.neg(1))
    }

    pub fn mul_monomial(&self, f: PrimeField, m: &Monomial, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, x)| (n.mul(m), f.mul(*x, c))).collect() }
    }

    pub fn mul(&self, f: PrimeField, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (m, c) in &self.terms {
            for (n, d) in &o.terms {
                terms.push((m.mul(n), f.mul(*c, *d)));
            }
        }
        Poly::from_terms(f, terms)
    }

    /// Homogeneous component of weighted degree `d`.
    pub fn component(&self, d: i32) -> Poly {
        Poly { terms: self.terms.iter().filter(|t| t.0.degree() == d).cloned().collect() }
    }

    /// Writes the polynomial with integer coefficients in the symmetric range.
    pub fn write(&self, f: PrimeField, names: &[String], out: &mut impl fmt::Write) -> fmt::Result {
        if self.terms.is_empty() {
            return out.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = f.to_signed(*c);
            let (neg, a) = (s < 0, s.unsigned_abs());
            if i == 0 {
                if neg {
                    out.write_str("-")?;
                }
            } else {
                out.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = format_monomial(m, names);
            match (a, mono.is_empty()) {
                (_, true) => write!(out, "{a}")?,
                (1, false) => out.write_str(&mono)?,
                (_, false) => write!(out, "{a}*{mono}")?,
            }
        }
        Ok(())
    }

    pub fn to_string_with(&self, f: PrimeField, names: &[String]) -> String {
        let mut s = String::new();
        self.write(f, names, &mut s).expect("writing to a String cannot fail");
        s
    }
}

pub fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Column vector of polynomials: one entry per generator of a free module.
pub type Vector = Vec<Poly>;

pub fn vector_is_zero(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

/// Degree of a homogeneous vector in a free module with the given generator
/// degrees; `None` for the zero vector.
pub fn vector_degree(v: &[Poly], gen_degrees: &[i32]) -> Option<i32> {
    v.iter()
        .zip(gen_degrees)
        .find_map(|(p, &d)| p.degree().map(|e| e + d))
}

/// Checks homogeneity of a vector: every nonzero entry must land in one total
/// degree. Returns that degree.
pub fn check_vector_homogeneous(v: &[Poly], gen_degrees: &[i32]) -> Result<Option<i32>, String> {
    let mut deg = None;
    for (i, (p, &d)) in v.iter().zip(gen_degrees).enumerate() {
        for (m, _) in p.terms() {
            let t = m.degree() + d;
            match deg {
                None => deg = Some(t),
                Some(e) if e != t => {
                    return Err(format!("entry {i} has a term of total degree {t}, expected {e}"))
                }
                _ => {}
            }
        }
    }
    Ok(deg)
}
