//! Buchberger's algorithm for homogeneous submodules of graded free modules
//! over F_p[x_1..x_v].
//!
//! Ideals are the rank-one case. S-pairs are processed by increasing total
//! degree, ties broken by pair index, with the Gebauer–Möller criteria; the
//! output is the reduced, monic basis sorted by leading term, so it is
//! independent of the order of the input generators.

use std::cmp::Ordering;

use crate::field::PrimeField;
use crate::ringkernel::poly::{Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MTerm {
    pub comp: u32,
    pub mono: Monomial,
    pub coef: u32,
}

/// A module element as a sorted term list (descending in the module order).
pub type MVec = Vec<MTerm>;

/// Term order on a free module.
///
/// Without elimination this is term-over-position refined by total degree:
/// total degree (monomial degree plus component shift), then the monomial,
/// then the component (lower index is larger). With `elim_from = Some(b)`,
/// every term in a component `< b` beats every term in a component `>= b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub shifts: Vec<i32>,
    pub elim_from: Option<usize>,
}

impl ModuleOrder {
    pub fn top(shifts: Vec<i32>) -> Self {
        ModuleOrder { shifts, elim_from: None }
    }

    pub fn elimination(shifts: Vec<i32>, block: usize) -> Self {
        ModuleOrder { shifts, elim_from: Some(block) }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn total_degree(&self, t: &MTerm) -> i32 {
        t.mono.degree() + self.shifts[t.comp as usize]
    }

    pub fn cmp(&self, c1: u32, m1: &Monomial, c2: u32, m2: &Monomial) -> Ordering {
        if let Some(b) = self.elim_from {
            let (u1, u2) = ((c1 as usize) < b, (c2 as usize) < b);
            if u1 != u2 {
                return if u1 { Ordering::Greater } else { Ordering::Less };
            }
        }
        let d1 = m1.degree() + self.shifts[c1 as usize];
        let d2 = m2.degree() + self.shifts[c2 as usize];
        d1.cmp(&d2).then_with(|| m1.cmp(m2)).then_with(|| c2.cmp(&c1))
    }

    #[inline]
    pub fn cmp_terms(&self, a: &MTerm, b: &MTerm) -> Ordering {
        self.cmp(a.comp, &a.mono, b.comp, &b.mono)
    }

    /// Converts a column of polynomials (entry i in component `offset + i`).
    pub fn from_polys(&self, v: &[Poly], offset: usize) -> MVec {
        let mut out: MVec = v
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                p.terms().iter().map(move |(m, c)| MTerm { comp: (offset + i) as u32, mono: m.clone(), coef: *c })
            })
            .collect();
        out.sort_by(|a, b| self.cmp_terms(b, a));
        out
    }
}

/// Splits a module element back into per-component polynomials for the
/// components in `range`.
pub fn to_polys(v: &[MTerm], range: std::ops::Range<usize>) -> Vec<Poly> {
    let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); range.len()];
    for t in v {
        let c = t.comp as usize;
        if range.contains(&c) {
            buckets[c - range.start].push((t.mono.clone(), t.coef));
        }
    }
    buckets
        .into_iter()
        .map(|mut ts| {
            ts.sort_by(|a, b| b.0.cmp(&a.0));
            Poly::from_sorted_terms(ts)
        })
        .collect()
}

/// `f - c * m * g`, merging in the module order.
pub fn sub_mul(order: &ModuleOrder, fld: PrimeField, f: &[MTerm], c: u32, m: &Monomial, g: &[MTerm]) -> MVec {
    let nc = fld.neg(c);
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|t| MTerm { comp: t.comp, mono: t.mono.mul(m), coef: fld.mul(t.coef, nc) }).peekable();
    while i < f.len() || gi.peek().is_some() {
        match (f.get(i), gi.peek()) {
            (Some(a), None) => {
                out.push(a.clone());
                i += 1;
            }
            (None, Some(_)) => out.push(gi.next().unwrap()),
            (Some(a), Some(b)) => match order.cmp_terms(a, b) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => out.push(gi.next().unwrap()),
                Ordering::Equal => {
                    let b = gi.next().unwrap();
                    let s = fld.add(a.coef, b.coef);
                    if s != 0 {
                        out.push(MTerm { coef: s, ..b });
                    }
                    i += 1;
                }
            },
            (None, None) => unreachable!(),
        }
    }
    out
}

fn make_monic(fld: PrimeField, v: &mut MVec) {
    if let Some(t) = v.first() {
        if t.coef != 1 {
            let inv = fld.inv(t.coef);
            for t in v.iter_mut() {
                t.coef = fld.mul(t.coef, inv);
            }
        }
    }
}

/// A basis with an index by leading component, used as a reducer.
#[derive(Clone, Debug)]
pub struct Reducer {
    pub order: ModuleOrder,
    pub field: PrimeField,
    elems: Vec<MVec>,
    by_comp: Vec<Vec<usize>>,
}

impl Reducer {
    pub fn new(order: ModuleOrder, field: PrimeField) -> Self {
        let by_comp = vec![Vec::new(); order.rank()];
        Reducer { order, field, elems: Vec::new(), by_comp }
    }

    pub fn elems(&self) -> &[MVec] {
        &self.elems
    }

    pub fn into_elems(self) -> Vec<MVec> {
        self.elems
    }

    /// Appends a monic element.
    pub fn push(&mut self, v: MVec) -> usize {
        let idx = self.elems.len();
        self.by_comp[v[0].comp as usize].push(idx);
        self.elems.push(v);
        idx
    }

    fn find(&self, t: &MTerm) -> Option<usize> {
        self.by_comp[t.comp as usize]
            .iter()
            .copied()
            .find(|&i| self.elems[i][0].mono.divides(&t.mono))
    }

    /// True when some leading term divides the term `(comp, m)`.
    pub fn is_reducible(&self, comp: u32, m: &Monomial) -> bool {
        self.by_comp[comp as usize].iter().any(|&i| self.elems[i][0].mono.divides(m))
    }

    /// Full normal form: no term of the result is divisible by a leading term.
    pub fn reduce(&self, mut f: MVec) -> MVec {
        let mut done = 0;
        while done < f.len() {
            let t = &f[done];
            match self.find(t) {
                Some(gi) => {
                    let g = &self.elems[gi];
                    let q = g[0].mono.quotient_of(&t.mono);
                    let c = t.coef;
                    let tail = sub_mul(&self.order, self.field, &f[done..], c, &q, g);
                    f.truncate(done);
                    f.extend(tail);
                }
                None => done += 1,
            }
        }
        f
    }
}

#[derive(Clone, Debug)]
struct Pair {
    deg: i32,
    i: usize,
    j: usize,
    comp: u32,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the submodule generated by `gens`, all of which
/// must be homogeneous for the total degree of `order`.
pub fn groebner(gens: Vec<MVec>, order: &ModuleOrder, fld: PrimeField, weights: &[i32]) -> Vec<MVec> {
    let mut inputs: Vec<MVec> = gens.into_iter().filter(|g| !g.is_empty()).collect();
    for g in inputs.iter_mut() {
        make_monic(fld, g);
    }
    inputs.sort_by_key(|g| order.total_degree(&g[0]));
    let mut red = Reducer::new(order.clone(), fld);
    let mut pairs: Vec<Pair> = Vec::new();
    let mut next_input = 0;
    loop {
        let pd = pairs.iter().map(|p| p.deg).min();
        let gd = inputs.get(next_input).map(|g| order.total_degree(&g[0]));
        let d = match (pd, gd) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        let mut batch: Vec<Pair> = Vec::new();
        pairs.retain(|p| {
            if p.deg == d {
                batch.push(p.clone());
                false
            } else {
                true
            }
        });
        batch.sort_by_key(|p| (p.i, p.j));
        let mut candidates: Vec<MVec> = batch
            .iter()
            .map(|p| {
                let gi = &red.elems[p.i];
                let gj = &red.elems[p.j];
                let qi = gi[0].mono.quotient_of(&p.lcm);
                let qj = gj[0].mono.quotient_of(&p.lcm);
                let scaled: MVec = gi
                    .iter()
                    .map(|t| MTerm { comp: t.comp, mono: t.mono.mul(&qi), coef: t.coef })
                    .collect();
                sub_mul(order, fld, &scaled, 1, &qj, gj)
            })
            .collect();
        while next_input < inputs.len() && order.total_degree(&inputs[next_input][0]) == d {
            candidates.push(inputs[next_input].clone());
            next_input += 1;
        }
        for c in candidates {
            let mut h = red.reduce(c);
            if h.is_empty() {
                continue;
            }
            make_monic(fld, &mut h);
            let hi = red.push(h);
            update_pairs(&mut pairs, &red, hi, weights, order);
        }
    }
    interreduce(red, order, fld)
}

fn update_pairs(pairs: &mut Vec<Pair>, red: &Reducer, hi: usize, weights: &[i32], order: &ModuleOrder) {
    let h = &red.elems[hi][0];
    let hm = &h.mono;
    let comp = h.comp;
    let lcm_with = |i: usize| red.elems[i][0].mono.lcm(hm, weights);
    pairs.retain(|p| {
        if p.comp != comp || !hm.divides(&p.lcm) {
            return true;
        }
        lcm_with(p.i) == p.lcm || lcm_with(p.j) == p.lcm
    });
    let mut new: Vec<(usize, Monomial)> = red.by_comp[comp as usize]
        .iter()
        .copied()
        .filter(|&i| i != hi)
        .map(|i| (i, lcm_with(i)))
        .collect();
    // M-criterion: drop pairs whose lcm is a proper multiple of another's
    let keep: Vec<bool> = new
        .iter()
        .map(|(_, l)| !new.iter().any(|(_, l2)| l2 != l && l2.divides(l)))
        .collect();
    let mut filtered: Vec<(usize, Monomial)> = new
        .drain(..)
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();
    // F-criterion: one pair per distinct lcm
    filtered.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    filtered.dedup_by(|a, b| a.1 == b.1);
    for (i, l) in filtered {
        let deg = l.degree() + order.shifts[comp as usize];
        pairs.push(Pair { deg, i, j: hi, comp, lcm: l });
    }
}

fn interreduce(red: Reducer, order: &ModuleOrder, fld: PrimeField) -> Vec<MVec> {
    let elems = red.into_elems();
    // drop elements whose leading term is divisible by another's
    let mut minimal: Vec<MVec> = Vec::new();
    for (i, e) in elems.iter().enumerate() {
        let lt = &e[0];
        let redundant = elems.iter().enumerate().any(|(j, o)| {
            j != i
                && o[0].comp == lt.comp
                && o[0].mono.divides(&lt.mono)
                && (o[0].mono != lt.mono || j < i)
        });
        if !redundant {
            minimal.push(e.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let mut others = Reducer::new(order.clone(), fld);
        for (j, o) in minimal.iter().enumerate() {
            if j != i {
                others.push(o.clone());
            }
        }
        let head = minimal[i][0].clone();
        let mut tail = others.reduce(minimal[i][1..].to_vec());
        let mut v = vec![head];
        v.append(&mut tail);
        out.push(v);
    }
    out.sort_by(|a, b| order.cmp_terms(&a[0], &b[0]));
    out
}
