//! Dense exact linear algebra over F_p.
//!
//! The workhorse is [`Echelon`], an incrementally built semi-echelon basis of a
//! subspace of `F_p^n`. Reducing a vector against it gives membership tests,
//! quotient coordinates (the entries at non-pivot positions), and, with
//! tracking switched on, explicit solutions of linear systems.

use crate::field::PrimeField;

/// Row-major dense matrix.
pub type Mat = Vec<Vec<u32>>;

#[derive(Clone, Debug)]
pub struct Echelon {
    f: PrimeField,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    is_pivot: Vec<bool>,
    // combos[k] expresses rows[k] in terms of the inserted vectors
    combos: Option<Vec<Vec<u32>>>,
    inserted: usize,
}

impl Echelon {
    pub fn new(f: PrimeField, dim: usize) -> Self {
        Echelon {
            f,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            is_pivot: vec![false; dim],
            combos: None,
            inserted: 0,
        }
    }

    /// An echelon basis that remembers how each row arose from the inserted
    /// vectors, so that [`Echelon::express`] can return coefficients.
    pub fn tracked(f: PrimeField, dim: usize) -> Self {
        let mut e = Self::new(f, dim);
        e.combos = Some(Vec::new());
        e
    }

    pub fn from_vectors<'a>(f: PrimeField, dim: usize, vs: impl IntoIterator<Item = &'a Vec<u32>>) -> Self {
        let mut e = Self::new(f, dim);
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.is_pivot[i]
    }

    /// Positions that are not pivots; these index a basis of the quotient.
    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.dim).filter(|&i| !self.is_pivot[i]).collect()
    }

    fn reduce_with(&self, v: &mut [u32], mut coeffs: Option<&mut Vec<u32>>) {
        let f = self.f;
        for (k, row) in self.rows.iter().enumerate() {
            let piv = self.pivots[k];
            let c = v[piv];
            if c == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row.iter()).skip(piv) {
                if r != 0 {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
            if let Some(cs) = coeffs.as_deref_mut() {
                cs[k] = f.add(cs[k], c);
            }
        }
    }

    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce_with(&mut w, None);
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the quotient by this subspace, indexed by
    /// [`Echelon::free_positions`].
    pub fn quotient_coords(&self, v: &[u32]) -> Vec<u32> {
        let w = self.reduce(v);
        (0..self.dim).filter(|&i| !self.is_pivot[i]).map(|i| w[i]).collect()
    }

    /// Inserts `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        self.insert_inner(v).is_none()
    }

    /// Inserts `v`; when `v` is already in the span and tracking is on, the
    /// returned vector is a relation among the inserted vectors (with
    /// coefficient 1 on `v` itself).
    pub fn insert_inner(&mut self, mut v: Vec<u32>) -> Option<Vec<u32>> {
        debug_assert_eq!(v.len(), self.dim);
        let f = self.f;
        let idx = self.inserted;
        self.inserted += 1;
        let mut used = vec![0u32; self.rows.len()];
        self.reduce_with(&mut v, Some(&mut used));
        // combination of inserted vectors equal to the reduced v
        let combo = self.combos.as_ref().map(|combos| {
            let mut c = vec![0u32; idx + 1];
            c[idx] = 1;
            for (k, &u) in used.iter().enumerate() {
                if u != 0 {
                    for (j, &x) in combos[k].iter().enumerate() {
                        if x != 0 {
                            c[j] = f.sub(c[j], f.mul(u, x));
                        }
                    }
                }
            }
            c
        });
        match v.iter().position(|&x| x != 0) {
            None => Some(combo.unwrap_or_default()),
            Some(piv) => {
                let inv = f.inv(v[piv]);
                for x in v.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                if let (Some(combos), Some(mut c)) = (self.combos.as_mut(), combo) {
                    for x in c.iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                    combos.push(c);
                }
                self.is_pivot[piv] = true;
                self.pivots.push(piv);
                self.rows.push(v);
                None
            }
        }
    }

    /// Coefficients `c` (one per inserted vector) with `sum c_i v_i = target`,
    /// or `None` when the target is outside the span. Requires tracking.
    pub fn express(&self, target: &[u32]) -> Option<Vec<u32>> {
        let combos = self.combos.as_ref().expect("express requires a tracked echelon");
        let f = self.f;
        let mut w = target.to_vec();
        let mut used = vec![0u32; self.rows.len()];
        self.reduce_with(&mut w, Some(&mut used));
        if w.iter().any(|&x| x != 0) {
            return None;
        }
        let mut c = vec![0u32; self.inserted];
        for (k, &u) in used.iter().enumerate() {
            if u != 0 {
                for (j, &x) in combos[k].iter().enumerate() {
                    if x != 0 {
                        c[j] = f.add(c[j], f.mul(u, x));
                    }
                }
            }
        }
        Some(c)
    }
}

/// Basis of `{x : sum_j x_j cols[j] = 0}`.
pub fn kernel_of_columns(f: PrimeField, target_dim: usize, cols: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut e = Echelon::tracked(f, target_dim);
    let mut ker = Vec::new();
    for c in cols {
        if let Some(rel) = e.insert_inner(c.clone()) {
            let mut v = rel;
            v.resize(cols.len(), 0);
            ker.push(v);
        }
    }
    ker
}

/// Solves `sum_j x_j cols[j] = target`.
pub fn solve_columns(f: PrimeField, target_dim: usize, cols: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    let mut e = Echelon::tracked(f, target_dim);
    for c in cols {
        e.insert_inner(c.clone());
    }
    e.express(target).map(|mut x| {
        x.resize(cols.len(), 0);
        x
    })
}

pub fn rank_of(f: PrimeField, dim: usize, vs: &[Vec<u32>]) -> usize {
    Echelon::from_vectors(f, dim, vs.iter()).rank()
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![0; c]; r]
}

pub fn mat_mul(f: PrimeField, a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = zeros(n, m);
    for i in 0..n {
        for (k, &aik) in a[i].iter().enumerate() {
            if aik == 0 {
                continue;
            }
            for j in 0..m {
                let bkj = b[k][j];
                if bkj != 0 {
                    out[i][j] = f.add(out[i][j], f.mul(aik, bkj));
                }
            }
        }
    }
    out
}

pub fn mat_vec(f: PrimeField, a: &Mat, v: &[u32]) -> Vec<u32> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
        })
        .collect()
}

pub fn vec_add(f: PrimeField, a: &mut [u32], b: &[u32], scale: u32) {
    if scale == 0 {
        return;
    }
    for (x, &y) in a.iter_mut().zip(b) {
        if y != 0 {
            *x = f.add(*x, f.mul(scale, y));
        }
    }
}

pub fn mat_add(f: PrimeField, a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| f.add(x, y)).collect())
        .collect()
}

pub fn mat_scale(f: PrimeField, a: &Mat, c: u32) -> Mat {
    a.iter().map(|r| r.iter().map(|&x| f.mul(x, c)).collect()).collect()
}

pub fn transpose(a: &Mat) -> Mat {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn kernel_and_solve() {
        let f = f();
        // columns (1,0), (0,1), (1,1)
        let cols = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let ker = kernel_of_columns(f, 2, &cols);
        assert_eq!(ker.len(), 1);
        let k = &ker[0];
        let mut s = vec![0, 0];
        for (j, c) in cols.iter().enumerate() {
            vec_add(f, &mut s, c, k[j]);
        }
        assert!(is_zero(&s));
        let x = solve_columns(f, 2, &cols[..2], &[3, 4]).unwrap();
        assert_eq!(x, vec![3, 4]);
        assert!(solve_columns(f, 2, &cols[..1], &[0, 1]).is_none());
    }

    #[test]
    fn quotient_coordinates() {
        let f = f();
        let e = Echelon::from_vectors(f, 3, [vec![1, 1, 0]].iter());
        assert_eq!(e.free_positions(), vec![1, 2]);
        assert_eq!(e.quotient_coords(&[1, 0, 0]), vec![100, 0]);
    }
}
