//! Dense univariate polynomials over F_p (coefficients low to high), enough
//! to split minimal polynomials into coprime factors.

use rand::Rng;

use crate::field::PrimeField;

pub type UPoly = Vec<u32>;

pub fn trim(mut a: UPoly) -> UPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(f: PrimeField, a: &[u32], b: &[u32]) -> UPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
}

pub fn sub(f: PrimeField, a: &[u32], b: &[u32]) -> UPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
}

pub fn mul(f: PrimeField, a: &[u32], b: &[u32]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// `(q, r)` with `a = q b + r`, `deg r < deg b`.
pub fn divrem(f: PrimeField, a: &[u32], b: &[u32]) -> (UPoly, UPoly) {
    let db = deg(b).expect("division by zero polynomial");
    let inv = f.inv(b[db]);
    let mut r = trim(a.to_vec());
    let mut q = vec![0u32; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], inv);
        q[dr - db] = c;
        for (i, &y) in b.iter().enumerate().take(db + 1) {
            r[dr - db + i] = f.sub(r[dr - db + i], f.mul(c, y));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(f: PrimeField, a: &[u32]) -> UPoly {
    match deg(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(a[d]);
            a[..=d].iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

pub fn gcd(f: PrimeField, a: &[u32], b: &[u32]) -> UPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// `(g, u, v)` with `u a + v b = g = gcd(a, b)` monic.
pub fn ext_gcd(f: PrimeField, a: &[u32], b: &[u32]) -> (UPoly, UPoly, UPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1): (UPoly, UPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (UPoly, UPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    let d = deg(&r0).expect("gcd of zero polynomials");
    let inv = f.inv(r0[d]);
    let sc = |p: &UPoly| trim(p.iter().map(|&c| f.mul(c, inv)).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

pub fn powmod(f: PrimeField, base: &[u32], mut e: u128, m: &[u32]) -> UPoly {
    let mut result: UPoly = divrem(f, &[1], m).1;
    let mut b = divrem(f, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            result = divrem(f, &mul(f, &result, &b), m).1;
        }
        b = divrem(f, &mul(f, &b, &b), m).1;
        e >>= 1;
    }
    result
}

pub fn derivative(f: PrimeField, a: &[u32]) -> UPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, (i as u64 % f.characteristic() as u64) as u32)).collect())
}

pub fn eval(f: PrimeField, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// A proper monic factor of a squarefree `r` with at least two irreducible
/// factors, by distinct-degree then equal-degree splitting.
fn proper_factor(f: PrimeField, r: &[u32], rng: &mut impl Rng) -> Option<UPoly> {
    let n = deg(r)?;
    let p = f.characteristic() as u128;
    let x: UPoly = vec![0, 1];
    let mut xp = x.clone();
    for d in 1..=n {
        xp = powmod(f, &xp, p, r);
        let g = gcd(f, r, &sub(f, &xp, &x));
        let dg = deg(&g).unwrap_or(0);
        if dg == 0 {
            continue;
        }
        if dg < n {
            return Some(g);
        }
        if dg == d {
            return None; // r is irreducible
        }
        // every irreducible factor has degree d
        return equal_degree_split(f, r, d, rng);
    }
    None
}

fn equal_degree_split(f: PrimeField, g: &[u32], d: usize, rng: &mut impl Rng) -> Option<UPoly> {
    let n = deg(g)?;
    let p = f.characteristic();
    for _ in 0..200 {
        let b: UPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&b).unwrap_or(0) == 0 {
            continue;
        }
        // b^((p^d - 1)/2) = (b · b^p ··· b^(p^(d-1)))^((p - 1)/2)
        let mut t = b.clone();
        let mut acc: UPoly = vec![1];
        for _ in 0..d {
            acc = divrem(f, &mul(f, &acc, &t), g).1;
            t = powmod(f, &t, p as u128, g);
        }
        let h = if p == 2 { acc } else { sub(f, &powmod(f, &acc, (p as u128 - 1) / 2, g), &[1]) };
        let c = gcd(f, g, &h);
        let dc = deg(&c).unwrap_or(0);
        if dc > 0 && dc < n {
            return Some(c);
        }
    }
    None
}

/// Splits `mu = g h` with `g`, `h` coprime and nonconstant, when possible
/// (i.e. when `mu` is not a power of one irreducible).
pub fn split_coprime(f: PrimeField, mu: &[u32], rng: &mut impl Rng) -> Option<(UPoly, UPoly)> {
    let mu = monic(f, mu);
    let n = deg(&mu)?;
    if n < 2 {
        return None;
    }
    let g0 = gcd(f, &mu, &derivative(f, &mu));
    let r = divrem(f, &mu, &g0).0;
    let factor = proper_factor(f, &monic(f, &r), rng)?;
    // collect the full multiplicity of the factor's primes
    let mut g = gcd(f, &mu, &factor);
    loop {
        let next = gcd(f, &mu, &mul(f, &g, &factor));
        if deg(&next) == deg(&g) {
            break;
        }
        g = next;
    }
    let h = divrem(f, &mu, &g).0;
    if deg(&h).unwrap_or(0) == 0 {
        return None;
    }
    Some((g, monic(f, &h)))
}
