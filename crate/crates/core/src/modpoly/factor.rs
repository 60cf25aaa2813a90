//! Factorization over `F_p`: squarefree decomposition, distinct-degree
//! splitting, then Cantor-Zassenhaus for the equal-degree parts.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PrimeFieldPoly;
use crate::error::{Error, Result};
use crate::field::{self, Field, PrimeField};

type Raw = Vec<BigUint>;

/// Monic irreducible factors of a monic nonconstant polynomial, with
/// multiplicities, in canonical order (see
/// [`PrimeFieldPoly::canonical_cmp`]).
///
/// The seed drives the random equal-degree splitting only; the output does
/// not depend on it.
pub fn fp_factor(a: &PrimeFieldPoly, seed: u64) -> Result<Vec<(PrimeFieldPoly, usize)>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !a.is_monic() {
        return Err(Error::NotMonic(a.to_string()));
    }
    if a.degree() == Some(0) {
        return Err(Error::Constant(a.to_string()));
    }
    let k = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in squarefree(&k, &a.coeffs) {
        for (group, d) in distinct_degree(&k, part) {
            for factor in equal_degree(&k, group, d, &mut rng) {
                out.push((a.wrap(factor), mult));
            }
        }
    }
    out.sort_by(|x, y| x.0.canonical_cmp(&y.0));
    Ok(out)
}

fn is_one(a: &Raw) -> bool {
    a.len() == 1 && a[0].is_one()
}

fn derivative(k: &PrimeField, a: &Raw) -> Raw {
    let coeffs = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| k.mul(c, &(BigUint::from(i) % &k.p)))
        .collect();
    field::trim(k, coeffs)
}

fn exact_div(k: &PrimeField, a: &Raw, b: &Raw) -> Raw {
    let (q, r) = field::divrem(k, a, b);
    debug_assert!(r.is_empty());
    q
}

/// Squarefree parts `(g_i, i)` with `a = ∏ g_i^i`, every `g_i` monic,
/// squarefree and nonconstant.
fn squarefree(k: &PrimeField, a: &Raw) -> Vec<(Raw, usize)> {
    let mut out = Vec::new();
    let mut c = field::gcd(k, a, &derivative(k, a));
    let mut w = exact_div(k, a, &c);
    let mut i = 1;
    while !is_one(&w) {
        let y = field::gcd(k, &w, &c);
        let fac = exact_div(k, &w, &y);
        if !is_one(&fac) {
            out.push((fac, i));
        }
        w = y;
        c = exact_div(k, &c, &w);
        i += 1;
    }
    if !is_one(&c) {
        // c is a p-th power: c(x) = r(x^p), and r^p = r(x^p) coefficientwise
        let p = k.p.to_usize().expect("a p-th power has degree at least p");
        let root: Raw = c.iter().step_by(p).cloned().collect();
        for (g, j) in squarefree(k, &root) {
            out.push((g, j * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into `(product of all irreducible
/// factors of degree d, d)`.
fn distinct_degree(k: &PrimeField, mut g: Raw) -> Vec<(Raw, usize)> {
    let x: Raw = vec![BigUint::zero(), BigUint::one()];
    let mut out = Vec::new();
    let mut h = field::rem(k, &x, &g);
    let mut d = 1;
    while g.len() > 2 * d {
        h = field::powmod(k, &h, &k.p, &g);
        let t = field::gcd(k, &g, &field::sub(k, &h, &x));
        if !is_one(&t) {
            g = exact_div(k, &g, &t);
            h = field::rem(k, &h, &g);
            out.push((t, d));
        }
        d += 1;
    }
    if g.len() > 1 {
        let deg = g.len() - 1;
        out.push((g, deg));
    }
    out
}

fn random_below(rng: &mut ChaCha8Rng, n: &BigUint) -> BigUint {
    match n.to_u64() {
        Some(small) => BigUint::from(rng.random_range(0..small)),
        None => {
            let words = (n.bits() / 32 + 2) as usize;
            let digits: Vec<u32> = (0..words).map(|_| rng.random()).collect();
            BigUint::new(digits) % n
        }
    }
}

/// Splits a product of distinct monic irreducibles of common degree `d`.
fn equal_degree(k: &PrimeField, f: Raw, d: usize, rng: &mut ChaCha8Rng) -> Vec<Raw> {
    let n = f.len() - 1;
    if n == d {
        return vec![f];
    }
    let two = BigUint::from(2u32);
    loop {
        let u = field::trim(k, (0..n).map(|_| random_below(rng, &k.p)).collect());
        if u.len() < 2 {
            continue;
        }
        let v = if k.p == two {
            // trace of F_{2^d} over F_2: u + u^2 + ... + u^(2^(d-1))
            let mut acc = u.clone();
            let mut pow = u.clone();
            for _ in 1..d {
                pow = field::rem(k, &field::mul(k, &pow, &pow), &f);
                acc = field::add(k, &acc, &pow);
            }
            acc
        } else {
            let e = (k.p.pow(d as u32) - BigUint::one()) / &two;
            let r = field::powmod(k, &u, &e, &f);
            field::sub(k, &r, &[BigUint::one()])
        };
        let g = field::gcd(k, &f, &v);
        if g.len() > 1 && g.len() < f.len() {
            let rest = exact_div(k, &f, &g);
            let mut out = equal_degree(k, g, d, rng);
            out.extend(equal_degree(k, rest, d, rng));
            return out;
        }
    }
}
