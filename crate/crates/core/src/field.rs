//! Finite fields as runtime contexts and dense polynomial arithmetic over
//! them. Polynomials are coefficient vectors, constant term first, with no
//! trailing zeros.

use std::fmt::Debug;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub(crate) trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Number of elements.
    fn order(&self) -> BigUint;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PrimeField {
    pub p: BigUint,
}

impl Field for PrimeField {
    type Elem = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }

    fn one(&self) -> BigUint {
        BigUint::one()
    }

    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let s = a + b;
        if s >= self.p {
            s - &self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            &self.p - b + a
        }
    }

    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.p
    }

    fn inv(&self, a: &BigUint) -> Option<BigUint> {
        if a.is_zero() {
            return None;
        }
        // Fermat: a^(p-2)
        Some(a.modpow(&(&self.p - BigUint::from(2u32)), &self.p))
    }

    fn order(&self) -> BigUint {
        self.p.clone()
    }
}

/// `F_p[x]/(modulus)` for a monic irreducible `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ExtField {
    pub base: PrimeField,
    pub modulus: Vec<BigUint>,
}

impl ExtField {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn reduce(&self, a: &[BigUint]) -> Vec<BigUint> {
        rem(&self.base, a, &self.modulus)
    }
}

impl Field for ExtField {
    type Elem = Vec<BigUint>;

    fn zero(&self) -> Vec<BigUint> {
        Vec::new()
    }

    fn one(&self) -> Vec<BigUint> {
        vec![BigUint::one()]
    }

    fn is_zero(&self, a: &Vec<BigUint>) -> bool {
        a.is_empty()
    }

    fn add(&self, a: &Vec<BigUint>, b: &Vec<BigUint>) -> Vec<BigUint> {
        add(&self.base, a, b)
    }

    fn sub(&self, a: &Vec<BigUint>, b: &Vec<BigUint>) -> Vec<BigUint> {
        sub(&self.base, a, b)
    }

    fn mul(&self, a: &Vec<BigUint>, b: &Vec<BigUint>) -> Vec<BigUint> {
        self.reduce(&mul(&self.base, a, b))
    }

    fn inv(&self, a: &Vec<BigUint>) -> Option<Vec<BigUint>> {
        if a.is_empty() {
            return None;
        }
        // s*a + t*modulus = g, g a nonzero constant since the modulus is irreducible
        let (g, s) = half_ext_gcd(&self.base, a, &self.modulus);
        if g.len() != 1 {
            return None;
        }
        let c = self.base.inv(&g[0])?;
        Some(scale(&self.base, &s, &c))
    }

    fn order(&self) -> BigUint {
        self.base.p.pow(self.degree() as u32)
    }
}

pub(crate) fn trim<K: Field>(k: &K, mut a: Vec<K::Elem>) -> Vec<K::Elem> {
    while a.last().is_some_and(|c| k.is_zero(c)) {
        a.pop();
    }
    a
}

pub(crate) fn add<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    let n = a.len().max(b.len());
    let zero = k.zero();
    let out = (0..n)
        .map(|i| k.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(k, out)
}

pub(crate) fn sub<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    let n = a.len().max(b.len());
    let zero = k.zero();
    let out = (0..n)
        .map(|i| k.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(k, out)
}

pub(crate) fn scale<K: Field>(k: &K, a: &[K::Elem], c: &K::Elem) -> Vec<K::Elem> {
    trim(k, a.iter().map(|x| k.mul(x, c)).collect())
}

pub(crate) fn mul<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(k, out)
}

/// Euclidean division; `b` must be nonzero.
pub(crate) fn divrem<K: Field>(
    k: &K,
    a: &[K::Elem],
    b: &[K::Elem],
) -> (Vec<K::Elem>, Vec<K::Elem>) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = k
        .inv(&b[db])
        .expect("divisor has a nonzero leading coefficient");
    let mut r = a.to_vec();
    let mut q = vec![k.zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = k.mul(&r[i + db], &lead_inv);
        if k.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = k.sub(&r[i + j], &k.mul(&c, bj));
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(k, q), trim(k, r))
}

pub(crate) fn rem<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    divrem(k, a, b).1
}

pub(crate) fn monic<K: Field>(k: &K, a: &[K::Elem]) -> Vec<K::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => scale(k, a, &k.inv(lc).expect("nonzero leading coefficient")),
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub(crate) fn gcd<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    monic(k, &a)
}

/// Returns `(g, s)` with `s*a ≡ g (mod b)`, `g = gcd(a, b)` up to a unit.
fn half_ext_gcd<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> (Vec<K::Elem>, Vec<K::Elem>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![k.one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1);
        let s = sub(k, &s0, &mul(k, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

/// `base^exp mod m`.
pub(crate) fn powmod<K: Field>(
    k: &K,
    base: &[K::Elem],
    exp: &BigUint,
    m: &[K::Elem],
) -> Vec<K::Elem> {
    let mut acc = rem(k, &[k.one()], m);
    let base = rem(k, base, m);
    for i in (0..exp.bits()).rev() {
        acc = rem(k, &mul(k, &acc, &acc), m);
        if exp.bit(i) {
            acc = rem(k, &mul(k, &acc, &base), m);
        }
    }
    acc
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut t = 2;
    while t * t <= n {
        if n.is_multiple_of(t) {
            out.push(t);
            while n.is_multiple_of(t) {
                n /= t;
            }
        }
        t += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `a` of degree `n` is irreducible over `F_q` iff
/// `Y^(q^n) ≡ Y (mod a)` and `gcd(Y^(q^(n/t)) - Y, a) = 1` for every prime
/// `t | n`. `a` must be nonconstant.
pub(crate) fn is_irreducible<K: Field>(k: &K, a: &[K::Elem]) -> bool {
    let a = monic(k, a);
    let n = a.len() - 1;
    debug_assert!(n >= 1);
    if n == 1 {
        return true;
    }
    let q = k.order();
    let y = vec![k.zero(), k.one()];
    // frob[i] = Y^(q^i) mod a
    let mut frob = vec![rem(k, &y, &a)];
    for i in 1..=n {
        let next = powmod(k, &frob[i - 1], &q, &a);
        frob.push(next);
    }
    if frob[n] != rem(k, &y, &a) {
        return false;
    }
    prime_divisors(n).into_iter().all(|t| {
        let g = gcd(k, &sub(k, &frob[n / t], &y), &a);
        g.len() == 1
    })
}
