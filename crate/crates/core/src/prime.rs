//! Validated rational primes.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Bases for which Miller-Rabin is deterministic below 2^64.
const WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// A rational prime `p`.
///
/// Primes below `2^64` are certified by a deterministic Miller-Rabin test.
/// Larger values only pass a probable-prime test and carry
/// `certified() == false`, which reports surface as a warning.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Prime {
    value: Arc<BigUint>,
    certified: bool,
}

impl Prime {
    pub fn new(value: impl Into<BigUint>) -> Result<Self> {
        let value = value.into();
        if value < BigUint::from(2u32) {
            return Err(Error::PrimeTooSmall(value.to_string()));
        }
        if !probable_prime(&value) {
            return Err(Error::NotPrime(value.to_string()));
        }
        let certified = value.bits() <= 64;
        Ok(Prime {
            value: Arc::new(value),
            certified,
        })
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// `true` when primality was proven rather than assumed.
    pub fn certified(&self) -> bool {
        self.certified
    }

    /// The prime as a machine word, when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prime({})", self.value)
    }
}

fn probable_prime(n: &BigUint) -> bool {
    for &w in &WITNESSES {
        let w = BigUint::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut r = 0u32;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    'witness: for &w in &WITNESSES {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..r {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
