//! φ-adic expansions `f = a_0 φ^L + a_1 φ^(L-1) + ... + a_L` with
//! `deg a_j < deg φ`, and the digitwise construction of the expansion of a
//! product from the expansions of its factors.

use std::fmt;

use crate::error::{Error, Result};
use crate::intpoly::{BigIntPoly, ExtNat};
use crate::prime::Prime;

/// Expansion of a nonzero polynomial in powers of a monic `phi`.
///
/// `coeffs[0]` is `a_0`, the coefficient of the highest power `φ^L`, and is
/// never zero; inner coefficients may be.
#[derive(Clone, PartialEq, Eq)]
pub struct PhiExpansion {
    phi: BigIntPoly,
    coeffs: Vec<BigIntPoly>,
}

impl PhiExpansion {
    pub fn phi(&self) -> &BigIntPoly {
        &self.phi
    }

    pub fn coeffs(&self) -> &[BigIntPoly] {
        &self.coeffs
    }

    /// `a_j`.
    pub fn coeff(&self, j: usize) -> &BigIntPoly {
        &self.coeffs[j]
    }

    /// `L`, the exponent of the leading power of φ.
    pub fn length(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl fmt::Display for PhiExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.length();
        let mut first = true;
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match l - j {
                0 => write!(f, "({a})")?,
                1 => write!(f, "({a})*phi")?,
                k => write!(f, "({a})*phi^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PhiExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhiExpansion[phi = {}]({self})", self.phi)
    }
}

fn check_phi(phi: &BigIntPoly) -> Result<()> {
    if !phi.is_monic() {
        return Err(Error::NotMonic(phi.to_string()));
    }
    if phi.is_constant() {
        return Err(Error::Constant(phi.to_string()));
    }
    Ok(())
}

/// Expands `f` by repeated division by `phi`.
pub fn phi_expand(f: &BigIntPoly, phi: &BigIntPoly) -> Result<PhiExpansion> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_phi(phi)?;
    let mut digits = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.divmod_monic(phi)?;
        digits.push(r);
        rest = q;
    }
    digits.reverse();
    Ok(PhiExpansion {
        phi: phi.clone(),
        coeffs: digits,
    })
}

/// `Σ a_j φ^(L-j)`, by Horner's rule.
pub fn reconstruct(e: &PhiExpansion) -> BigIntPoly {
    e.coeffs
        .iter()
        .fold(BigIntPoly::zero(), |acc, a| &(&acc * &e.phi) + a)
}

/// One digit position `k` of the product construction: the raw convolution
/// coefficient `c_k = Σ a_i b_(k-i)` and its division `c_k = φ q_k + r_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductStep {
    pub c: BigIntPoly,
    pub q: BigIntPoly,
    pub r: BigIntPoly,
}

impl ProductStep {
    /// `v_p(c_k) = min(v_p(q_k), v_p(r_k))`, which holds because φ is monic.
    pub fn valuation_split_holds(&self, p: &Prime) -> bool {
        self.c.valuation(p) == self.q.valuation(p).min(self.r.valuation(p))
    }
}

/// Expansion of `f·g` built from the expansions of `f` and `g`:
///
/// 1. `c_k = Σ_i a_i b_(k-i)` for `k = 0..=l1+l2`;
/// 2. `c_k = φ q_k + r_k` by Euclidean division;
/// 3. `A_l = r_l`, `A_k = q_(k+1) + r_k`, and `A_(-1) = q_0`, which is zero
///    exactly when `deg(a_0 b_0) < deg φ`;
/// 4. `f·g = Σ_(k=-1..=l) A_k φ^(l-k)`.
///
/// A zero `A_(-1)` is dropped so the result starts at a nonzero digit.
pub fn phi_expand_product(fe: &PhiExpansion, ge: &PhiExpansion) -> Result<PhiExpansion> {
    phi_expand_product_traced(fe, ge).map(|(e, _)| e)
}

/// [`phi_expand_product`] that also checks the valuation split of every
/// step against `p`, reporting an internal error if it fails.
pub fn phi_expand_product_checked(
    fe: &PhiExpansion,
    ge: &PhiExpansion,
    p: &Prime,
) -> Result<PhiExpansion> {
    let (product, steps) = phi_expand_product_traced(fe, ge)?;
    if let Some(k) = steps.iter().position(|s| !s.valuation_split_holds(p)) {
        let s = &steps[k];
        return Err(Error::Internal(format!(
            "v_p(c_{k}) = {} but min(v_p(q_{k}), v_p(r_{k})) = {}",
            s.c.valuation(p),
            s.q.valuation(p).min(s.r.valuation(p))
        )));
    }
    Ok(product)
}

/// [`phi_expand_product`] together with the per-digit steps.
pub fn phi_expand_product_traced(
    fe: &PhiExpansion,
    ge: &PhiExpansion,
) -> Result<(PhiExpansion, Vec<ProductStep>)> {
    if fe.phi != ge.phi {
        return Err(Error::PhiMismatch(fe.phi.to_string(), ge.phi.to_string()));
    }
    let phi = &fe.phi;
    let (l1, l2) = (fe.length(), ge.length());
    let l = l1 + l2;

    let mut steps = Vec::with_capacity(l + 1);
    for k in 0..=l {
        let lo = k.saturating_sub(l2);
        let hi = k.min(l1);
        let c = (lo..=hi).fold(BigIntPoly::zero(), |acc, i| {
            &acc + &(fe.coeffs[i].mul(&ge.coeffs[k - i]))
        });
        let (q, r) = c.divmod_monic(phi)?;
        steps.push(ProductStep { c, q, r });
    }

    let lead_deg = fe.coeffs[0].mul(&ge.coeffs[0]).degree().unwrap_or(0);
    let carry = if lead_deg < phi.degree().unwrap_or(0) {
        BigIntPoly::zero()
    } else {
        steps[0].q.clone()
    };

    let mut digits = Vec::with_capacity(l + 2);
    digits.push(carry);
    for k in 0..l {
        digits.push(&steps[k + 1].q + &steps[k].r);
    }
    digits.push(steps[l].r.clone());

    let first = digits
        .iter()
        .position(|a| !a.is_zero())
        .ok_or(Error::ZeroPolynomial)?;
    digits.drain(..first);
    if digits.iter().any(|a| a.degree() >= phi.degree()) {
        return Err(Error::Internal(
            "product digit not reduced modulo phi".into(),
        ));
    }
    Ok((
        PhiExpansion {
            phi: phi.clone(),
            coeffs: digits,
        },
        steps,
    ))
}

/// `v_p(a_j)` for every digit.
pub fn digit_valuations(e: &PhiExpansion, p: &Prime) -> Vec<ExtNat> {
    e.coeffs.iter().map(|a| a.valuation(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> BigIntPoly {
        BigIntPoly::from_i64s(c)
    }

    fn septic() -> BigIntPoly {
        poly(&[24, 48, 6, 9, 18, 3, 0, 1])
    }

    #[test]
    fn septic_expansions() {
        let phi2 = poly(&[1, 1, 1]);
        let e = phi_expand(&septic(), &phi2).unwrap();
        let expected = [
            poly(&[-3, 1]),
            poly(&[17, 6]),
            poly(&[-14, -28]),
            poly(&[24, 58]),
        ];
        assert_eq!(e.coeffs(), &expected);
        assert_eq!(reconstruct(&e), septic());

        let ex = phi_expand(&septic(), &BigIntPoly::x()).unwrap();
        let digits: Vec<_> = ex.coeffs().iter().map(|a| a.coeff(0)).collect();
        let expected: Vec<_> = [1, 0, 3, 18, 9, 6, 48, 24]
            .iter()
            .map(|&c| c.into())
            .collect();
        assert_eq!(digits, expected);
        assert_eq!(reconstruct(&ex), septic());
    }

    #[test]
    fn sextic_expansion() {
        let f = poly(&[48, 0, 0, 36, 0, 0, 1]);
        let e = phi_expand(&f, &BigIntPoly::x()).unwrap();
        assert_eq!(e.length(), 6);
        for (j, a) in e.coeffs().iter().enumerate() {
            let expected = match j {
                0 => 1,
                3 => 36,
                6 => 48,
                _ => 0,
            };
            assert_eq!(*a, poly(&[expected]));
        }
    }

    #[test]
    fn short_polynomial_is_its_own_digit() {
        let e = phi_expand(&poly(&[5, 2]), &poly(&[1, 0, 1])).unwrap();
        assert_eq!(e.length(), 0);
        assert_eq!(reconstruct(&e), poly(&[5, 2]));
    }

    #[test]
    fn expand_errors() {
        assert_eq!(
            phi_expand(&BigIntPoly::zero(), &BigIntPoly::x()),
            Err(Error::ZeroPolynomial)
        );
        assert!(matches!(
            phi_expand(&poly(&[1, 1]), &poly(&[1, 2])),
            Err(Error::NotMonic(_))
        ));
        assert!(matches!(
            phi_expand(&poly(&[1, 1]), &poly(&[1])),
            Err(Error::Constant(_))
        ));
    }

    #[test]
    fn product_examples() {
        let phi = poly(&[1, 1, 1]);
        let fe = phi_expand(&poly(&[2, 0, 1]), &phi).unwrap();
        let ge = phi_expand(&poly(&[0, 1, 1]), &phi).unwrap();
        let direct = phi_expand(&poly(&[2, 0, 1]).mul(&poly(&[0, 1, 1])), &phi).unwrap();
        assert_eq!(phi_expand_product(&fe, &ge).unwrap(), direct);

        let one = phi_expand(&BigIntPoly::one(), &phi).unwrap();
        assert_eq!(phi_expand_product(&fe, &one).unwrap(), fe);

        let other = phi_expand(&poly(&[1, 1]), &BigIntPoly::x()).unwrap();
        assert!(matches!(
            phi_expand_product(&fe, &other),
            Err(Error::PhiMismatch(..))
        ));
    }

    fn small_poly(max_len: usize) -> impl Strategy<Value = BigIntPoly> {
        prop::collection::vec(-30i64..30, 1..max_len)
            .prop_map(|c| BigIntPoly::from_i64s(&c))
            .prop_filter("nonzero", |p| !p.is_zero())
    }

    fn monic_phi() -> impl Strategy<Value = BigIntPoly> {
        prop::collection::vec(-9i64..9, 1..5).prop_map(|mut c| {
            c.push(1);
            BigIntPoly::from_i64s(&c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn expansion_round_trips(f in small_poly(13), phi in monic_phi()) {
            let e = phi_expand(&f, &phi).unwrap();
            prop_assert!(!e.coeff(0).is_zero());
            prop_assert!(e.coeffs().iter().all(|a| a.degree() < phi.degree()));
            prop_assert_eq!(reconstruct(&e), f);
        }

        #[test]
        fn product_matches_direct_expansion(
            f in small_poly(9),
            g in small_poly(9),
            phi in monic_phi(),
            pi in 0usize..3,
        ) {
            let p = Prime::new([2u32, 3, 5][pi]).unwrap();
            let fe = phi_expand(&f, &phi).unwrap();
            let ge = phi_expand(&g, &phi).unwrap();
            let product = phi_expand_product_checked(&fe, &ge, &p).unwrap();
            prop_assert_eq!(product, phi_expand(&f.mul(&g), &phi).unwrap());
        }
    }
}
