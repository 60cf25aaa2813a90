//! Benchmark fixtures shared by the criterion targets.

use ramify_core::BigIntPoly;

/// `(name, coefficients from the constant term up, prime)`.
pub const FIXTURES: &[(&str, &[i64], u32)] = &[
    ("two_valuations_deg7", &[24, 48, 6, 9, 18, 3, 0, 1], 2),
    ("one_valuation_deg6", &[48, 0, 0, 36, 0, 0, 1], 2),
    (
        "slope_violation_deg9",
        &[12, 6, 18, 3, 12, 24, 6, 48, 0, 1],
        2,
    ),
    ("eisenstein_quartic", &[2, -8, 8, -2, 1], 2),
];

pub fn fixture(coeffs: &[i64]) -> BigIntPoly {
    BigIntPoly::from_i64s(coeffs)
}
