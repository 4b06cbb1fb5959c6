use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest `alpha` for which Stirling numbers of the first kind fit in 64 bits.
pub const STIRLING_MAX: u32 = 20;

/// Unsigned Stirling number of the first kind `[alpha, m]`.
///
/// Built from `[a+1, m] = a [a, m] + [a, m-1]`. Out-of-range `m` gives 0.
pub fn stirling_first_unsigned(alpha: u32, m: i64) -> Result<u64> {
    if alpha > STIRLING_MAX {
        return Err(Error::Domain(format!(
            "Stirling numbers supported for alpha <= {STIRLING_MAX}, got {alpha}"
        )));
    }
    if m < 0 || m > alpha as i64 {
        return Ok(0);
    }
    let mut row = vec![0u64; alpha as usize + 1];
    row[0] = 1;
    for a in 0..alpha as usize {
        for j in (1..=a + 1).rev() {
            row[j] = a as u64 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    Ok(row[m as usize])
}

/// Signed Stirling number `s(alpha, m) = (-1)^(alpha-m) [alpha, m]`.
pub fn stirling_first_signed(alpha: u32, m: i64) -> Result<i64> {
    let u = stirling_first_unsigned(alpha, m)? as i64;
    Ok(if (alpha as i64 - m).rem_euclid(2) == 0 { u } else { -u })
}

/// Stirling number of the first kind, signed or unsigned.
pub fn stirling_first(alpha: u32, m: i64, signed: bool) -> Result<i64> {
    if signed {
        stirling_first_signed(alpha, m)
    } else {
        Ok(stirling_first_unsigned(alpha, m)? as i64)
    }
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: Complex64, k: u32) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (a + j as f64))
}

/// Surface area `|S^(n-1)| = 2 pi^(n/2) / Gamma(n/2)` of the unit sphere in `R^n`.
pub fn sphere_area(n: u32) -> f64 {
    assert!(n >= 1, "sphere_area needs n >= 1");
    match n {
        1 => 2.0,
        2 => 2.0 * PI,
        _ => 2.0 * PI * sphere_area(n - 2) / (n as f64 - 2.0),
    }
}

/// Volume of the ball `K(r)` in `R^n`.
pub fn ball_volume(n: u32, r: f64) -> f64 {
    sphere_area(n) / n as f64 * r.powi(n as i32)
}

/// Binomial coefficient in exact integer arithmetic.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    acc
}

/// Dimension `N(l, n)` of the degree-`l` spherical harmonics on `S^(n-1)`.
///
/// `N(0, n) = 1` and `N(l, n) = (n+2l-2)/l * binom(n+l-3, l-1)` otherwise.
pub fn harmonic_dim(l: u32, n: u32) -> u64 {
    assert!(n >= 2, "harmonic_dim needs n >= 2");
    if l == 0 {
        return 1;
    }
    let (l, n) = (l as u64, n as u64);
    let num = (n + 2 * l - 2) as u128 * binomial(n + l - 3, l - 1);
    (num / l as u128) as u64
}
