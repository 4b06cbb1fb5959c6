use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Stirling series coefficients B_{2k}/(2k(2k-1)).
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

fn ln_gamma_right(z: Complex64) -> Complex64 {
    if z.norm() > 20.0 {
        // Stirling series; the truncation error is far below rounding for |z| > 20.
        let inv = z.inv();
        let inv2 = inv * inv;
        let mut corr = Complex64::new(0.0, 0.0);
        let mut pow = inv;
        for c in STIRLING {
            corr += pow * c;
            pow *= inv2;
        }
        return (z - 0.5) * z.ln() - z + HALF_LN_2PI + corr;
    }
    let zm = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (zm + i as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    HALF_LN_2PI + (zm + 0.5) * t.ln() - t + x.ln()
}

/// `ln sin(w)` without overflow for large `|Im w|`.
fn ln_sin(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im > 15.0 {
        -i * w + Complex64::new(0.0, 0.5).ln() + (1.0 - (2.0 * i * w).exp()).ln()
    } else if w.im < -15.0 {
        i * w + Complex64::new(0.0, -0.5).ln() + (1.0 - (-2.0 * i * w).exp()).ln()
    } else {
        w.sin().ln()
    }
}

/// Logarithm of the gamma function on the complex plane.
///
/// Lanczos (g = 7) for moderate `|z|`, the Stirling series for `|z| > 20`, and
/// the reflection formula for `Re z < 0.5`. Only `exp` of the result and
/// differences of results are meaningful across branch cuts; the imaginary
/// part may differ from the principal log by a multiple of `2 pi`.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.re <= 0.5 {
        let nearest = z.re.round();
        if nearest <= 0.0 && (z.re - nearest).abs() < 1e-14 && z.im.abs() < 1e-14 {
            return Err(Error::GammaPole { re: z.re, im: z.im });
        }
        if z.re < 0.5 {
            let w = z * PI;
            return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin(w) - ln_gamma_right(1.0 - z));
        }
    }
    Ok(ln_gamma_right(z))
}

/// `ln |Gamma(x)|` for real `x` away from the poles.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    Ok(log_gamma_complex(Complex64::new(x, 0.0))?.re)
}
