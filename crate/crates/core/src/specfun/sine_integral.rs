use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

/// Sine and cosine integrals `(Si(x), Ci(x))` for `x > 0`.
///
/// Power series for `x <= 2`; for larger `x` the continued fraction for
/// `E_1(ix) = -Ci(x) + i (Si(x) - pi/2)` evaluated by the modified Lentz method.
pub fn cos_sin_integral(x: f64) -> (f64, f64) {
    assert!(x > 0.0, "cos_sin_integral needs x > 0");
    const EULER: f64 = 0.577_215_664_901_532_9;
    if x <= 2.0 {
        let mut si = 0.0;
        let mut ci = 0.0;
        let mut term = 1.0;
        for k in 1..60 {
            term *= x / k as f64;
            let contrib = term / k as f64;
            match k % 4 {
                1 => si += contrib,
                2 => ci -= contrib,
                3 => si -= contrib,
                _ => ci += contrib,
            }
            if contrib < 1e-18 {
                break;
            }
        }
        return (si, EULER + x.ln() + ci);
    }
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..100_000 {
        let a = -((i * i) as f64);
        b += 2.0;
        d = (a * d + b).inv();
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h *= Complex64::new(x.cos(), -x.sin());
    (FRAC_PI_2 + h.im, -h.re)
}

/// Sine integral `Si(x) = ∫_0^x sin(w)/w dw`; odd in `x`.
pub fn sine_integral(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x < 0.0 {
        -cos_sin_integral(-x).0
    } else {
        cos_sin_integral(x).0
    }
}
