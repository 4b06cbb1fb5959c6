use super::gamma::ln_gamma_real;
use super::quadrature::gauss_legendre;
use std::f64::consts::PI;
use std::sync::OnceLock;

const SWITCH: f64 = 12.0;

fn gl16() -> &'static super::Quadrature1D {
    static RULE: OnceLock<super::Quadrature1D> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

fn series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let lead = (nu * half.ln() - ln_gamma_real(nu + 1.0).expect("nu >= 0")).exp();
    let q = half * half;
    let mut term = lead;
    let mut sum = lead;
    for k in 1..200 {
        let kf = k as f64;
        term *= -q / (kf * (kf + nu));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// Hankel asymptotic expansion, used when `x` is large compared with `nu^2`.
fn hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        term *= (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
        if term.abs() >= last {
            break;
        }
        last = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Schlafli integral representation for moderate arguments.
fn schlafli(nu: f64, x: f64) -> f64 {
    let rule = gl16();
    let panels = ((x + nu) / 2.0).ceil().max(4.0) as usize;
    let width = PI / panels as f64;
    let mut first = 0.0;
    for p in 0..panels {
        let a = p as f64 * width;
        first += rule.integrate_on(a, a + width, |tau| (nu * tau - x * tau.sin()).cos());
    }
    first /= PI;
    let s_nu = (nu * PI).sin();
    if s_nu.abs() < 1e-15 {
        return first;
    }
    // x sinh(s) + nu s >= 50 bounds the remaining tail by e^{-50}.
    let s_max = (50.0 / x).asinh().max(1e-3);
    let mut second = 0.0;
    let sub = 4;
    for p in 0..sub {
        let a = s_max * p as f64 / sub as f64;
        let b = s_max * (p + 1) as f64 / sub as f64;
        second += rule.integrate_on(a, b, |s| (-x * s.sinh() - nu * s).exp());
    }
    first - s_nu / PI * second
}

/// Bessel function of the first kind `J_nu(x)` for `nu >= 0`, `x >= 0`.
///
/// Power series below `x = 12`; above it the Hankel expansion when
/// `x >= 25 + nu^2` and the Schlafli integral otherwise.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    assert!(nu >= 0.0 && x >= 0.0, "bessel_j needs nu >= 0 and x >= 0");
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x < SWITCH {
        series(nu, x)
    } else if x >= 25.0 + nu * nu {
        hankel(nu, x)
    } else {
        schlafli(nu, x)
    }
}

/// The radial Fourier kernel `J_nu(z) / z^mu`, using its series limit near `z = 0`.
pub fn bessel_kernel(nu: f64, mu: f64, z: f64) -> f64 {
    if z < 1e-6 {
        let lead = (-(nu * 2f64.ln()) - ln_gamma_real(nu + 1.0).expect("nu >= 0")).exp();
        let q = 0.25 * z * z;
        // J_nu(z)/z^mu = z^(nu-mu) 2^-nu / Gamma(nu+1) (1 - q/(nu+1) + ...)
        return lead * z.powf(nu - mu) * (1.0 - q / (nu + 1.0));
    }
    bessel_j(nu, z) / z.powf(mu)
}
