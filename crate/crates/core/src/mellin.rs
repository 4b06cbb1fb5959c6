//! The `N_l^α` multiplier family, a numerical Mellin transform on `Re s = 0`,
//! the inverse-multiplier quadrature identities and exact operator identities.

use crate::error::{Error, Result};
use crate::specfun::{
    gauss_jacobi_ab, gauss_legendre, gegenbauer, log_gamma_complex, pochhammer, sphere_area,
    stirling_first_signed, stirling_first_unsigned,
};
use crate::spherical::gegenbauer_index;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Degree `l`, order `α` and dimension `n` of a multiplier `N_l^α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplierSpec {
    pub l: u32,
    pub alpha: u32,
    pub n: u32,
}

impl MultiplierSpec {
    /// `l ∈ L = {2, 4, ...}`.
    pub fn l_in_even_set(&self) -> bool {
        self.l >= 2 && self.l % 2 == 0
    }

    /// `α ∈ N_0` for `l ∉ L`, `α ∈ N` for `l ∈ L`.
    pub fn admissible(&self) -> bool {
        self.n >= 2 && (!self.l_in_even_set() || self.alpha >= 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.admissible() {
            Ok(())
        } else {
            Err(Error::Inadmissible(format!(
                "N_{}^{} in dimension {} (even degree needs alpha >= 1)",
                self.l, self.alpha, self.n
            )))
        }
    }

    /// `N_l := N_l^{[l ∈ L]}`.
    pub fn base(l: u32, n: u32) -> Self {
        let s = MultiplierSpec { l, alpha: 0, n };
        MultiplierSpec { alpha: s.l_in_even_set() as u32, ..s }
    }
}

fn lg(z: Complex64) -> Result<Complex64> {
    log_gamma_complex(z)
}

/// `N_l^α(y)` from the three-case definition.
pub fn n_multiplier(spec: MultiplierSpec, y: f64) -> Result<Complex64> {
    spec.validate()?;
    let (l, a, n) = (spec.l, spec.alpha, spec.n as f64);
    let iy = Complex64::new(0.0, y);
    let one = Complex64::new(1.0, 0.0);
    let pi_pow = PI.powf((n - 1.0) / 2.0);
    let sign = |k: u32| if k % 2 == 0 { 1.0 } else { -1.0 };
    if l == 0 {
        let g = (lg((n - iy) / 2.0)? - lg((one - iy) / 2.0)?).exp();
        return Ok(g * pochhammer(iy, a) * sign(a) / (2.0 * pi_pow));
    }
    let lf = l as f64;
    if l % 2 == 1 {
        let k = (l - 1) / 2;
        let g = (lg((n + lf - iy) / 2.0)? - lg((2.0 - iy) / 2.0)?).exp();
        let den = pochhammer((one + iy) / 2.0, k) * sign(k) * (2.0 * pi_pow);
        return Ok(g * pochhammer(iy, a) * sign(a) / den);
    }
    let k = (l - 2) / 2;
    let g = (lg((n + lf - iy) / 2.0)? - lg((one - iy) / 2.0)?).exp();
    let den = pochhammer((2.0 + iy) / 2.0, k) * sign(k) * pi_pow;
    Ok(g * pochhammer(one + iy, a - 1) * sign(a - 1) / den)
}

/// The compact gamma-ratio form, undefined at its removable singularities.
pub fn n_multiplier_compact(spec: MultiplierSpec, y: f64) -> Result<Complex64> {
    spec.validate()?;
    let (l, a, n) = (spec.l as f64, spec.alpha as f64, spec.n as f64);
    let iy = Complex64::new(0.0, y);
    let one = Complex64::new(1.0, 0.0);
    let log = lg((n + l - iy) / 2.0)? + lg((2.0 - l - iy) / 2.0)? + lg(one - iy)?
        - lg((2.0 - iy) / 2.0)?
        - lg((one - iy) / 2.0)?
        - lg(one - iy - a)?;
    Ok(log.exp() / (2.0 * PI.powf((n - 1.0) / 2.0)))
}

/// `½ |y|^α (|y|/2π)^{(n−1)/2}`.
pub fn n_asymptotic(spec: MultiplierSpec, y: f64) -> f64 {
    let u = y.abs();
    0.5 * u.powi(spec.alpha as i32) * (u / (2.0 * PI)).powf((spec.n as f64 - 1.0) / 2.0)
}

/// Integration window of `mellin_numeric` in `u = ln t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinEnvelope {
    pub u_min: f64,
    pub u_max: f64,
    /// `ψ(0+)`, subtracted on `(0,1)` so the integrand is in `L¹(dt/t)`.
    pub at_zero: Option<Complex64>,
    /// Largest admissible integrand magnitude at either end.
    pub tail_tolerance: f64,
    pub panel_width: f64,
}

impl Default for MellinEnvelope {
    fn default() -> Self {
        MellinEnvelope { u_min: -40.0, u_max: 5.0, at_zero: None, tail_tolerance: 1e-12, panel_width: 0.25 }
    }
}

/// `M{ψ}(iy) = ∫_0^∞ t^{iy} ψ(t) dt/t` by Gauss–Legendre panels in `u = ln t`.
///
/// With `at_zero = Some(c)` the transform is continued to `Re s = 0` by
/// `∫_0^1 t^{iy−1}(ψ(t) − c) dt + c/(iy) + ∫_1^∞ t^{iy−1} ψ(t) dt`.
pub fn mellin_numeric<F>(psi: F, y: f64, env: &MellinEnvelope) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let c0 = env.at_zero.unwrap_or(Complex64::new(0.0, 0.0));
    if env.at_zero.is_some() && y == 0.0 {
        return Err(Error::Domain("regularised Mellin transform has a pole at y = 0".into()));
    }
    let integrand = |u: f64| {
        let t = u.exp();
        let v = if u < 0.0 { psi(t) - c0 } else { psi(t) };
        v * Complex64::cis(y * u)
    };
    let lo = integrand(env.u_min).norm();
    let hi = integrand(env.u_max).norm();
    if lo > env.tail_tolerance || hi > env.tail_tolerance {
        return Err(Error::Divergence(format!(
            "integrand {lo:e} / {hi:e} at the window ends exceeds the envelope tolerance"
        )));
    }
    let gl = gauss_legendre(20);
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b) in [(env.u_min, 0.0), (0.0, env.u_max)] {
        let panels = ((b - a) / env.panel_width).ceil().max(1.0) as usize;
        let w = (b - a) / panels as f64;
        for p in 0..panels {
            let s = a + p as f64 * w;
            acc += gl.integrate_on(s, s + w, integrand);
        }
    }
    if env.at_zero.is_some() {
        acc += c0 / Complex64::new(0.0, y);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseCase {
    /// `l ∉ L`, weight `C_l(v)(1−v²)^{(n−3)/2}`.
    Standard,
    /// `l ∈ L`, weight `(1/(n−1)) C_{l−1}^{n/2}(v)(1−v²)^{(n−1)/2}`, taken at `−iy`.
    Even,
}

/// Mellin transform of `w[v<1]` at `1 − iy` (standard) or `−iy` (even).
///
/// The even weight arises from the standard one by one integration by parts,
/// which trades the factor `−iy` of `N_l^1 = −iy N_l^0` for a power of `v`.
fn weight_mellin(l: u32, n: u32, y: f64, case: InverseCase) -> Complex64 {
    let nf = n as f64;
    let (expo, poly): (f64, Box<dyn Fn(f64) -> f64>) = match case {
        InverseCase::Standard => {
            let lam = gegenbauer_index(n as usize);
            ((nf - 3.0) / 2.0, Box::new(move |v| gegenbauer(l, lam, v)))
        }
        InverseCase::Even => {
            ((nf - 1.0) / 2.0, Box::new(move |v| gegenbauer(l - 1, nf / 2.0, v) / (nf - 1.0)))
        }
    };
    // Power of v left over after dv/v: 1 for the standard case, 0 for the even one.
    let lift = match case {
        InverseCase::Standard => 1,
        InverseCase::Even => 0,
    };
    let w = |v: f64| poly(v) * (1.0 - v * v).powf(expo);
    // [0, 1/2]: v = e^{−s}, smooth and exponentially decaying in s.
    let gl = gauss_legendre(24);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut s = std::f64::consts::LN_2;
    while s < 45.0 {
        acc += gl.integrate_on(s, s + 0.5, |s: f64| {
            let v = (-s).exp();
            Complex64::cis(y * s) * (w(v) * v.powi(lift))
        });
        s += 0.5;
    }
    // [1/2, 1]: v = 3/4 + x/4, with the (1−v)^expo factor carried by the rule.
    let gj = gauss_jacobi_ab(40, expo, 0.0);
    let scale = 0.25f64.powf(expo) * 0.25;
    acc += gj.integrate(|x| {
        let v = 0.75 + 0.25 * x;
        Complex64::cis(-y * v.ln()) * (poly(v) * (1.0 + v).powf(expo) * v.powi(lift - 1) * scale)
    });
    acc
}

/// Both sides of `1/N_l(y) = 2|S^{n−2}| M{w[v<1]}(s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseIdentity {
    pub reciprocal: Complex64,
    pub quadrature: Complex64,
    pub residual: f64,
}

pub fn multiplier_inverse_identity(l: u32, n: u32, y: f64, case: InverseCase) -> Result<InverseIdentity> {
    let spec = MultiplierSpec::base(l, n);
    match (case, spec.l_in_even_set()) {
        (InverseCase::Standard, false) | (InverseCase::Even, true) => {}
        _ => return Err(Error::Inadmissible(format!("degree {l} does not match the {case:?} case"))),
    }
    let reciprocal = Complex64::new(1.0, 0.0) / n_multiplier(spec, y)?;
    let quadrature = weight_mellin(l, n, y, case) * (2.0 * sphere_area(n - 1));
    Ok(InverseIdentity { reciprocal, quadrature, residual: (reciprocal - quadrature).norm() })
}

/// Laurent polynomial with exact integer coefficients.
pub type Laurent = BTreeMap<i64, i128>;

fn monomial(k: i64) -> Laurent {
    BTreeMap::from([(k, 1)])
}

fn shift(p: &Laurent, by: i64) -> Laurent {
    p.iter().map(|(&e, &c)| (e + by, c)).collect()
}

fn deriv(p: &Laurent) -> Laurent {
    p.iter().filter(|&(&e, _)| e != 0).map(|(&e, &c)| (e - 1, c * e as i128)).collect()
}

fn deriv_n(p: &Laurent, k: u32) -> Laurent {
    (0..k).fold(p.clone(), |q, _| deriv(&q))
}

fn scaled_add(acc: &mut Laurent, p: &Laurent, c: i128) {
    for (&e, &v) in p {
        *acc.entry(e).or_insert(0) += c * v;
    }
}

fn euler(p: &Laurent) -> Laurent {
    shift(&deriv(p), 1)
}

fn d_t(p: &Laurent) -> Laurent {
    deriv(&shift(p, 1))
}

fn power<F: Fn(&Laurent) -> Laurent>(op: F, p: &Laurent, k: i64) -> Laurent {
    assert!(k >= 0);
    (0..k).fold(p.clone(), |q, _| op(&q))
}

fn max_diff(a: &Laurent, b: &Laurent) -> u128 {
    let keys: std::collections::BTreeSet<i64> = a.keys().chain(b.keys()).copied().collect();
    keys.iter()
        .map(|k| (a.get(k).copied().unwrap_or(0) - b.get(k).copied().unwrap_or(0)).unsigned_abs())
        .max()
        .unwrap_or(0)
}

/// Exact residuals of the three operator identities on `t^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OperatorResiduals {
    /// `t^α ∂^{α−1} t^{−1} = Σ_m s(α,m) (t∂)^{m−1}`.
    pub lowering: u128,
    /// `t^α ∂^α = Σ_m s(α,m) (t∂)^m`.
    pub euler: u128,
    /// `t^{−1} ∂^{α−1} t^α = Σ_m [α m] (∂t)^{m−1}`.
    pub raising: u128,
}

impl OperatorResiduals {
    pub fn max(&self) -> u128 {
        self.lowering.max(self.euler).max(self.raising)
    }
}

pub fn operator_identity_check(alpha: u32, k: u32) -> Result<OperatorResiduals> {
    if alpha == 0 || alpha > 6 {
        return Err(Error::Domain(format!("operator identities checked for 1 <= alpha <= 6, got {alpha}")));
    }
    let a = alpha as i64;
    let p = monomial(k as i64);
    let lhs1 = shift(&deriv_n(&shift(&p, -1), alpha - 1), a);
    let lhs2 = shift(&deriv_n(&p, alpha), a);
    let lhs3 = shift(&deriv_n(&shift(&p, a), alpha - 1), -1);
    let (mut rhs1, mut rhs2, mut rhs3) = (Laurent::new(), Laurent::new(), Laurent::new());
    for m in 1..=a {
        let s = stirling_first_signed(alpha, m)? as i128;
        let u = stirling_first_unsigned(alpha, m)? as i128;
        scaled_add(&mut rhs1, &power(euler, &p, m - 1), s);
        scaled_add(&mut rhs2, &power(euler, &p, m), s);
        scaled_add(&mut rhs3, &power(d_t, &p, m - 1), u);
    }
    Ok(OperatorResiduals {
        lowering: max_diff(&lhs1, &rhs1),
        euler: max_diff(&lhs2, &rhs2),
        raising: max_diff(&lhs3, &rhs3),
    })
}
