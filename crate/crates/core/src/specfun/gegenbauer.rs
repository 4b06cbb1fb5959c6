/// Gegenbauer polynomial `C_l^lambda(v)` normalised so that `C_l^lambda(1) = 1`.
///
/// Runs the three-term recurrence for the normalised polynomials,
/// `c_{k+1} = (2(k+lambda) v c_k - k c_{k-1}) / (k + 2 lambda)`, which is
/// the classical recurrence divided through by `C_k^lambda(1)`. At
/// `lambda = 0` it reduces to the Chebyshev recurrence, so the `n = 2` case
/// needs no special handling. Arguments are clamped to `[-1, 1]`.
pub fn gegenbauer(l: u32, lambda: f64, v: f64) -> f64 {
    let v = v.clamp(-1.0, 1.0);
    let mut prev = 1.0;
    if l == 0 {
        return prev;
    }
    let mut cur = v;
    for k in 1..l {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda) * v * cur - kf * prev) / (kf + 2.0 * lambda);
        prev = cur;
        cur = next;
    }
    cur
}

/// All normalised values `C_0^lambda(v), ..., C_{l_max}^lambda(v)` in `out`.
pub fn gegenbauer_all(l_max: u32, lambda: f64, v: f64, out: &mut Vec<f64>) {
    let v = v.clamp(-1.0, 1.0);
    out.clear();
    out.push(1.0);
    if l_max == 0 {
        return;
    }
    out.push(v);
    for k in 1..l_max as usize {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda) * v * out[k] - kf * out[k - 1]) / (kf + 2.0 * lambda);
        out.push(next);
    }
}
