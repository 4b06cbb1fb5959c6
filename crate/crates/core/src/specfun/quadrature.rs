use super::gamma::ln_gamma_real;

/// A one-dimensional quadrature rule on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature1D {
    /// Strictly increasing nodes.
    pub nodes: Vec<f64>,
    /// Positive weights, one per node.
    pub weights: Vec<f64>,
    /// Polynomial degree integrated exactly (against the rule's weight function).
    pub degree: usize,
}

impl Quadrature1D {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_i f(x_i)`.
    pub fn integrate<T, F>(&self, f: F) -> T
    where
        T: std::iter::Sum<T> + std::ops::Mul<f64, Output = T>,
        F: Fn(f64) -> T,
    {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| f(x) * w).sum()
    }

    /// Integrate over `[a, b]` assuming this is a Legendre-type rule on `[-1, 1]`.
    pub fn integrate_on<T, F>(&self, a: f64, b: f64, f: F) -> T
    where
        T: std::iter::Sum<T> + std::ops::Mul<f64, Output = T>,
        F: Fn(f64) -> T,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(mid + half * x) * (w * half))
            .sum()
    }

    /// The affine image of a Legendre-type rule on `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> Quadrature1D {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        Quadrature1D {
            nodes: self.nodes.iter().map(|&x| mid + half * x).collect(),
            weights: self.weights.iter().map(|&w| w * half).collect(),
            degree: self.degree,
        }
    }

    /// Composite Gauss–Legendre rule on the panels delimited by `breaks`.
    pub fn composite(points: usize, breaks: &[f64]) -> Quadrature1D {
        let base = gauss_legendre(points);
        let mut nodes = Vec::with_capacity(points * breaks.len());
        let mut weights = Vec::with_capacity(points * breaks.len());
        for pair in breaks.windows(2) {
            if pair[1] > pair[0] {
                let m = base.mapped(pair[0], pair[1]);
                nodes.extend(m.nodes);
                weights.extend(m.weights);
            }
        }
        Quadrature1D { nodes, weights, degree: base.degree }
    }

    /// Composite Gauss–Legendre rule with `panels` equal panels on `[a, b]`.
    pub fn composite_uniform(points: usize, a: f64, b: f64, panels: usize) -> Quadrature1D {
        let breaks: Vec<f64> = (0..=panels)
            .map(|p| a + (b - a) * p as f64 / panels as f64)
            .collect();
        Self::composite(points, &breaks)
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with shifts.
///
/// `diag` holds the diagonal, `off[i]` couples rows `i` and `i+1`.
fn tridiagonal_eigenvalues(mut diag: Vec<f64>, off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut e = vec![0.0; n];
    e[..n.saturating_sub(1)].copy_from_slice(&off[..n.saturating_sub(1)]);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 100, "tridiagonal QL failed to converge");
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    diag.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    diag
}

/// Jacobi-matrix recurrence for the weight `(1-x)^a (1+x)^b`.
///
/// Returns the monic recurrence coefficients `alpha_k` (k < count),
/// `beta_k` (1 <= k <= count, index k-1) and the total mass `mu0`.
fn jacobi_recurrence(count: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>, f64) {
    let ab = a + b;
    let mut alpha = Vec::with_capacity(count);
    let mut beta = Vec::with_capacity(count);
    for k in 0..count {
        let kf = k as f64;
        let denom = (2.0 * kf + ab) * (2.0 * kf + ab + 2.0);
        alpha.push(if k == 0 {
            (b - a) / (ab + 2.0)
        } else if denom == 0.0 {
            0.0
        } else {
            (b * b - a * a) / denom
        });
    }
    for k in 1..=count {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        beta.push(if k == 1 {
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        });
    }
    let ln_mu0 = (ab + 1.0) * 2f64.ln() + ln_gamma_real(a + 1.0).expect("a > -1")
        + ln_gamma_real(b + 1.0).expect("b > -1")
        - ln_gamma_real(ab + 2.0).expect("a + b > -2");
    (alpha, beta, ln_mu0.exp())
}

/// Gauss–Jacobi rule for the weight `(1-x)^a (1+x)^b` on `[-1, 1]`.
///
/// Nodes from the eigenvalues of the Jacobi matrix (Golub–Welsch), polished
/// by Newton steps on the orthonormal recurrence; weights from the
/// Christoffel function `1 / Σ_k p_k(x)^2`.
pub fn gauss_jacobi_ab(count: usize, a: f64, b: f64) -> Quadrature1D {
    assert!(count >= 1, "quadrature needs at least one node");
    assert!(a > -1.0 && b > -1.0, "Jacobi exponents must exceed -1");
    let (alpha, beta, mu0) = jacobi_recurrence(count, a, b);
    let off: Vec<f64> = beta[..count - 1].iter().map(|v| v.sqrt()).collect();
    let mut nodes = tridiagonal_eigenvalues(alpha.clone(), &off);
    let sqrt_beta: Vec<f64> = beta.iter().map(|v| v.sqrt()).collect();
    // Orthonormal values p_0..p_{count-1} and the last p_count with its derivative.
    let eval = |x: f64| -> (f64, f64, f64) {
        let mut p_prev = 0.0;
        let mut d_prev = 0.0;
        let mut p = 1.0 / mu0.sqrt();
        let mut d = 0.0;
        let mut christoffel = p * p;
        for k in 0..count {
            let sb_prev = if k == 0 { 0.0 } else { sqrt_beta[k - 1] };
            let p_next = ((x - alpha[k]) * p - sb_prev * p_prev) / sqrt_beta[k];
            let d_next = (p + (x - alpha[k]) * d - sb_prev * d_prev) / sqrt_beta[k];
            p_prev = p;
            d_prev = d;
            p = p_next;
            d = d_next;
            if k + 1 < count {
                christoffel += p * p;
            }
        }
        (p, d, christoffel)
    };
    let mut weights = Vec::with_capacity(count);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, d, _) = eval(*x);
            if d == 0.0 {
                break;
            }
            let step = p / d;
            *x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        weights.push(1.0 / eval(*x).2);
    }
    Quadrature1D { nodes, weights, degree: 2 * count - 1 }
}

/// Gauss–Jacobi rule for the symmetric weight `(1-v^2)^exponent` on `[-1, 1]`.
pub fn gauss_jacobi(count: usize, exponent: f64) -> Quadrature1D {
    let mut q = gauss_jacobi_ab(count, exponent, exponent);
    // Enforce exact symmetry of the rule.
    let n = q.len();
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (q.nodes[j] - q.nodes[i]);
        let w = 0.5 * (q.weights[i] + q.weights[j]);
        q.nodes[i] = -x;
        q.nodes[j] = x;
        q.weights[i] = w;
        q.weights[j] = w;
    }
    if n % 2 == 1 {
        q.nodes[n / 2] = 0.0;
    }
    q
}

/// Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(count: usize) -> Quadrature1D {
    gauss_jacobi(count, 0.0)
}
