//! Test-only reference computations that share no code with the library.

#![allow(dead_code)]

/// `Tr(rho (P_a (x) P_b))` with `rho = |psi><psi|` for
/// `|psi> = alpha |++> - beta |-->`, built from 4x4 matrices.
pub fn born_trace(alpha: f64, beta: f64, a: f64, b: f64, plus_a: bool, plus_b: bool) -> f64 {
    let psi = [alpha, 0.0, 0.0, -beta];
    let mut rho = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            rho[i][j] = psi[i] * psi[j];
        }
    }
    let proj = |theta: f64, plus: bool| {
        let v = if plus {
            [theta.cos(), theta.sin()]
        } else {
            [-theta.sin(), theta.cos()]
        };
        [[v[0] * v[0], v[0] * v[1]], [v[1] * v[0], v[1] * v[1]]]
    };
    let pa = proj(a, plus_a);
    let pb = proj(b, plus_b);
    let mut trace = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let op = pa[j / 2][i / 2] * pb[j % 2][i % 2];
            trace += rho[i][j] * op;
        }
    }
    trace
}

/// Amplitudes for ratio `x`, computed without the library.
pub fn amplitudes(x: f64) -> (f64, f64) {
    let n = (1.0 + x * x).sqrt();
    (x / n, 1.0 / n)
}

/// Naive `P_K^max` for ratio `x`: `alpha^2 ((1 - x^(2K)) / (1 + x^(2K+1)))^2`.
pub fn hardy_naive(x: f64, k: usize) -> f64 {
    let a2 = x * x / (1.0 + x * x);
    let r = (1.0 - x.powi(2 * k as i32)) / (1.0 + x.powi(2 * k as i32 + 1));
    a2 * r * r
}

/// Reference optimal ratios and maximal probabilities for K = 1..10, to three decimals.
pub const TABLE1: [(usize, f64, f64, f64); 10] = [
    (1, 0.464, 2.153, 0.090),
    (2, 0.569, 1.754, 0.174),
    (3, 0.636, 1.571, 0.231),
    (4, 0.683, 1.463, 0.270),
    (5, 0.718, 1.392, 0.299),
    (6, 0.745, 1.341, 0.322),
    (7, 0.767, 1.303, 0.339),
    (8, 0.785, 1.273, 0.354),
    (9, 0.800, 1.248, 0.365),
    (10, 0.813, 1.229, 0.375),
];
