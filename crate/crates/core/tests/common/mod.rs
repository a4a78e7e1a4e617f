//! Gauss–Jacobi brute-force oracle for `∫₀^∞ g^α dw`, independent of the
//! library's period integrator: nodes from the Golub–Welsch eigenproblem,
//! endpoint zeros absorbed into the Jacobi weight, and a leading-order
//! closed tail after a fixed number of periods.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use statrs::function::gamma::ln_gamma;
use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use well_entropy::well::{BoundaryKind, MomentumKernel, Orbital};

/// Nodes and weights for `∫₋₁¹ (1−x)^a (1+x)^b f(x) dx`.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        m[(k, k)] = if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        if k + 1 < n {
            let j = kf + 1.0;
            let s = 2.0 * j + a + b;
            let beta = 4.0 * j * (j + a) * (j + b) * (j + a + b) / (s * s * (s + 1.0) * (s - 1.0));
            m[(k, k + 1)] = beta.sqrt();
            m[(k + 1, k)] = beta.sqrt();
        }
    }
    let mu0 = ((a + b + 1.0) * 2f64.ln() + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)).exp();
    let eig = SymmetricEigen::new(m);
    let mut out: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    out
}

/// Rules keyed by (node count, exponent bits).
type RuleCache = HashMap<(usize, u64, u64), Vec<(f64, f64)>>;

thread_local! {
    static RULES: RefCell<RuleCache> = RefCell::new(HashMap::new());
}

fn integrate_with_exponents(f: impl Fn(f64) -> f64, lo: f64, hi: f64, e_left: f64, e_right: f64, nodes: usize) -> f64 {
    let half = 0.5 * (hi - lo);
    let rule = RULES.with(|cache| {
        cache
            .borrow_mut()
            .entry((nodes, e_right.to_bits(), e_left.to_bits()))
            .or_insert_with(|| gauss_jacobi(nodes, e_right, e_left))
            .clone()
    });
    rule.into_iter()
        .map(|(x, w)| {
            let smooth = f(lo + (x + 1.0) * half) / ((1.0 - x).powf(e_right) * (1.0 + x).powf(e_left));
            w * smooth
        })
        .sum::<f64>()
        * half
}

/// `∫₀^∞ g(w)^α dw` over `periods` half periods plus the leading closed tail.
pub fn oracle_power_integral(kind: BoundaryKind, n: u32, alpha: f64, periods: usize) -> f64 {
    let orb = Orbital::new(n).unwrap();
    let kernel = MomentumKernel::<f64>::new(kind, orb);
    let c = kernel.shift();
    let r = kernel.first_zero();
    let excited_neumann = kind == BoundaryKind::Neumann && n >= 2;
    let f = |w: f64| kernel.eval(w).powf(alpha);
    let is_sine_zero = |w: f64| (w - c).abs() > 1e-9;
    let nodes = 40;
    let mut total = 0.0;
    if r > 0.0 {
        // w = 0 is not a zero of sin(w − c) here
        let e_left = if excited_neumann { 2.0 * alpha } else { 0.0 };
        let e_right = if is_sine_zero(r) { 2.0 * alpha } else { 0.0 };
        total += integrate_with_exponents(f, 0.0, r, e_left, e_right, nodes);
    }
    let mut z = r;
    for _ in 0..periods {
        let mut e_left = if is_sine_zero(z) { 2.0 * alpha } else { 0.0 };
        if z == 0.0 && excited_neumann {
            e_left += 2.0 * alpha;
        }
        let e_right = if is_sine_zero(z + PI) { 2.0 * alpha } else { 0.0 };
        total += integrate_with_exponents(f, z, z + PI, e_left, e_right, nodes);
        z += PI;
    }
    // mean of sin^{2α} over a period
    let mean = integrate_with_exponents(|t| t.sin().powf(2.0 * alpha), 0.0, PI, 2.0 * alpha, 2.0 * alpha, nodes) / PI;
    // ∫_Z^∞ E^α dw with w = Z / v: Z^{1−pα} ∫₀¹ v^{pα−2} (1 − c²v²/Z²)^{−2α} dv
    let p = kernel.decay_power();
    let b = p * alpha - 2.0;
    let env = integrate_with_exponents(
        |v| v.powf(b) * (1.0 - (c * v / z).powi(2)).powf(-2.0 * alpha),
        0.0,
        1.0,
        b,
        0.0,
        nodes,
    );
    total + mean * z.powf(1.0 - p * alpha) * env
}
