mod common;

use common::{gauss_jacobi, oracle_power_integral};
use std::f64::consts::PI;
use well_entropy::entropy::{neumann_ground_integer_moment, threshold};
use well_entropy::quadrature::{integrate_density_power, QuadratureConfig};
use well_entropy::well::{BoundaryKind, Orbital, WellSpec};

const KINDS: [BoundaryKind; 2] = [BoundaryKind::Dirichlet, BoundaryKind::Neumann];

#[test]
fn gauss_jacobi_rule_is_exact_on_known_moments() {
    // ∫₋₁¹ (1+x)^b dx = 2^{b+1}/(b+1)
    let b = 0.37;
    let s: f64 = gauss_jacobi(12, 0.0, b).iter().map(|(_, w)| w).sum();
    assert!((s - 2f64.powf(b + 1.0) / (b + 1.0)).abs() < 1e-13);
    // ∫₋₁¹ x² dx = 2/3 under the Legendre weight
    let s: f64 = gauss_jacobi(5, 0.0, 0.0).iter().map(|(x, w)| w * x * x).sum();
    assert!((s - 2.0 / 3.0).abs() < 1e-14);
}

#[test]
fn oracle_reproduces_classic_sinc_integrals() {
    let v = oracle_power_integral(BoundaryKind::Neumann, 1, 1.0, 2000);
    assert!((v - PI / 2.0).abs() < 1e-9, "{v}");
    let v = oracle_power_integral(BoundaryKind::Neumann, 1, 2.0, 500);
    assert!((v - PI / 3.0).abs() < 1e-11, "{v}");
}

#[test]
fn quadrature_matches_gauss_jacobi_oracle() {
    let cfg = QuadratureConfig::default();
    for kind in KINDS {
        let th = threshold::<f64>(kind);
        for n in 1..=6 {
            for alpha in [th + 0.05, th + 0.2, 0.9, 1.7, 3.0, 7.5, 20.0] {
                let spec = WellSpec::unit(kind);
                let r = integrate_density_power(&spec, Orbital::new(n).unwrap(), alpha, &cfg).unwrap();
                let oracle = oracle_power_integral(kind, n, alpha, 10_000);
                let got = r.integral();
                let rel = ((got - oracle) / oracle).abs();
                assert!(rel <= 1e-7, "{kind} n={n} alpha={alpha}: {got} vs {oracle} (rel {rel:e})");
                assert!(r.periods_used <= cfg.max_periods);
            }
        }
    }
}

#[test]
fn error_bounds_cover_the_oracle_difference() {
    // the oracle's own tail is accurate to far better than 1e-11 at these orders
    let cfg = QuadratureConfig::default();
    for kind in KINDS {
        for n in [1, 2, 5] {
            for alpha in [1.3, 2.5, 6.0] {
                let spec = WellSpec::unit(kind);
                let r = integrate_density_power(&spec, Orbital::new(n).unwrap(), alpha, &cfg).unwrap();
                let oracle = oracle_power_integral(kind, n, alpha, 10_000);
                let diff = (r.integral() - oracle).abs();
                let bound = r.error_bound * r.log_scale.exp();
                assert!(diff <= bound + 1e-13 * oracle, "{kind} n={n} alpha={alpha}: diff {diff:e} bound {bound:e}");
            }
        }
    }
}

#[test]
fn integer_orders_match_closed_and_brute_force_sums() {
    let cfg = QuadratureConfig::default();
    let neumann = WellSpec::unit(BoundaryKind::Neumann);
    for m in 1..=8u32 {
        let q = integrate_density_power(&neumann, Orbital::GROUND, f64::from(m), &cfg).unwrap().integral();
        let closed: f64 = neumann_ground_integer_moment(m).unwrap();
        assert!(((q - closed) / closed).abs() < 1e-8, "m={m}");
    }
    let dirichlet = WellSpec::unit(BoundaryKind::Dirichlet);
    for n in 1..=4 {
        for m in 1..=4 {
            let q = integrate_density_power(&dirichlet, Orbital::new(n).unwrap(), f64::from(m), &cfg)
                .unwrap()
                .integral();
            let oracle = oracle_power_integral(BoundaryKind::Dirichlet, n, f64::from(m), 2000);
            assert!(((q - oracle) / oracle).abs() < 1e-8, "n={n} m={m}");
        }
    }
}

#[test]
fn divergence_towards_threshold_is_monotone() {
    let cfg = QuadratureConfig::default();
    for kind in KINDS {
        let th = threshold::<f64>(kind);
        for n in 1..=3 {
            let spec = WellSpec::unit(kind);
            let mut last = 0.0;
            for j in 1..=9 {
                let r = integrate_density_power(&spec, Orbital::new(n).unwrap(), th + 2f64.powi(-j), &cfg).unwrap();
                assert!(r.integral() > last, "{kind} n={n} j={j}");
                last = r.integral();
            }
        }
    }
}
