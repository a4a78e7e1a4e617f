//! Improper integrals of the momentum kernels.
//!
//! The kernel is `g(w) = sin²(w − c) E(w)` beyond `w = c`, with a smooth,
//! algebraically decaying envelope `E`. Integrals are summed segment by
//! segment between consecutive zeros of `sin(w − c)` (tanh-sinh per segment,
//! which absorbs the `|t|^{2α}` endpoint behaviour), and the remainder past a
//! zero `Z` is replaced by its asymptotic value
//!
//! ```text
//! ∫_Z^∞ s(w) f(w) dw ≈ ⟨s⟩ ∫_Z^∞ f − m₂[s] f'(Z),
//! m₂[s] = (1 / 2π) ∫₀^π t² (s(t) − ⟨s⟩) dt,
//! ```
//!
//! where `s` is the periodic factor and `f` the envelope part. The envelope
//! integrals are summed in closed form from the binomial series of
//! `(1 − c²/w²)^{-2α}`. The remaining error decays like `f''(Z)`; it is
//! estimated from how much the tail at consecutive zeros disagrees with the
//! exact segment integral between them.

use crate::error::{Error, Result};
use crate::quadrature::rules::TanhSinh;
use crate::quadrature::{IntegralResult, QuadratureConfig};
use crate::scalar::{CompensatedSum, Real};
use crate::special::period_mean_unchecked;
use crate::well::{MomentumKernel, Orbital, WellSpec};

/// Orders closer than this to the threshold are rejected as numerically
/// divergent.
pub fn near_threshold_margin<T: Real>() -> T {
    T::lit(1e-3)
}

/// Mean and second periodic moment of a function with period `π` that is
/// symmetric about `π/2`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PeriodMoments<T> {
    pub mean: T,
    pub m2: T,
}

impl<T: Real> PeriodMoments<T> {
    pub(crate) fn of<F: Fn(T) -> T>(phi: F, rule: &TanhSinh<T>) -> Self {
        let pi = T::PI();
        let half_pi = T::FRAC_PI_2();
        let tol = T::tol_floor(1e-15);
        let tiny = T::min_positive_value();
        let mean = rule.integrate(&phi, T::zero(), half_pi, tiny, tol).value * T::lit(2.0) / pi;
        let weighted = rule
            .integrate(|t| (t * t + (pi - t) * (pi - t)) * phi(t), T::zero(), half_pi, tiny, tol)
            .value;
        let m2 = weighted / (T::lit(2.0) * pi) - mean * pi * pi / T::lit(6.0);
        Self { mean, m2 }
    }
}

/// `Σ_k (2α)_k/k! (c/Z)^{2k} / (pα + 2k − 1)` and its `α`-derivative
/// companion; `Z^{1−pα}` times these are `∫_Z^∞ E^α` and `∫_Z^∞ E^α ln E`.
fn envelope_series<T: Real>(kernel: &MomentumKernel<T>, alpha: T, z: T) -> (T, T) {
    let p = kernel.decay_power();
    let c = kernel.shift();
    let rho = (c / z) * (c / z);
    let ln_z = z.ln();
    let two_alpha = alpha + alpha;
    let mut coef = T::one();
    let mut rho_k = T::one();
    let mut harmonic = T::zero();
    let mut s0 = T::zero();
    let mut s1 = T::zero();
    for k in 0..1000usize {
        let kf = T::from_usize_lossy(k);
        let denom = p * alpha + kf + kf - T::one();
        let term = coef * rho_k / denom;
        s0 = s0 + term;
        s1 = s1 + term * (harmonic + harmonic - p * ln_z - p / denom);
        if rho == T::zero() || (term.abs() <= T::epsilon() * s0.abs() * T::lit(1e-2) && k > 0) {
            break;
        }
        harmonic = harmonic + (two_alpha + kf).recip();
        coef = coef * (two_alpha + kf) / (kf + T::one());
        rho_k = rho_k * rho;
    }
    (s0, s1)
}

struct PeriodSum<T> {
    value: T,
    error_bound: T,
    periods_used: usize,
    tail: T,
}

/// Sums segment integrals until the asymptotic tail is accurate enough.
fn sum_periods<T, G, Tail>(
    kernel: &MomentumKernel<T>,
    rule: &TanhSinh<T>,
    integrand: G,
    tail: Tail,
    split_at: Option<T>,
    cfg: &QuadratureConfig<T>,
) -> Result<PeriodSum<T>>
where
    T: Real,
    G: Fn(usize, T) -> T,
    Tail: Fn(T) -> T,
{
    let pi = T::PI();
    let seg_tol = T::tol_floor(1e-14);
    let tiny = T::min_positive_value();
    let tail_start = kernel.shift() * T::lit(2.0) + pi;
    let mut sum = CompensatedSum::new();
    let mut seg_err = T::zero();
    let mut prev_tail: Option<T> = None;
    let mut prev_gap: Option<T> = None;
    let mut best = (T::nan(), T::infinity());

    for m in 0..cfg.max_periods {
        let Some((lo, hi)) = kernel.segment_local_range(m) else {
            continue;
        };
        let origin = kernel.segment_origin(m);
        let f = |t: T| integrand(m, t);
        let mut pieces = [(lo, hi), (hi, hi)];
        if let Some(w_split) = split_at {
            let t_split = w_split - origin;
            if t_split > lo && t_split < hi {
                pieces = [(lo, t_split), (t_split, hi)];
            }
        }
        let mut segment = T::zero();
        for (a, b) in pieces {
            if b > a {
                let out = rule.integrate(f, a, b, tiny, seg_tol);
                segment = segment + out.value;
                seg_err = seg_err + out.error;
            }
        }
        sum.add(segment);

        let z = origin + pi;
        if m < 3 || z < tail_start {
            continue;
        }
        let t = tail(z);
        let total = sum.value() + t;
        if let Some(tp) = prev_tail {
            let gap = (tp - segment - t).abs();
            if let Some(gp) = prev_gap {
                let tail_err = T::lit(2.0) * gap.max(gp) * z / pi;
                best = (total, tail_err + seg_err);
                if tail_err <= cfg.tail_rel_tol * total.abs() {
                    return Ok(PeriodSum {
                        value: total,
                        error_bound: tail_err + seg_err,
                        periods_used: m + 1,
                        tail: t,
                    });
                }
            }
            prev_gap = Some(gap);
        }
        prev_tail = Some(t);
    }
    Err(Error::BudgetExceeded {
        value: best.0.to_f64_lossy(),
        error_bound: best.1.to_f64_lossy(),
        periods: cfg.max_periods,
    })
}

fn check_order<T: Real>(spec: &WellSpec<T>, alpha: T) -> Result<()> {
    let threshold = spec.kind().momentum_threshold::<T>();
    if alpha.is_nan() || alpha.is_infinite() {
        return Err(Error::domain(format!("power integral needs a finite order, got {alpha}")));
    }
    if alpha <= threshold {
        return Err(Error::BelowThreshold {
            alpha: alpha.to_f64_lossy(),
            threshold: threshold.to_f64_lossy(),
            numerically_divergent: false,
        });
    }
    if alpha - threshold < near_threshold_margin() {
        return Err(Error::BelowThreshold {
            alpha: alpha.to_f64_lossy(),
            threshold: threshold.to_f64_lossy(),
            numerically_divergent: true,
        });
    }
    Ok(())
}

/// `I(α) = ∫₀^∞ g(w)^α dw` for the dimensionless momentum kernel of the
/// orbital (see [`MomentumKernel`]); the well width does not enter.
///
/// The integrand is normalized by the kernel peak, so the result carries
/// `log_scale = α ln g_max`.
pub fn integrate_density_power<T: Real>(
    spec: &WellSpec<T>,
    orb: Orbital,
    alpha: T,
    cfg: &QuadratureConfig<T>,
) -> Result<IntegralResult<T>> {
    cfg.validate()?;
    check_order(spec, alpha)?;
    let kernel = MomentumKernel::<T>::new(spec.kind(), orb);
    let (w_peak, g_peak) = kernel.peak();
    let ln_peak = g_peak.ln();
    let rule = TanhSinh::new();
    let mean = period_mean_unchecked(alpha);
    let two_alpha = alpha + alpha;
    let moments = PeriodMoments::of(|t: T| t.sin().powf(two_alpha), &rule);
    let p = kernel.decay_power();

    let integrand = |m: usize, t: T| {
        let g = kernel.eval_local(m, t);
        if g > T::zero() {
            (g / g_peak).powf(alpha)
        } else {
            T::zero()
        }
    };
    let tail = |z: T| {
        let (s0, _) = envelope_series(&kernel, alpha, z);
        let lead = mean * (-alpha * ln_peak + (T::one() - p * alpha) * z.ln()).exp() * s0;
        let slope = alpha * kernel.ln_envelope_slope(z);
        let corr = -moments.m2 * slope * (alpha * (kernel.ln_envelope(z) - ln_peak)).exp();
        lead + corr
    };
    let split = if w_peak > T::zero() { Some(w_peak) } else { None };
    let out = sum_periods(&kernel, &rule, integrand, tail, split, cfg)?;
    Ok(IntegralResult {
        value: out.value,
        error_bound: out.error_bound,
        periods_used: out.periods_used,
        tail_estimate: out.tail,
        log_scale: alpha * ln_peak,
    })
}

/// `∫₀^∞ g(w) ln g(w) dw` for the dimensionless momentum kernel.
pub fn integrate_density_log<T: Real>(
    spec: &WellSpec<T>,
    orb: Orbital,
    cfg: &QuadratureConfig<T>,
) -> Result<IntegralResult<T>> {
    cfg.validate()?;
    let kernel = MomentumKernel::<T>::new(spec.kind(), orb);
    let rule = TanhSinh::new();
    let sin2 = PeriodMoments::of(|t: T| t.sin().powi(2), &rule);
    let sin2_log = PeriodMoments::of(
        |t: T| {
            let s = t.sin().powi(2);
            if s > T::zero() {
                s * s.ln()
            } else {
                T::zero()
            }
        },
        &rule,
    );
    let p = kernel.decay_power();

    let integrand = |m: usize, t: T| {
        let g = kernel.eval_local(m, t);
        if g > T::zero() {
            g * g.ln()
        } else {
            T::zero()
        }
    };
    let tail = |z: T| {
        let (s0, s1) = envelope_series(&kernel, T::one(), z);
        let scale = ((T::one() - p) * z.ln()).exp();
        let int_e = scale * s0;
        let int_e_ln_e = scale * s1;
        let ln_e = kernel.ln_envelope(z);
        let e = ln_e.exp();
        let de = e * kernel.ln_envelope_slope(z);
        let d_e_ln_e = de * (ln_e + T::one());
        sin2_log.mean * int_e + sin2.mean * int_e_ln_e - sin2.m2 * d_e_ln_e - sin2_log.m2 * de
    };
    let out = sum_periods(&kernel, &rule, integrand, tail, None, cfg)?;
    Ok(IntegralResult {
        value: out.value,
        error_bound: out.error_bound,
        periods_used: out.periods_used,
        tail_estimate: out.tail,
        log_scale: T::zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::EULER_GAMMA;
    use crate::well::BoundaryKind;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::default()
    }

    #[test]
    fn period_moments_of_sin_squared() {
        let rule = TanhSinh::<f64>::new();
        let m = PeriodMoments::of(|t| t.sin().powi(2), &rule);
        assert!((m.mean - 0.5).abs() < 1e-15);
        assert!((m.m2 + 0.125).abs() < 1e-14, "{}", m.m2);
        let m = PeriodMoments::of(|t: f64| t.sin().powi(2) * t.sin().powi(2).ln(), &rule);
        assert!((m.mean - (0.5 - 2f64.ln())).abs() < 1e-14, "{}", m.mean);
    }

    #[test]
    fn asymptotic_tail_of_sinc_squared() {
        // ∫_Z^∞ sin²w / w² dw = 1/(2Z) − 1/(4Z³) + O(Z⁻⁵) at Z = mπ
        let kernel = MomentumKernel::<f64>::new(BoundaryKind::Neumann, Orbital::GROUND);
        let (s0, _) = envelope_series(&kernel, 1.0, 40.0 * PI);
        assert!((s0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn neumann_ground_integer_orders() {
        let spec = WellSpec::unit(BoundaryKind::Neumann);
        let r = integrate_density_power(&spec, Orbital::GROUND, 1.0, &cfg()).unwrap();
        assert!((r.integral() - PI / 2.0).abs() < 1e-10, "{}", r.integral());
        let r = integrate_density_power(&spec, Orbital::GROUND, 2.0, &cfg()).unwrap();
        assert!((r.integral() - PI / 3.0).abs() < 1e-10);
        assert!(r.periods_used <= cfg().max_periods);
    }

    #[test]
    fn neumann_ground_log_integral() {
        let spec = WellSpec::unit(BoundaryKind::Neumann);
        let r = integrate_density_log(&spec, Orbital::GROUND, &cfg()).unwrap();
        let want = -PI * (1.0 - EULER_GAMMA);
        assert!((r.value - want).abs() < 1e-9, "{} vs {want}", r.value);
    }

    #[test]
    fn threshold_is_enforced() {
        let d = WellSpec::unit(BoundaryKind::Dirichlet);
        let n = WellSpec::unit(BoundaryKind::Neumann);
        for (spec, a) in [(d, 0.25), (d, 0.1), (n, 0.5), (n, 0.3)] {
            match integrate_density_power(&spec, Orbital::GROUND, a, &cfg()) {
                Err(Error::BelowThreshold {
                    numerically_divergent: false,
                    ..
                }) => {}
                other => panic!("{other:?}"),
            }
        }
        match integrate_density_power(&n, Orbital::GROUND, 0.5005, &cfg()) {
            Err(Error::BelowThreshold {
                numerically_divergent: true,
                ..
            }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_reports_best_value() {
        let n = WellSpec::unit(BoundaryKind::Neumann);
        let tight = cfg().with_max_periods(5);
        match integrate_density_power(&n, Orbital::GROUND, 0.6, &tight) {
            Err(Error::BudgetExceeded { periods, .. }) => assert_eq!(periods, 5),
            other => panic!("{other:?}"),
        }
    }
}
