//! Numerical integration for the three integral families the measures need:
//! finite-interval integrals, the improper power-of-density integrals
//! `∫₀^∞ g^α`, and the entropy integral `∫₀^∞ g ln g`.

mod oscillatory;
pub(crate) mod rules;

pub use oscillatory::{integrate_density_log, integrate_density_power, near_threshold_margin};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerances and budgets of the integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    /// Maximum number of half-period segments summed before giving up.
    pub max_periods: usize,
    /// Required accuracy of the closed-form tail, relative to the total.
    pub tail_rel_tol: T,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::tol_floor(1e-11),
            rel_tol: T::tol_floor(1e-10),
            max_periods: 200_000,
            tail_rel_tol: T::tol_floor(1e-10),
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: T| x.is_finite() && x > T::zero();
        if !(positive(self.abs_tol) && positive(self.rel_tol) && positive(self.tail_rel_tol)) {
            return Err(Error::domain("quadrature tolerances must be finite and positive"));
        }
        if self.max_periods == 0 {
            return Err(Error::domain("max_periods must be at least 1"));
        }
        Ok(())
    }

    pub fn with_max_periods(mut self, max_periods: usize) -> Self {
        self.max_periods = max_periods;
        self
    }
}

/// Value of an integral with its error bound and bookkeeping.
///
/// Power integrals of steep kernels under- or overflow for large orders, so
/// the integral is `value · exp(log_scale)`; `error_bound` is on the same
/// scale as `value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult<T> {
    pub value: T,
    pub error_bound: T,
    pub periods_used: usize,
    pub tail_estimate: T,
    pub log_scale: T,
}

impl<T: Real> IntegralResult<T> {
    pub(crate) fn unscaled(value: T, error_bound: T) -> Self {
        Self {
            value,
            error_bound,
            periods_used: 0,
            tail_estimate: T::zero(),
            log_scale: T::zero(),
        }
    }

    /// The integral on its natural scale.
    pub fn integral(&self) -> T {
        self.value * self.log_scale.exp()
    }

    /// Natural logarithm of the integral, finite even when `integral()` is not.
    pub fn ln_integral(&self) -> T {
        self.value.ln() + self.log_scale
    }

    /// Error bound divided by the value.
    pub fn relative_error(&self) -> T {
        if self.value == T::zero() {
            self.error_bound
        } else {
            (self.error_bound / self.value).abs()
        }
    }
}

const MAX_SUBINTERVALS: usize = 20_000;

/// Adaptive Gauss–Kronrod integral of `f` over `[lo, hi]`.
///
/// Meets `|error| ≤ max(abs_tol, rel_tol |value|)` or fails with
/// [`Error::ToleranceNotMet`] carrying the best value.
pub fn adaptive_finite<T: Real, F: FnMut(T) -> T>(
    f: F,
    lo: T,
    hi: T,
    cfg: &QuadratureConfig<T>,
) -> Result<IntegralResult<T>> {
    cfg.validate()?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::domain(format!("integration bounds must satisfy lo < hi, got [{lo}, {hi}]")));
    }
    let out = rules::adaptive_gauss_kronrod(f, lo, hi, cfg.abs_tol, cfg.rel_tol, MAX_SUBINTERVALS);
    if !out.value.is_finite() {
        return Err(Error::domain("integrand produced a non-finite value"));
    }
    if !out.converged {
        return Err(Error::ToleranceNotMet {
            value: out.value.to_f64_lossy(),
            error_bound: out.error.to_f64_lossy(),
        });
    }
    Ok(IntegralResult::unscaled(out.value, out.error))
}

/// `∫ p ln p` over `[lo, hi]` with `0 ln 0 = 0`.
pub fn integrate_plogp_finite<T: Real, F: Fn(T) -> T>(
    density: F,
    lo: T,
    hi: T,
    cfg: &QuadratureConfig<T>,
) -> Result<IntegralResult<T>> {
    adaptive_finite(
        |x| {
            let p = density(x);
            if p > T::zero() {
                p * p.ln()
            } else {
                T::zero()
            }
        },
        lo,
        hi,
        cfg,
    )
}
