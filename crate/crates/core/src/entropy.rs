//! Rényi, Tsallis, Shannon and Onicescu measures of the well eigenstates and
//! the uncertainty relations built from them.
//!
//! Orders are plain reals; `T::infinity()` selects the sup-density limit
//! `R(∞) = −ln max p`. Position entropies carry `+ln a`, momentum entropies
//! `−ln a`.

use crate::error::{Error, Result};
use crate::optimize::golden_section_max;
use crate::quadrature::{integrate_density_log, integrate_density_power, QuadratureConfig};
use crate::scalar::Real;
use crate::special::{euler_gamma, period_mean_unchecked, sine_integral};
use crate::well::{momentum_peak, BoundaryKind, MomentumKernel, Orbital, WellSpec};

/// Orders within this distance of one are replaced by the Shannon limit.
pub const SHANNON_WINDOW: f64 = 1e-6;
/// Saturation tolerance when every participating value is analytic.
pub const SATURATION_TOL_CLOSED: f64 = 1e-6;
/// Saturation tolerance when a quadrature result participates.
pub const SATURATION_TOL_QUADRATURE: f64 = 1e-5;

const ZETA3: f64 = 1.202_056_903_159_594_285_4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Position,
    Momentum,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::Position => "position",
            Space::Momentum => "momentum",
        }
    }
}

impl core::fmt::Display for Space {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "position" | "x" => Ok(Space::Position),
            "momentum" | "k" => Ok(Space::Momentum),
            other => Err(Error::domain(format!("unknown space `{other}`"))),
        }
    }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    ClosedForm,
    Quadrature,
    /// Analytic limit substituted inside a small window (`α → 1`, `α → ½`).
    SeriesLimit,
    /// `α = ∞` through the density maximum.
    SupLimit,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::ClosedForm => "closed_form",
            Route::Quadrature => "quadrature",
            Route::SeriesLimit => "series_limit",
            Route::SupLimit => "sup_limit",
        }
    }
}

impl core::fmt::Display for Route {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// A measure value in nats with its error estimate and route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureResult<T> {
    pub value: T,
    pub error_estimate: T,
    pub route: Route,
}

/// Both sides of an uncertainty relation at conjugate orders `α`, `β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport<T> {
    pub alpha: T,
    pub beta: T,
    pub left: T,
    pub right: T,
    /// `left − right`.
    pub slack: T,
    pub saturated: bool,
    pub saturation_tol: T,
}

impl<T: Real> UncertaintyReport<T> {
    fn new(alpha: T, beta: T, left: T, right: T, saturation_tol: T, two_sided: bool) -> Self {
        let slack = left - right;
        let saturated = if two_sided {
            slack.abs() <= saturation_tol
        } else {
            slack <= saturation_tol
        };
        Self {
            alpha,
            beta,
            left,
            right,
            slack,
            saturated,
            saturation_tol,
        }
    }
}

/// Threshold order `α_TH` below which momentum measures diverge.
/// Position measures exist for every `α ≥ 0`.
pub fn threshold<T: Real>(kind: BoundaryKind) -> T {
    kind.momentum_threshold()
}

/// Conjugate order `β = α / (2α − 1)`, so that `1/α + 1/β = 2`;
/// `½ ↦ ∞` and `∞ ↦ ½`.
pub fn conjugate<T: Real>(alpha: T) -> T {
    let half = T::lit(0.5);
    if alpha.is_infinite() {
        half
    } else if alpha == half {
        T::infinity()
    } else {
        alpha / (alpha + alpha - T::one())
    }
}

fn check_order<T: Real>(alpha: T) -> Result<()> {
    if alpha.is_nan() || alpha < T::zero() {
        return Err(Error::domain(format!("order must be a nonnegative number, got {alpha}")));
    }
    Ok(())
}

fn in_shannon_window<T: Real>(alpha: T) -> bool {
    (alpha - T::one()).abs() < T::lit(SHANNON_WINDOW)
}

fn has_flat_position(spec: &WellSpec<impl Real>, orb: Orbital) -> bool {
    spec.kind() == BoundaryKind::Neumann && orb.is_ground()
}

/// Position Rényi entropy (level-independent except for the flat Neumann
/// ground state, whose value is `ln a` at every order).
pub fn renyi_position<T: Real>(spec: &WellSpec<T>, orb: Orbital, alpha: T) -> Result<MeasureResult<T>> {
    check_order(alpha)?;
    let ln_a = spec.width().ln();
    let eps = T::epsilon();
    if has_flat_position(spec, orb) {
        return Ok(MeasureResult {
            value: ln_a,
            error_estimate: T::zero(),
            route: if alpha.is_infinite() { Route::SupLimit } else { Route::ClosedForm },
        });
    }
    if alpha.is_infinite() {
        return Ok(MeasureResult {
            value: ln_a - T::LN_2(),
            error_estimate: T::zero(),
            route: Route::SupLimit,
        });
    }
    let d = alpha - T::one();
    if d.abs() < T::lit(SHANNON_WINDOW) {
        let slope = T::lit(0.5) * (T::lit(3.0) - T::PI() * T::PI() / T::lit(3.0));
        return Ok(MeasureResult {
            value: ln_a - T::one() + T::LN_2(),
            error_estimate: slope.abs() * d.abs() + eps,
            route: Route::SeriesLimit,
        });
    }
    let shape = if d.abs() < T::lit(1e-3) {
        position_shape_near_one(d)
    } else {
        (alpha * T::LN_2() + period_mean_unchecked(alpha).ln()) / (T::one() - alpha)
    };
    Ok(MeasureResult {
        value: ln_a + shape,
        error_estimate: T::lit(16.0) * eps * (T::one() + shape.abs()),
        route: Route::ClosedForm,
    })
}

/// `(α ln 2 + ln μ(α)) / (1 − α)` from its Taylor series about `α = 1`,
/// free of the `0/0` cancellation of the direct form.
fn position_shape_near_one<T: Real>(d: T) -> T {
    let pi2 = T::PI() * T::PI();
    let z3 = T::lit(ZETA3);
    // derivatives of h(α) = α ln 2 + ln Γ(α+½) − ln Γ(α+1) − ½ ln π at α = 1
    let h1 = T::one() - T::LN_2();
    let h2 = pi2 / T::lit(3.0) - T::lit(3.0);
    let h3 = T::lit(14.0) - T::lit(12.0) * z3;
    let h4 = T::lit(14.0 / 15.0) * pi2 * pi2 - T::lit(90.0);
    -(h1 + d * (h2 / T::lit(2.0) + d * (h3 / T::lit(6.0) + d * h4 / T::lit(24.0))))
}

/// `ln ∫ ρ^α dx` at finite `α`.
fn ln_position_power<T: Real>(spec: &WellSpec<T>, orb: Orbital, alpha: T) -> T {
    let ln_a = spec.width().ln();
    let scale = (T::one() - alpha) * ln_a;
    if has_flat_position(spec, orb) {
        scale
    } else {
        scale + alpha * T::LN_2() + period_mean_unchecked(alpha).ln()
    }
}

/// `ln ∫ γ^α dk` at finite `α` with its absolute error.
fn ln_momentum_power<T: Real>(
    spec: &WellSpec<T>,
    orb: Orbital,
    alpha: T,
    cfg: &QuadratureConfig<T>,
) -> Result<(T, T)> {
    if alpha == T::one() {
        return Ok((T::zero(), T::zero()));
    }
    let kernel = MomentumKernel::<T>::new(spec.kind(), orb);
    let r = integrate_density_power(spec, orb, alpha, cfg)?;
    let ln_a = spec.width().ln();
    let value = T::lit(4.0).ln() + alpha * kernel.amplitude().ln() + (alpha - T::one()) * ln_a + r.ln_integral();
    Ok((value, r.relative_error()))
}

/// Momentum Rényi entropy. Orders near one take the Shannon route, `α = ∞`
/// the density maximum.
pub fn renyi_momentum<T: Real>(
    spec: &WellSpec<T>,
    orb: Orbital,
    alpha: T,
    cfg: &QuadratureConfig<T>,
) -> Result<MeasureResult<T>> {
    check_order(alpha)?;
    if alpha.is_infinite() {
        let (_, gamma_max) = momentum_peak(spec, orb);
        return Ok(MeasureResult {
            value: -gamma_max.ln(),
            error_estimate: T::lit(16.0) * T::epsilon(),
            route: Route::SupLimit,
        });
    }
    if in_shannon_window(alpha) {
        let s = shannon_momentum(spec, orb, cfg)?;
        return Ok(MeasureResult {
            route: Route::SeriesLimit,
            ..s
        });
    }
    let (ln_int, err) = ln_momentum_power(spec, orb, alpha, cfg)?;
    let value = ln_int / (T::one() - alpha);
    Ok(MeasureResult {
        value,
        error_estimate: err / (T::one() - alpha).abs() + T::lit(16.0) * T::epsilon() * value.abs(),
        route: Route::Quadrature,
    })
}

pub fn renyi<T: Real>(
    spec: &WellSpec<T>,
    orb: Orbital,
    space: Space,
    alpha: T,
    cfg: &QuadratureConfig<T>,
) -> Result<MeasureResult<T>> {
    match space {
        Space::Position => renyi_position(spec, orb, alpha),
        Space::Momentum => renyi_momentum(spec, orb, alpha, cfg),
    }
}

fn shannon_momentum<T: Real>(spec: &WellSpec<T>, orb: Orbital, cfg: &QuadratureConfig<T>) -> Result<MeasureResult<T>> {
    let kernel = MomentumKernel::<T>::new(spec.kind(), orb);
    let amp = kernel.amplitude();
    let r = integrate_density_log(spec, orb, cfg)?;
    let four_amp = T::lit(4.0) * amp;
    let value = -spec.width().ln() - amp.ln() - four_amp * r.value;
    Ok(MeasureResult {
        value,
        error_estimate: four_amp * r.error_bound + T::lit(16.0) * T::epsilon() * value.abs(),
        route: Route::Quadrature,
    })
}

/// Shannon entropy `−∫ p ln p`.
pub fn shannon<T: Real>(
    spec: &WellSpec<T>,
    orb: Orbital,
    space: Space,
    cfg: &QuadratureConfig<T>,
) -> Result<MeasureResult<T>> {
    match space {
        Space::Position => {
            let ln_a = spec.width().ln();
            let value = if has_flat_position(spec, orb) {
                ln_a
            } else {
                ln_a - T::one() + T::LN_2()
            };
            Ok(MeasureResult {
                value,
                error_estimate: T::zero(),
                route: Route::ClosedForm,
            })
        }
        Space::Momentum => shannon_momentum(spec, orb, cfg),
    }
}

/// Tsallis entropy from the Rényi entropy of the same order,
/// `T = (1 − e^{(1−α)R}) / (α − 1)`. Near `α = 1` both are the Shannon
/// entropy and `renyi_value` is returned. At `α = ∞` the limit is `0` for
/// `R ≥ 0` and `−∞` otherwise.
pub fn tsallis_from_renyi<T: Real>(renyi_value: T, alpha: T) -> T {
    if alpha.is_infinite() && alpha > T::zero() {
        return if renyi_value >= T::zero() { T::zero() } else { T::neg_infinity() };
    }
    let d = alpha - T::one();
    if d.abs() < T::lit(SHANNON_WINDOW) {
        return renyi_value;
    }
    -(-d * renyi_value).exp_m1() / d
}

/// Onicescu energy `∫ p² = e^{−R(2)}`.
pub fn onicescu<T: Real>(spec: &WellSpec<T>, orb: Orbital, space: Space, cfg: &QuadratureConfig<T>) -> Result<T> {
    let two = T::lit(2.0);
    Ok((-renyi(spec, orb, space, two, cfg)?.value).exp())
}

/// Right side `f(α)` of the Rényi uncertainty relation for one dimension,
/// `ln π − [ln α − (α − ½)/(α − 1) ln(2α − 1)]`; equals `ln 2π` at `½` and
/// `∞`, and `1 + ln π` at one.
pub fn renyi_sum_bound<T: Real>(alpha: T) -> T {
    let half = T::lit(0.5);
    let ln_pi = T::PI().ln();
    if alpha.is_infinite() || alpha == half {
        return ln_pi + T::LN_2();
    }
    let d = alpha - T::one();
    if d.abs() < T::lit(SHANNON_WINDOW) {
        // (α−½) ln(2α−1)/(α−1) = 1 + d − 2d²/3 + …, ln α = d − d²/2 + …
        return T::one() + ln_pi - d * d / T::lit(6.0);
    }
    let two_am1 = alpha + alpha - T::one();
    ln_pi - (alpha.ln() - (alpha - half) / d * two_am1.ln())
}

/// Rényi uncertainty relation `R_ρ(α) + R_γ(β) ≥ f(α)` for `α ≥ ½`
/// (`α = ½` and `α = ∞` use the sup limits).
///
/// Neumann states at `α = ∞` (and at orders so large that `β` is within the
/// numerical margin of ½) report a below-threshold error: the sum diverges.
pub fn renyi_sum<T: Real>(
    spec: &WellSpec<T>,
    orb: Orbital,
    alpha: T,
    cfg: &QuadratureConfig<T>,
) -> Result<UncertaintyReport<T>> {
    if alpha.is_nan() || alpha < T::lit(0.5) {
        return Err(Error::domain(format!("the Rényi relation needs α ≥ 1/2, got {alpha}")));
    }
    let beta = conjugate(alpha);
    let pos = renyi_position(spec, orb, alpha)?;
    let mom = renyi_momentum(spec, orb, beta, cfg)?;
    let tol = match mom.route {
        Route::Quadrature | Route::SeriesLimit => T::lit(SATURATION_TOL_QUADRATURE),
        Route::ClosedForm | Route::SupLimit => T::lit(SATURATION_TOL_CLOSED),
    };
    Ok(UncertaintyReport::new(
        alpha,
        beta,
        pos.value + mom.value,
        renyi_sum_bound(alpha),
        tol,
        false,
    ))
}

/// Both sides of the Sobolev (Tsallis) relation
/// `(α/π)^{1/4α} ‖ρ‖_α^{1/2} ≥ (β/π)^{1/4β} ‖γ‖_β^{1/2}` on `½ ≤ α ≤ 1`.
/// `saturated` means the sides agree within the tolerance.
pub fn sobolev_sides<T: Real>(
    spec: &WellSpec<T>,
    orb: Orbital,
    alpha: T,
    cfg: &QuadratureConfig<T>,
) -> Result<UncertaintyReport<T>> {
    let half = T::lit(0.5);
    if !(alpha >= half && alpha <= T::one()) {
        return Err(Error::domain(format!("the Sobolev relation needs 1/2 ≤ α ≤ 1, got {alpha}")));
    }
    let pi = T::PI();
    let four = T::lit(4.0);
    let two = T::lit(2.0);
    let beta = conjugate(alpha);
    let ln_left = (alpha / pi).ln() / (four * alpha) + ln_position_power(spec, orb, alpha) / (two * alpha);
    let (ln_right, quadrature) = if beta.is_infinite() {
        let (_, gamma_max) = momentum_peak(spec, orb);
        (half * gamma_max.ln(), false)
    } else {
        let (ln_int, _) = ln_momentum_power(spec, orb, beta, cfg)?;
        ((beta / pi).ln() / (four * beta) + ln_int / (two * beta), beta != T::one())
    };
    let tol = if quadrature {
        T::lit(SATURATION_TOL_QUADRATURE)
    } else {
        T::lit(SATURATION_TOL_CLOSED)
    };
    Ok(UncertaintyReport::new(alpha, beta, ln_left.exp(), ln_right.exp(), tol, true))
}

/// Golden-section maximum of the Rényi sum over `α ∈ [lo, hi]`; returns
/// `(α_max, sum_max)`.
pub fn renyi_sum_maximum<T: Real>(
    spec: &WellSpec<T>,
    orb: Orbital,
    lo: T,
    hi: T,
    cfg: &QuadratureConfig<T>,
) -> Result<(T, T)> {
    if !(lo >= T::lit(0.5) && hi > lo && hi.is_finite()) {
        return Err(Error::domain(format!("bad search interval [{lo}, {hi}]")));
    }
    let failure = core::cell::RefCell::new(None);
    let sum = |a: T| match renyi_sum(spec, orb, a, cfg) {
        Ok(r) => r.left,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            T::nan()
        }
    };
    let (a, v) = golden_section_max(sum, lo, hi, T::lit(1e-5) * (T::one() + hi));
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok((a, v)),
    }
}

/// Truncated asymptotic expansions and special values, evaluated as printed
/// for unit width. Used to cross-check the exact routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Expansion {
    /// `−α ln 2 + (π²/6 − ln 2) α²`, small `α`.
    PositionSmallOrder,
    /// `ln(8/π²) + 4(ln(8/π) − 1)(α − ½)`.
    PositionNearHalf,
    /// `−1 + ln 2 + ½(3 − π²/3)(α − 1)`.
    PositionNearOne,
    /// `−ln 2 + α⁻¹ ln(√(πα)/2)`, large `α`.
    PositionLargeOrder,
    /// Slope coefficient `4(ln(8/π) − 1)`; argument ignored.
    NearHalfSlope,
    /// Slope coefficient `½(3 − π²/3)`; argument ignored.
    NearOneSlope,
    /// Neumann ground momentum `ln 2π + 2(1 − γ) + 2(γ − 1)²(α − 1)`.
    ///
    /// The slope term is kept as printed but is wrong: the exact derivative
    /// at one is `−½ Var(ln γ) ≈ −1.19731`. Only the constant is reliable.
    NeumannGroundMomentumNearOne,
    /// Dirichlet `R_γ(∞) ≈ ln 4π − 3/(n²π²)`; argument `n`.
    DirichletRydbergSupLimit,
    /// Neumann `R_γ(∞) ≈ ln 4π − 8/(3n²π²)`; argument `n`.
    NeumannRydbergSupLimit,
    /// Dirichlet momentum entropy at order ½ through `Si`; argument `n ∈ {1, 2}`.
    DirichletMomentumHalfOrder,
    /// Dirichlet Rényi sum at `α = ∞` through `Si`; argument `n ∈ {1, 2}`.
    DirichletSumSupLimit,
}

fn si_combination<T: Real>(n: T) -> Result<T> {
    let pi = T::PI();
    if n == T::one() {
        sine_integral(pi)
    } else if n == T::lit(2.0) {
        Ok(T::lit(2.0) * sine_integral(pi)? - sine_integral(pi + pi)?)
    } else {
        Err(Error::domain(format!("the Si closed form exists for n = 1, 2 only, got {n}")))
    }
}

pub fn expansion_eval<T: Real>(which: Expansion, x: T) -> Result<T> {
    let pi = T::PI();
    let pi2 = pi * pi;
    let ln2 = T::LN_2();
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let g = euler_gamma::<T>();
    let ln_4pi = (T::lit(4.0) * pi).ln();
    Ok(match which {
        Expansion::PositionSmallOrder => -ln2 * x + (pi2 / T::lit(6.0) - ln2) * x * x,
        Expansion::PositionNearHalf => {
            (T::lit(8.0) / pi2).ln() + expansion_eval(Expansion::NearHalfSlope, x)? * (x - half)
        }
        Expansion::PositionNearOne => {
            -T::one() + ln2 + expansion_eval(Expansion::NearOneSlope, x)? * (x - T::one())
        }
        Expansion::PositionLargeOrder => -ln2 + ((pi * x).sqrt() / two).ln() / x,
        Expansion::NearHalfSlope => T::lit(4.0) * ((T::lit(8.0) / pi).ln() - T::one()),
        Expansion::NearOneSlope => half * (T::lit(3.0) - pi2 / T::lit(3.0)),
        Expansion::NeumannGroundMomentumNearOne => {
            (two * pi).ln() + two * (T::one() - g) + two * (g - T::one()).powi(2) * (x - T::one())
        }
        Expansion::DirichletRydbergSupLimit => ln_4pi - T::lit(3.0) / (x * x * pi2),
        Expansion::NeumannRydbergSupLimit => ln_4pi - T::lit(8.0) / (T::lit(3.0) * x * x * pi2),
        Expansion::DirichletMomentumHalfOrder => two * (T::lit(4.0) * si_combination(x)? / pi.sqrt()).ln(),
        Expansion::DirichletSumSupLimit => {
            let s = si_combination(x)?;
            (T::lit(8.0) / pi * s * s).ln()
        }
    })
}

/// `∫₀^∞ (sin z / z)^{2m} dz = mπ Σ_{j<m} (−1)^j (m−j)^{2m−1} / (j! (2m−j)!)`.
///
/// Terms are formed in log space beyond `m = 15`; the alternating sum still
/// cancels, so large `m` lose relative accuracy.
pub fn neumann_ground_integer_moment<T: Real>(m: u32) -> Result<T> {
    if m == 0 {
        return Err(Error::domain("moment index must be at least 1"));
    }
    let mf = T::lit(f64::from(m));
    let two_m = 2 * m;
    let mut sum = crate::scalar::CompensatedSum::new();
    if m <= 15 {
        let mut fact = vec![T::one(); two_m as usize + 1];
        for i in 1..=two_m as usize {
            fact[i] = fact[i - 1] * T::from_usize_lossy(i);
        }
        for j in 0..m {
            let base = T::lit(f64::from(m - j));
            let term = base.powi((two_m - 1) as i32) / (fact[j as usize] * fact[(two_m - j) as usize]);
            sum.add(if j % 2 == 0 { term } else { -term });
        }
    } else {
        let ln_fact = |k: u32| crate::special::ln_gamma_unchecked(T::lit(f64::from(k)) + T::one());
        for j in 0..m {
            let ln_term = T::lit(f64::from(two_m - 1)) * T::lit(f64::from(m - j)).ln() - ln_fact(j) - ln_fact(two_m - j);
            let term = ln_term.exp();
            sum.add(if j % 2 == 0 { term } else { -term });
        }
    }
    Ok(mf * T::PI() * sum.value())
}
