//! The acceptance table: every reference number and structural property the
//! library is held to, with the tolerances pinned here.
//!
//! Each criterion evaluates a list of [`Check`]s; a criterion passes when all
//! of its checks do. Tolerances are multiplied by
//! [`VerifySettings::tolerance_scale`].

use crate::entropy::{
    expansion_eval, neumann_ground_integer_moment, onicescu, renyi, renyi_momentum, renyi_position,
    renyi_sum, renyi_sum_maximum, shannon, sobolev_sides, threshold, tsallis_from_renyi, Expansion, Space,
};
use crate::error::{Error, Result};
use crate::quadrature::rules::adaptive_gauss_kronrod;
use crate::quadrature::{adaptive_finite, integrate_density_log, integrate_density_power, QuadratureConfig};
use crate::special::{period_mean_unchecked, EULER_GAMMA};
use crate::well::{position_density, BoundaryKind, MomentumKernel, Orbital, WellSpec};
use std::f64::consts::PI;

const KINDS: [BoundaryKind; 2] = [BoundaryKind::Dirichlet, BoundaryKind::Neumann];

/// Number of criteria in the table.
pub const CRITERION_COUNT: u8 = 13;

#[derive(Debug, Clone, Copy)]
pub struct VerifySettings {
    pub tolerance_scale: f64,
    pub quadrature: QuadratureConfig<f64>,
}

impl Default for VerifySettings {
    fn default() -> Self {
        Self {
            tolerance_scale: 1.0,
            quadrature: QuadratureConfig::default(),
        }
    }
}

/// One measured-versus-expected comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    /// Human-readable expectation, e.g. `2.8603 ± 2e-4`.
    pub expected: String,
    pub passed: bool,
    /// Set for checks against a reference value known to be inconsistent.
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    /// Set when evaluation itself failed.
    pub error: Option<String>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.passed)
    }
}

struct Ctx {
    scale: f64,
    cfg: QuadratureConfig<f64>,
    checks: Vec<Check>,
}

impl Ctx {
    fn push(&mut self, label: String, measured: f64, expected: String, passed: bool) {
        self.checks.push(Check {
            label,
            measured,
            expected,
            passed: passed && measured.is_finite(),
            note: None,
        });
    }

    /// `|measured − expected| ≤ tol`.
    fn close(&mut self, label: impl Into<String>, measured: f64, expected: f64, tol: f64) {
        let tol = tol * self.scale;
        let passed = (measured - expected).abs() <= tol;
        self.push(label.into(), measured, format!("{expected:.10} ± {tol:.1e}"), passed);
    }

    /// `|measured − expected| ≤ tol |expected|`.
    fn rel_close(&mut self, label: impl Into<String>, measured: f64, expected: f64, tol: f64) {
        let tol = tol * self.scale;
        let passed = (measured - expected).abs() <= tol * expected.abs();
        self.push(label.into(), measured, format!("{expected:.12} (rel {tol:.1e})"), passed);
    }

    /// `measured ≥ bound − slack`.
    fn at_least(&mut self, label: impl Into<String>, measured: f64, bound: f64, slack: f64) {
        let slack = slack * self.scale;
        self.push(label.into(), measured, format!(">= {bound:e} - {slack:.1e}"), measured >= bound - slack);
    }

    /// `measured ≤ bound`, unscaled.
    fn at_most(&mut self, label: impl Into<String>, measured: f64, bound: f64) {
        self.push(label.into(), measured, format!("<= {bound:e}"), measured <= bound);
    }

    fn holds(&mut self, label: impl Into<String>, ok: bool) {
        self.push(label.into(), f64::from(u8::from(ok)), "true".into(), ok);
    }

    fn annotate_last(&mut self, note: &str) {
        if let Some(c) = self.checks.last_mut() {
            c.note = Some(note.to_string());
        }
    }
}

fn orb(n: u32) -> Orbital {
    Orbital::new(n).expect("orbital indices in the table are positive")
}

fn unit(kind: BoundaryKind) -> WellSpec<f64> {
    WellSpec::unit(kind)
}

fn width(kind: BoundaryKind, a: f64) -> WellSpec<f64> {
    WellSpec::new(kind, a).expect("widths in the table are positive")
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "position closed form",
        2 => "Shannon position limit and continuity",
        3 => "Dirichlet momentum golden values at order 1/2",
        4 => "momentum thresholds and divergence trend",
        5 => "Renyi-sum saturation at the left edge",
        6 => "Dirichlet sum asymptotes at infinite order",
        7 => "Dirichlet sum maxima",
        8 => "Neumann ground momentum limits",
        9 => "integer-order closed sums",
        10 => "Sobolev/Tsallis saturation",
        11 => "sup-limit and Rydberg entropies",
        12 => "property suites",
        13 => "Neumann divergence of the sum",
        _ => "unknown criterion",
    }
}

/// Runs one criterion (1-based id).
pub fn run_criterion(id: u8, settings: &VerifySettings) -> CriterionReport {
    let mut ctx = Ctx {
        scale: settings.tolerance_scale,
        cfg: settings.quadrature,
        checks: Vec::new(),
    };
    let outcome = match id {
        1 => c01_position(&mut ctx),
        2 => c02_shannon_position(&mut ctx),
        3 => c03_golden_half_order(&mut ctx),
        4 => c04_thresholds(&mut ctx),
        5 => c05_saturation(&mut ctx),
        6 => c06_sum_asymptotes(&mut ctx),
        7 => c07_sum_maxima(&mut ctx),
        8 => c08_neumann_ground(&mut ctx),
        9 => c09_integer_orders(&mut ctx),
        10 => c10_sobolev(&mut ctx),
        11 => c11_sup_limits(&mut ctx),
        12 => c12_properties(&mut ctx),
        13 => c13_neumann_divergence(&mut ctx),
        _ => Err(Error::Domain(format!("no criterion {id}"))),
    };
    CriterionReport {
        id,
        title: title(id),
        checks: ctx.checks,
        error: outcome.err().map(|e| e.to_string()),
    }
}

pub fn run_all(settings: &VerifySettings) -> Vec<CriterionReport> {
    (1..=CRITERION_COUNT).map(|id| run_criterion(id, settings)).collect()
}

fn c01_position(ctx: &mut Ctx) -> Result<()> {
    for a in [1.0, 2.5] {
        let spec = width(BoundaryKind::Dirichlet, a);
        let ln_a = a.ln();
        let r = renyi_position(&spec, orb(1), 0.5)?.value - ln_a;
        ctx.close(format!("a={a} R(1/2) - ln a = ln(8/pi^2)"), r, (8.0 / (PI * PI)).ln(), 1e-9);
        let r = renyi_position(&spec, orb(1), 2.0)?.value - ln_a;
        ctx.close(format!("a={a} R(2) - ln a = -ln(3/2)"), r, -(1.5f64).ln(), 1e-9);
        let r = renyi_position(&spec, orb(1), f64::INFINITY)?.value - ln_a;
        ctx.close(format!("a={a} R(inf) - ln a = -ln 2"), r, -(2f64).ln(), 1e-9);
    }
    let r = renyi_position(&unit(BoundaryKind::Dirichlet), orb(1), 1e3)?.value;
    let asymptote = expansion_eval(Expansion::PositionLargeOrder, 1e3)?;
    ctx.close("R(1000) against the large-order asymptote", r, asymptote, 2e-3);
    Ok(())
}

fn c02_shannon_position(ctx: &mut Ctx) -> Result<()> {
    let want = 2f64.ln() - 1.0;
    for kind in KINDS {
        let spec = unit(kind);
        let o = orb(2);
        let s = shannon(&spec, o, Space::Position, &ctx.cfg)?.value;
        ctx.close(format!("{kind} n=2 Shannon position"), s, want, 1e-9);
        let r = renyi_position(&spec, o, 1.0)?.value;
        ctx.close(format!("{kind} n=2 R(1) through the limit route"), r, want, 1e-9);
        for d in [1e-4, -1e-4] {
            let r = renyi_position(&spec, o, 1.0 + d)?.value;
            ctx.at_most(format!("{kind} |R(1{d:+e}) - S| position"), (r - s).abs(), 5e-4);
        }
    }
    let cfg = ctx.cfg;
    for kind in KINDS {
        let spec = unit(kind);
        let s = shannon(&spec, orb(1), Space::Momentum, &cfg)?.value;
        for d in [1e-4, -1e-4] {
            let r = renyi_momentum(&spec, orb(1), 1.0 + d, &cfg)?.value;
            ctx.at_most(format!("{kind} |R(1{d:+e}) - S| momentum"), (r - s).abs(), 5e-4);
        }
    }
    Ok(())
}

fn c03_golden_half_order(ctx: &mut Ctx) -> Result<()> {
    let spec = unit(BoundaryKind::Dirichlet);
    for (n, golden) in [(1u32, 2.8603), (2, 3.2812)] {
        let q = renyi_momentum(&spec, orb(n), 0.5, &ctx.cfg)?.value;
        ctx.close(format!("n={n} quadrature against the reference value"), q, golden, 2e-4);
        let si = expansion_eval(Expansion::DirichletMomentumHalfOrder, f64::from(n))?;
        ctx.close(format!("n={n} quadrature against the Si closed form"), q, si, 1e-10);
    }
    Ok(())
}

fn c04_thresholds(ctx: &mut Ctx) -> Result<()> {
    let cfg = ctx.cfg;
    for kind in KINDS {
        let spec = unit(kind);
        let th = threshold::<f64>(kind);
        for alpha in [th, th - 0.05, 0.5 * th] {
            let rejected = matches!(
                integrate_density_power(&spec, orb(1), alpha, &cfg),
                Err(Error::BelowThreshold { .. })
            );
            ctx.holds(format!("{kind} rejects alpha = {alpha}"), rejected);
        }
        for n in [1, 2] {
            let mut values = Vec::new();
            for j in 3..=8 {
                let alpha = th + 2f64.powi(-j);
                values.push(integrate_density_power(&spec, orb(n), alpha, &cfg)?.integral());
            }
            let increasing = values.windows(2).all(|w| w[1] > w[0]);
            ctx.holds(
                format!("{kind} n={n} I(th + 2^-j), j=3..8, strictly increasing: {values:.4?}"),
                increasing,
            );
        }
    }
    Ok(())
}

fn c05_saturation(ctx: &mut Ctx) -> Result<()> {
    let ln_2pi = (2.0 * PI).ln();
    for kind in KINDS {
        let r = renyi_sum(&unit(kind), orb(1), 0.5 + 1e-4, &ctx.cfg)?;
        ctx.close(format!("{kind} n=1 sum at alpha = 1/2 + 1e-4"), r.left, ln_2pi, 5e-3);
        ctx.at_least(format!("{kind} n=1 slack at alpha = 1/2 + 1e-4"), r.slack, 0.0, 1e-9);
        let edge = renyi_sum(&unit(kind), orb(1), 0.5, &ctx.cfg)?;
        ctx.close(format!("{kind} n=1 sum at alpha = 1/2 (sup limit)"), edge.left, ln_2pi, 1e-9);
    }
    Ok(())
}

fn c06_sum_asymptotes(ctx: &mut Ctx) -> Result<()> {
    let spec = unit(BoundaryKind::Dirichlet);
    for (n, golden) in [(1u32, 2.1671), (2, 2.5880)] {
        let r = renyi_sum(&spec, orb(n), f64::INFINITY, &ctx.cfg)?;
        ctx.close(format!("n={n} sum at alpha = inf"), r.left, golden, 2e-4);
        let si = expansion_eval(Expansion::DirichletSumSupLimit, f64::from(n))?;
        ctx.close(format!("n={n} sum at alpha = inf against the Si closed form"), r.left, si, 1e-9);
    }
    Ok(())
}

fn c07_sum_maxima(ctx: &mut Ctx) -> Result<()> {
    let spec = unit(BoundaryKind::Dirichlet);
    for (n, value, location) in [(1u32, 2.2670, 2.92), (2, 2.6793, 3.35)] {
        let (a_max, s_max) = renyi_sum_maximum(&spec, orb(n), 1.5, 6.0, &ctx.cfg)?;
        ctx.close(format!("n={n} maximal sum"), s_max, value, 5e-4);
        ctx.close(format!("n={n} maximizing alpha"), a_max, location, 0.05);
    }
    Ok(())
}

fn c08_neumann_ground(ctx: &mut Ctx) -> Result<()> {
    let spec = unit(BoundaryKind::Neumann);
    let cfg = ctx.cfg;
    let log_int = integrate_density_log(&spec, orb(1), &cfg)?.value;
    ctx.close("log integral = -pi(1 - gamma)", log_int, -PI * (1.0 - EULER_GAMMA), 2e-4);
    ctx.close("log integral against -1.3282", log_int, -1.3282, 2e-4);
    let s = shannon(&spec, orb(1), Space::Momentum, &cfg)?.value;
    ctx.close("Shannon momentum = ln 2pi + 2(1 - gamma)", s, (2.0 * PI).ln() + 2.0 * (1.0 - EULER_GAMMA), 2e-4);
    let inf = renyi_momentum(&spec, orb(1), f64::INFINITY, &cfg)?.value;
    ctx.close("R(inf) = ln 2pi", inf, (2.0 * PI).ln(), 1e-8);
    let h = 1e-3;
    let slope = (renyi_momentum(&spec, orb(1), 1.0 + h, &cfg)?.value - renyi_momentum(&spec, orb(1), 1.0 - h, &cfg)?.value)
        / (2.0 * h);
    ctx.close("slope at alpha = 1 against 2(gamma - 1)^2", slope, 2.0 * (EULER_GAMMA - 1.0).powi(2), 1e-3);
    ctx.annotate_last(
        "the printed coefficient is positive, but dR/dalpha at 1 equals -Var(ln gamma)/2 <= 0; \
         the measured slope matches -1.19731 from the variance",
    );
    Ok(())
}

fn c09_integer_orders(ctx: &mut Ctx) -> Result<()> {
    let spec = unit(BoundaryKind::Neumann);
    for m in 1..=4u32 {
        let closed = neumann_ground_integer_moment::<f64>(m)?;
        let q = integrate_density_power(&spec, orb(1), f64::from(m), &ctx.cfg)?.integral();
        ctx.rel_close(format!("m={m} quadrature against the closed sum"), q, closed, 1e-8);
    }
    let known = [PI / 2.0, PI / 3.0, 11.0 * PI / 40.0];
    for (m, want) in (1..=3u32).zip(known) {
        ctx.rel_close(format!("m={m} closed sum"), neumann_ground_integer_moment(m)?, want, 1e-14);
    }
    Ok(())
}

fn c10_sobolev(ctx: &mut Ctx) -> Result<()> {
    let cfg = ctx.cfg;
    for a in [1.0, 3.0] {
        for (kind, golden) in [(BoundaryKind::Dirichlet, 0.3591), (BoundaryKind::Neumann, 0.3989)] {
            let r = sobolev_sides(&width(kind, a), orb(1), 0.5, &cfg)?;
            let want = golden * a.sqrt();
            ctx.close(format!("{kind} a={a} n=1 left side at 1/2"), r.left, want, 2e-4);
            ctx.close(format!("{kind} a={a} n=1 right side at 1/2"), r.right, want, 2e-4);
        }
    }
    let quarter = PI.powf(-0.25);
    for kind in KINDS {
        for n in 1..=3 {
            let r = sobolev_sides(&unit(kind), orb(n), 1.0, &cfg)?;
            ctx.close(format!("{kind} n={n} left side at 1"), r.left, quarter, 1e-8);
            ctx.close(format!("{kind} n={n} right side at 1"), r.right, quarter, 1e-8);
        }
        let r = sobolev_sides(&unit(kind), orb(2), 0.75, &cfg)?;
        ctx.at_least(format!("{kind} n=2 slack at 0.75"), r.slack, 1e-4, 0.0);
    }
    Ok(())
}

fn c11_sup_limits(ctx: &mut Ctx) -> Result<()> {
    let cfg = ctx.cfg;
    for a in [1.0, 0.4] {
        let r = renyi_momentum(&width(BoundaryKind::Dirichlet, a), orb(1), f64::INFINITY, &cfg)?.value;
        ctx.close(format!("a={a} Dirichlet n=1 R(inf) = -ln a + ln(pi^3/4)"), r, -a.ln() + (PI.powi(3) / 4.0).ln(), 1e-12);
    }
    let r = renyi_momentum(&unit(BoundaryKind::Dirichlet), orb(1), f64::INFINITY, &cfg)?.value;
    ctx.close("Dirichlet n=1 R(inf) against 2.0478", r, 2.0478, 1e-4);
    for (kind, which) in [
        (BoundaryKind::Dirichlet, Expansion::DirichletRydbergSupLimit),
        (BoundaryKind::Neumann, Expansion::NeumannRydbergSupLimit),
    ] {
        let r = renyi_momentum(&unit(kind), orb(30), f64::INFINITY, &cfg)?.value;
        ctx.close(format!("{kind} n=30 R(inf) against the Rydberg form"), r, expansion_eval(which, 30.0)?, 5e-4);
    }
    Ok(())
}

/// Log-spaced grid of `count` orders on `[lo, hi]`.
fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (l, h) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (l + (h - l) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

fn c12_properties(ctx: &mut Ctx) -> Result<()> {
    let cfg = ctx.cfg;
    // normalization of both densities
    let mut worst_pos: f64 = 0.0;
    let mut worst_mom: f64 = 0.0;
    for kind in KINDS {
        let spec = unit(kind);
        for n in 1..=6 {
            let o = orb(n);
            let p = adaptive_finite(|x| position_density(&spec, o, x).unwrap_or(0.0), -0.5, 0.5, &cfg)?.value;
            worst_pos = worst_pos.max((p - 1.0).abs());
            let amp = MomentumKernel::<f64>::new(kind, o).amplitude();
            let m = 4.0 * amp * integrate_density_power(&spec, o, 1.0, &cfg)?.integral();
            worst_mom = worst_mom.max((m - 1.0).abs());
        }
    }
    ctx.at_most("normalization, position, n <= 6, max |int - 1|", worst_pos, 1e-8 * ctx.scale);
    ctx.at_most("normalization, momentum, n <= 6, max |int - 1|", worst_mom, 1e-8 * ctx.scale);

    // monotonicity in the order
    for kind in KINDS {
        let spec = unit(kind);
        for n in [1, 2, 4] {
            for space in [Space::Position, Space::Momentum] {
                let lo = match space {
                    Space::Position => 0.01,
                    Space::Momentum => threshold::<f64>(kind) + 0.02,
                };
                let grid = log_grid(lo, 20.0, 40);
                let mut worst = f64::INFINITY;
                let mut prev: Option<f64> = None;
                for &alpha in &grid {
                    let r = renyi(&spec, orb(n), space, alpha, &cfg)?.value;
                    if let Some(p) = prev {
                        worst = worst.min(p - r);
                    }
                    prev = Some(r);
                }
                ctx.at_least(format!("{kind} n={n} {space} non-increasing, min step"), worst, 0.0, 1e-9);
            }
        }
    }

    // width invariance of the sums
    let mut worst_scale: f64 = 0.0;
    for kind in KINDS {
        for n in [1, 3] {
            for alpha in [0.6, 1.5, 4.0] {
                let base = renyi_sum(&unit(kind), orb(n), alpha, &cfg)?.left;
                for a in [0.37, 4.2] {
                    let other = renyi_sum(&width(kind, a), orb(n), alpha, &cfg)?.left;
                    worst_scale = worst_scale.max((other - base).abs());
                }
            }
        }
    }
    ctx.at_most("Renyi sum width invariance, max |diff|", worst_scale, 1e-10 * ctx.scale);

    // level independence of the position entropies
    let mut identical = true;
    for alpha in [0.0, 0.3, 0.5, 2.0, 7.5, f64::INFINITY] {
        let reference = renyi_position(&unit(BoundaryKind::Dirichlet), orb(1), alpha)?.value;
        for (kind, first) in [(BoundaryKind::Dirichlet, 1), (BoundaryKind::Neumann, 2)] {
            for n in first..=6 {
                identical &= renyi_position(&unit(kind), orb(n), alpha)?.value == reference;
            }
        }
    }
    ctx.holds("position entropies identical across levels (exact)", identical);

    // Onicescu identity
    let mut worst_oni: f64 = 0.0;
    for kind in KINDS {
        for n in 1..=3 {
            for space in [Space::Position, Space::Momentum] {
                let spec = unit(kind);
                let o = onicescu(&spec, orb(n), space, &cfg)?;
                let r2 = renyi(&spec, orb(n), space, 2.0, &cfg)?.value;
                worst_oni = worst_oni.max((o - (1.0 - tsallis_from_renyi(r2, 2.0))).abs());
            }
        }
    }
    ctx.at_most("Onicescu identity, max |e^-R(2) - (1 - T(2))|", worst_oni, 1e-10 * ctx.scale);

    // quadrature against the brute-force period sum
    let mut worst_rel: f64 = 0.0;
    for kind in KINDS {
        let th = threshold::<f64>(kind);
        for n in [1, 3, 6] {
            for alpha in [th + 0.05, 0.7, 1.5, 4.0, 20.0] {
                let spec = unit(kind);
                let r = integrate_density_power(&spec, orb(n), alpha, &cfg)?;
                let oracle = brute_force_power_integral(kind, orb(n), alpha, 10_000);
                let rel = (r.integral() - oracle).abs() / oracle;
                worst_rel = worst_rel.max(rel);
            }
        }
    }
    ctx.at_most("quadrature against the brute-force sum, max rel", worst_rel, 1e-7 * ctx.scale);
    Ok(())
}

fn c13_neumann_divergence(ctx: &mut Ctx) -> Result<()> {
    let cfg = ctx.cfg;
    let diff = |kind| -> Result<f64> {
        let spec = unit(kind);
        Ok(renyi_sum(&spec, orb(1), 50.0, &cfg)?.left - renyi_sum(&spec, orb(1), 5.0, &cfg)?.left)
    };
    let neumann = diff(BoundaryKind::Neumann)?;
    ctx.at_least("Neumann n=1 sum(50) - sum(5)", neumann, 0.5, 0.0);
    let dirichlet = diff(BoundaryKind::Dirichlet)?;
    ctx.at_most("Dirichlet n=1 |sum(50) - sum(5)|", dirichlet.abs(), 0.1);
    Ok(())
}

/// `∫₀^∞ g^α dw` by adaptive Gauss–Kronrod over `periods` half-period
/// segments of the globally evaluated kernel, plus the leading closed tail
/// `μ(α) ∫_Z^∞ E^α`. Independent of the tail machinery of the main route.
pub fn brute_force_power_integral(kind: BoundaryKind, orb: Orbital, alpha: f64, periods: usize) -> f64 {
    let kernel = MomentumKernel::<f64>::new(kind, orb);
    let c = kernel.shift();
    let r = kernel.first_zero();
    let f = |w: f64| kernel.eval(w).powf(alpha);
    let mut total = 0.0;
    let mut comp = 0.0;
    let mut add = |x: f64| {
        let y = x - comp;
        let t = total + y;
        comp = (t - total) - y;
        total = t;
    };
    if r > 0.0 {
        add(adaptive_gauss_kronrod(f, 0.0, r, 1e-300, 1e-13, 400).value);
    }
    let mut z = r;
    for _ in 0..periods {
        add(adaptive_gauss_kronrod(f, z, z + PI, 1e-300, 1e-13, 400).value);
        z += PI;
    }
    // ∫_Z^∞ E^α dw with w = Z / v and v = u^{1/(pα−1)}
    let p = kernel.decay_power();
    let q = 4.0 - p;
    let s = 1.0 / (p * alpha - 1.0);
    let h = |u: f64| {
        let v = u.powf(s);
        (1.0 - (c * v / z).powi(2)).powf(-2.0 * alpha)
    };
    let envelope_tail = z.powf(1.0 + q * alpha - 4.0 * alpha) * s * adaptive_gauss_kronrod(h, 0.0, 1.0, 1e-300, 1e-14, 400).value;
    add(period_mean_unchecked(alpha) * envelope_tail);
    total
}
