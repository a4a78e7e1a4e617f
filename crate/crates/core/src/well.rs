//! Eigenstates of the one-dimensional Dirichlet and Neumann wells.
//!
//! Internally every momentum quantity is expressed through the half
//! dimensionless wave number `w = a k / 2`, in which all three density
//! shapes reduce to
//!
//! ```text
//! γ(k) = a · A · g(w),   g(w) = [ wᵖ sinc(w − c) / (w + c) ]²
//! ```
//!
//! with `c` a multiple of `π/2`, `p ∈ {0, 1}` and `A` a normalization
//! amplitude. The sinc form removes the spurious pole at `w = c`.

use crate::error::{Error, Result};
use crate::optimize::golden_section_max;
use crate::scalar::{sinc, Real};

/// Boundary condition imposed at the well edges `x = ±a/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    /// The waveform vanishes at the edges.
    Dirichlet,
    /// The derivative of the waveform vanishes at the edges.
    Neumann,
}

impl BoundaryKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryKind::Dirichlet => "dirichlet",
            BoundaryKind::Neumann => "neumann",
        }
    }

    /// Order `α_TH` at and below which `∫ γ^α dk` diverges: the momentum
    /// density decays like `k⁻⁴` (Dirichlet) or `k⁻²` (Neumann).
    pub fn momentum_threshold<T: Real>(self) -> T {
        match self {
            BoundaryKind::Dirichlet => T::lit(0.25),
            BoundaryKind::Neumann => T::lit(0.5),
        }
    }
}

impl core::fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for BoundaryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dirichlet" | "d" => Ok(BoundaryKind::Dirichlet),
            "neumann" | "n" => Ok(BoundaryKind::Neumann),
            other => Err(Error::domain(format!("unknown boundary kind `{other}`"))),
        }
    }
}

/// Boundary condition plus well width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellSpec<T> {
    kind: BoundaryKind,
    width: T,
}

impl<T: Real> WellSpec<T> {
    pub fn new(kind: BoundaryKind, width: T) -> Result<Self> {
        if !(width.is_finite() && width > T::zero()) {
            return Err(Error::domain(format!("well width must be finite and positive, got {width}")));
        }
        Ok(Self { kind, width })
    }

    pub fn dirichlet(width: T) -> Result<Self> {
        Self::new(BoundaryKind::Dirichlet, width)
    }

    pub fn neumann(width: T) -> Result<Self> {
        Self::new(BoundaryKind::Neumann, width)
    }

    /// Unit-width well of the given kind.
    pub fn unit(kind: BoundaryKind) -> Self {
        Self {
            kind,
            width: T::one(),
        }
    }

    pub fn kind(&self) -> BoundaryKind {
        self.kind
    }

    pub fn width(&self) -> T {
        self.width
    }
}

/// Energy-ordered quantum index, `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orbital(u32);

impl Orbital {
    pub const GROUND: Orbital = Orbital(1);

    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("orbital index must be at least 1"));
        }
        Ok(Orbital(n))
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_ground(self) -> bool {
        self.0 == 1
    }
}

impl core::fmt::Display for Orbital {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Energy in units of `ħ² / (2 m* a²)`.
pub fn energy<T: Real>(spec: &WellSpec<T>, orb: Orbital) -> T {
    let m = match spec.kind {
        BoundaryKind::Dirichlet => orb.0,
        BoundaryKind::Neumann => orb.0 - 1,
    };
    let m = T::lit(f64::from(m));
    T::PI() * T::PI() * m * m
}

/// Position density `ρₙ(x)` on the open interval `|x| < a/2`.
pub fn position_density<T: Real>(spec: &WellSpec<T>, orb: Orbital, x: T) -> Result<T> {
    let a = spec.width;
    let half = T::lit(0.5);
    if x.is_nan() || x.abs() >= half * a {
        return Err(Error::domain(format!(
            "position {x} lies outside the well (|x| < {})",
            half * a
        )));
    }
    let two_over_a = T::lit(2.0) / a;
    let phase = x / a - half;
    let n = T::lit(f64::from(orb.0));
    Ok(match spec.kind {
        BoundaryKind::Dirichlet => two_over_a * (n * T::PI() * phase).sin().powi(2),
        BoundaryKind::Neumann if orb.is_ground() => a.recip(),
        BoundaryKind::Neumann => two_over_a * ((n - T::one()) * T::PI() * phase).cos().powi(2),
    })
}

/// Dimensionless momentum kernel `g(w)` of one orbital together with the data
/// needed to split its integrals at the zeros of the oscillating factor.
#[derive(Debug, Clone, Copy)]
pub struct MomentumKernel<T> {
    kind: BoundaryKind,
    /// Pole-free shift `c = h π / 2` (`h = n` Dirichlet, `h = n − 1` Neumann).
    half_periods: u32,
    ground: bool,
    c: T,
    amplitude: T,
}

impl<T: Real> MomentumKernel<T> {
    pub fn new(kind: BoundaryKind, orb: Orbital) -> Self {
        let n = orb.0;
        let pi = T::PI();
        let (half_periods, amplitude) = match kind {
            BoundaryKind::Dirichlet => {
                let nf = T::lit(f64::from(n));
                (n, nf * nf * pi / T::lit(4.0))
            }
            BoundaryKind::Neumann if n == 1 => (0, (T::lit(2.0) * pi).recip()),
            BoundaryKind::Neumann => (n - 1, pi.recip()),
        };
        let c = T::lit(f64::from(half_periods)) * T::FRAC_PI_2();
        Self {
            kind,
            half_periods,
            ground: orb.is_ground(),
            c,
            amplitude,
        }
    }

    pub fn kind(&self) -> BoundaryKind {
        self.kind
    }

    /// Shift `c` of the oscillating factor `sin(w − c)`.
    pub fn shift(&self) -> T {
        self.c
    }

    /// Amplitude `A` in `γ(k) = a A g(a k / 2)`; `∫₀^∞ g = 1 / (4A)`.
    pub fn amplitude(&self) -> T {
        self.amplitude
    }

    /// Envelope decay power `p`: `g ~ sin²(w − c) w^{-p}` at large `w`.
    pub fn decay_power(&self) -> T {
        match self.kind {
            BoundaryKind::Dirichlet => T::lit(4.0),
            BoundaryKind::Neumann => T::lit(2.0),
        }
    }

    fn numerator_power(&self) -> i32 {
        match self.kind {
            BoundaryKind::Dirichlet => 0,
            BoundaryKind::Neumann => 1,
        }
    }

    fn shape(&self, w: T, sinc_d: T) -> T {
        let ratio = if self.c == T::zero() && self.numerator_power() == 1 {
            sinc_d
        } else {
            w.powi(self.numerator_power()) * sinc_d / (w + self.c)
        };
        ratio * ratio
    }

    /// `g(w)`, even in `w`.
    pub fn eval(&self, w: T) -> T {
        let w = w.abs();
        self.shape(w, sinc(w - self.c))
    }

    /// First zero of `sin(w − c)` on `w ≥ 0`, i.e. `c mod π`.
    pub fn first_zero(&self) -> T {
        if self.half_periods % 2 == 1 {
            T::FRAC_PI_2()
        } else {
            T::zero()
        }
    }

    /// Number of whole periods contained in `[0, c]`.
    fn periods_below_shift(&self) -> i64 {
        i64::from(self.half_periods / 2)
    }

    /// Segment `m ≥ 0` spans `w ∈ [r + (m−1)π, r + mπ]`; returns the local
    /// coordinate range in `t ∈ [0, π]` (clipped at `w = 0` for `m = 0`).
    /// `None` when the segment is empty.
    pub fn segment_local_range(&self, m: usize) -> Option<(T, T)> {
        let r = self.first_zero();
        if m == 0 {
            if r > T::zero() {
                Some((T::PI() - r, T::PI()))
            } else {
                None
            }
        } else {
            Some((T::zero(), T::PI()))
        }
    }

    /// Left end `w` of segment `m` (before clipping).
    pub fn segment_origin(&self, m: usize) -> T {
        self.first_zero() + (T::from_usize_lossy(m) - T::one()) * T::PI()
    }

    /// `g` evaluated at local coordinate `t` of segment `m`; accurate next
    /// to the segment ends, where `w − c` is a multiple of `π`.
    pub fn eval_local(&self, m: usize, t: T) -> T {
        let j = m as i64 - 1 - self.periods_below_shift();
        let w = self.segment_origin(m) + t;
        let pi = T::PI();
        // |sin(w − c)| = sin t, taken from the nearer segment end
        let s = if t <= T::FRAC_PI_2() { t.sin() } else { (pi - t).sin() };
        let d = if j == -1 {
            -(pi - t)
        } else {
            t + T::lit(j as f64) * pi
        };
        let sinc_d = if d.abs() < T::lit(1e-4) { sinc(d) } else { s / d.abs() };
        self.shape(w.abs(), sinc_d)
    }

    /// `ln E(w)` for the envelope `E = w^{2p'} / (w² − c²)²`, valid for `w > c`.
    pub fn ln_envelope(&self, w: T) -> T {
        let q = T::lit(f64::from(2 * self.numerator_power()));
        q * w.ln() - T::lit(2.0) * (w * w - self.c * self.c).ln()
    }

    /// `d/dw ln E(w)`.
    pub fn ln_envelope_slope(&self, w: T) -> T {
        let q = T::lit(f64::from(2 * self.numerator_power()));
        q / w - T::lit(4.0) * w / (w * w - self.c * self.c)
    }

    /// Location and value of the global maximum of `g` on `w ≥ 0`.
    pub fn peak(&self) -> (T, T) {
        // Both ground-state kernels are maximal at the origin.
        if self.ground {
            return (T::zero(), self.eval(T::zero()));
        }
        let pi = T::PI();
        let step = pi / T::lit(16.0);
        let seed = self.asymptotic_peak_seed();
        let w_end = self.c + T::lit(2.0) * pi;
        let mut best_w = T::zero();
        let mut best_g = self.eval(T::zero());
        let mut i = 1usize;
        loop {
            let w = T::from_usize_lossy(i) * step;
            if w > w_end {
                break;
            }
            let g = self.eval(w);
            if g > best_g {
                best_g = g;
                best_w = w;
            }
            i += 1;
        }
        if self.eval(seed) > best_g {
            best_w = seed;
            best_g = self.eval(seed);
        }
        let lo = (best_w - step).max(T::zero());
        let hi = best_w + step;
        let (w, g) = golden_section_max(|w| self.eval(w), lo, hi, T::epsilon().sqrt() * (T::one() + hi));
        let g0 = self.eval(lo);
        if lo == T::zero() && g0 >= g {
            (T::zero(), g0)
        } else if g >= best_g {
            (w, g)
        } else {
            (best_w, best_g)
        }
    }

    /// Large-index estimate of the peak position in `w`, used as a seed.
    fn asymptotic_peak_seed(&self) -> T {
        if self.c == T::zero() {
            return T::zero();
        }
        let pi = T::PI();
        match self.kind {
            BoundaryKind::Dirichlet => {
                let n = T::lit(f64::from(self.half_periods));
                (self.c * (T::one() - T::lit(6.0) / (n * n * pi * pi))).max(T::zero())
            }
            BoundaryKind::Neumann => {
                let n = T::lit(f64::from(self.half_periods + 1));
                self.c * (T::one() + T::lit(4.0) / (n * n * pi * pi))
            }
        }
    }
}

/// Momentum density `γₙ(k)` (units of length, `k` in inverse length).
pub fn momentum_density<T: Real>(spec: &WellSpec<T>, orb: Orbital, k: T) -> T {
    let kernel = MomentumKernel::new(spec.kind, orb);
    let a = spec.width;
    a * kernel.amplitude() * kernel.eval(T::lit(0.5) * a * k)
}

/// `|Φₙ(0)|`, the magnitude of the momentum waveform at zero wave vector.
pub fn momentum_amplitude_at_zero<T: Real>(spec: &WellSpec<T>, orb: Orbital) -> T {
    momentum_density(spec, orb, T::zero()).sqrt()
}

/// Nonnegative maximizer `k_max` and maximum `γ_max` of the momentum density.
pub fn momentum_peak<T: Real>(spec: &WellSpec<T>, orb: Orbital) -> (T, T) {
    let kernel = MomentumKernel::new(spec.kind, orb);
    let a = spec.width;
    let (w, g) = kernel.peak();
    (T::lit(2.0) * w / a, a * kernel.amplitude() * g)
}
