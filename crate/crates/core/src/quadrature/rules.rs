//! Fixed and nested quadrature rules.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::scalar::{CompensatedSum, Real};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// 15-point Kronrod estimate and `|K15 − G7|` on `[a, b]`.
pub(crate) fn gauss_kronrod_15<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let radius = half * (b - a);
    let fc = f(center);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = radius * T::lit(XGK[j]);
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + T::lit(WGK[j]) * pair;
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * pair;
        }
    }
    (kronrod * radius, ((kronrod - gauss) * radius).abs())
}

struct Interval<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Interval<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Real> Eq for Interval<T> {}
impl<T: Real> PartialOrd for Interval<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Interval<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

pub(crate) struct AdaptiveOutcome<T> {
    pub value: T,
    pub error: T,
    pub converged: bool,
}

/// Globally adaptive bisection driven by the largest local error.
pub(crate) fn adaptive_gauss_kronrod<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    b: T,
    abs_tol: T,
    rel_tol: T,
    max_intervals: usize,
) -> AdaptiveOutcome<T> {
    let (v0, e0) = gauss_kronrod_15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Interval {
        a,
        b,
        value: v0,
        error: e0,
    });
    let mut value = v0;
    let mut error = e0;
    let half = T::lit(0.5);
    while error > abs_tol.max(rel_tol * value.abs()) {
        if heap.len() >= max_intervals {
            break;
        }
        let worst = match heap.pop() {
            Some(iv) => iv,
            None => break,
        };
        let mid = half * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            heap.push(worst);
            break;
        }
        let (vl, el) = gauss_kronrod_15(&mut f, worst.a, mid);
        let (vr, er) = gauss_kronrod_15(&mut f, mid, worst.b);
        value = value - worst.value + vl + vr;
        error = error - worst.error + el + er;
        heap.push(Interval {
            a: worst.a,
            b: mid,
            value: vl,
            error: el,
        });
        heap.push(Interval {
            a: mid,
            b: worst.b,
            value: vr,
            error: er,
        });
    }
    // resum to shed the drift of the running updates
    let mut v = CompensatedSum::new();
    let mut e = CompensatedSum::new();
    for iv in heap.iter() {
        v.add(iv.value);
        e.add(iv.error);
    }
    let value = v.value();
    let error = e.value();
    AdaptiveOutcome {
        value,
        error,
        converged: error <= abs_tol.max(rel_tol * value.abs()),
    }
}

/// Tanh-sinh (double exponential) rule on the unit interval, stored by level.
///
/// Level `ℓ` holds the nodes with step `2^{-ℓ}` that are not in coarser
/// levels. Each node is kept as its distance `δ` from the nearer end of
/// `[0, 1]` so that points next to an endpoint are resolved without
/// cancellation; every node is used twice, once from each end (the centre
/// node only once).
pub(crate) struct TanhSinh<T> {
    levels: Vec<Vec<(T, T)>>,
    center_weight: T,
}

pub(crate) struct TanhSinhOutcome<T> {
    pub value: T,
    pub error: T,
}

impl<T: Real> TanhSinh<T> {
    pub(crate) const MAX_LEVEL: usize = 9;
    const FIRST_CHECKED_LEVEL: usize = 3;

    pub(crate) fn new() -> Self {
        let half_pi = T::FRAC_PI_2();
        let delta_min = T::epsilon() * T::lit(1e-2);
        let node = |t: T| -> (T, T) {
            let u = half_pi * t.sinh();
            let delta = (T::one() + (u + u).exp()).recip();
            let cu = u.cosh();
            (delta, T::lit(0.5) * half_pi * t.cosh() / (cu * cu))
        };
        let mut levels = Vec::with_capacity(Self::MAX_LEVEL + 1);
        for level in 0..=Self::MAX_LEVEL {
            let h = T::lit(0.5f64.powi(level as i32));
            let mut nodes = Vec::new();
            let mut k = 1usize;
            loop {
                if level > 0 && k.is_multiple_of(2) {
                    k += 1;
                    continue;
                }
                let (delta, w) = node(T::from_usize_lossy(k) * h);
                if delta < delta_min {
                    break;
                }
                nodes.push((delta, w));
                k += 1;
            }
            levels.push(nodes);
        }
        Self {
            levels,
            center_weight: T::lit(0.5) * half_pi,
        }
    }

    /// Integrates `f` over `[a, b]`, refining levels until two successive
    /// estimates differ by at most `max(abs_tol, rel_tol |value|)`.
    pub(crate) fn integrate<F: FnMut(T) -> T>(
        &self,
        mut f: F,
        a: T,
        b: T,
        abs_tol: T,
        rel_tol: T,
    ) -> TanhSinhOutcome<T> {
        let len = b - a;
        let half = T::lit(0.5);
        let mut raw = CompensatedSum::new();
        raw.add(self.center_weight * f(a + half * len));
        let mut prev = T::nan();
        let mut estimate = T::zero();
        let mut error = T::infinity();
        for (level, nodes) in self.levels.iter().enumerate() {
            for &(delta, w) in nodes {
                let d = delta * len;
                raw.add(w * (f(a + d) + f(b - d)));
            }
            let h = T::lit(0.5f64.powi(level as i32));
            estimate = raw.value() * h * len;
            if level >= Self::FIRST_CHECKED_LEVEL {
                error = (estimate - prev).abs();
                if error <= abs_tol.max(rel_tol * estimate.abs()) {
                    break;
                }
            }
            prev = estimate;
        }
        TanhSinhOutcome {
            value: estimate,
            error,
        }
    }
}
