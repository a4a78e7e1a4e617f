//! Order grids for sweeps and batched queries.

use clap::{Args, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Explicit orders, comma separated; `inf` selects the sup limit
    #[arg(long, value_delimiter = ',', value_parser = parse_order, conflicts_with_all = ["start", "stop", "count"])]
    pub alpha: Vec<f64>,

    /// First grid order
    #[arg(long, requires_all = ["stop", "count"])]
    pub start: Option<f64>,

    /// Last grid order (included)
    #[arg(long)]
    pub stop: Option<f64>,

    /// Number of grid points
    #[arg(long)]
    pub count: Option<usize>,

    #[arg(long, value_enum, default_value = "linear")]
    pub spacing: Spacing,
}

/// Accepts any real or `inf`; NaN is rejected.
pub fn parse_order(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number or `inf`"))?;
    if v.is_nan() {
        return Err("NaN is not an order".into());
    }
    Ok(v)
}

impl GridArgs {
    pub fn points(&self) -> Result<Vec<f64>, String> {
        if !self.alpha.is_empty() {
            return Ok(self.alpha.clone());
        }
        let (Some(start), Some(stop), Some(count)) = (self.start, self.stop, self.count) else {
            return Err("give either --alpha or --start/--stop/--count".into());
        };
        grid(start, stop, count, self.spacing)
    }
}

pub fn grid(start: f64, stop: f64, count: usize, spacing: Spacing) -> Result<Vec<f64>, String> {
    if !(start.is_finite() && stop.is_finite() && start < stop) {
        return Err(format!("grid needs finite start < stop, got [{start}, {stop}]"));
    }
    if count < 2 {
        return Err(format!("grid needs at least 2 points, got {count}"));
    }
    let last = (count - 1) as f64;
    let pts = match spacing {
        Spacing::Linear => {
            let h = (stop - start) / last;
            (0..count).map(|i| start + i as f64 * h).collect::<Vec<_>>()
        }
        Spacing::Log => {
            if start <= 0.0 {
                return Err(format!("log grid needs start > 0, got {start}"));
            }
            let (l0, l1) = (start.ln(), stop.ln());
            let h = (l1 - l0) / last;
            (0..count).map(|i| (l0 + i as f64 * h).exp()).collect()
        }
    };
    let mut pts = pts;
    pts[0] = start;
    pts[count - 1] = stop;
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_exact() {
        let g = grid(0.26, 20.0, 7, Spacing::Log).unwrap();
        assert_eq!((g[0], g[6]), (0.26, 20.0));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        let r = g[1] / g[0];
        assert!((g[4] / g[3] - r).abs() < 1e-12);
        assert_eq!(grid(0.0, 5.0, 6, Spacing::Linear).unwrap(), vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(grid(1.0, 1.0, 3, Spacing::Linear).is_err());
        assert!(grid(0.0, 1.0, 1, Spacing::Linear).is_err());
        assert!(grid(0.0, 1.0, 3, Spacing::Log).is_err());
        assert!(parse_order("nan").is_err());
        assert_eq!(parse_order("inf"), Ok(f64::INFINITY));
    }
}
