//! Grid specifications: `log:<start>:<stop>:<count>`, `lin:<start>:<stop>:<count>` or an
//! explicit comma-separated list of rationals.

use std::str::FromStr;

use rsc_core::rational::{from_f64, parse_q, to_f64, Q};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("bad grid `{0}`: expected log:<start>:<stop>:<count>, lin:<start>:<stop>:<count> or a list")]
pub struct GridError(pub String);

#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Log { start: Q, stop: Q, count: usize },
    Lin { start: Q, stop: Q, count: usize },
    List(Vec<Q>),
}

impl FromStr for GridSpec {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GridError(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            [kind @ ("log" | "lin"), start, stop, count] => {
                let start = parse_q(start).map_err(|_| bad())?;
                let stop = parse_q(stop).map_err(|_| bad())?;
                let count: usize = count.parse().map_err(|_| bad())?;
                let zero = Q::from_integer(0.into());
                if count == 0 || stop < start || (*kind == "log" && start <= zero) {
                    return Err(bad());
                }
                if count == 1 && start != stop {
                    return Err(bad());
                }
                Ok(if *kind == "log" {
                    GridSpec::Log { start, stop, count }
                } else {
                    GridSpec::Lin { start, stop, count }
                })
            }
            [list] => {
                let points = list.split(',').map(|p| parse_q(p).map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
                if points.is_empty() {
                    return Err(bad());
                }
                Ok(GridSpec::List(points))
            }
            _ => Err(bad()),
        }
    }
}

/// Integers that the float computation lands on up to rounding are returned exactly, so
/// `log:1:1e4:5` gives `1, 10, 100, 1000, 10000`.
fn snap(x: f64) -> Q {
    let r = x.round();
    if r.abs() < 9.0e15 && (r - x).abs() <= 1e-12 * x.abs().max(1.0) {
        Q::from_integer((r as i64).into())
    } else {
        from_f64(x).expect("grid points are finite")
    }
}

impl GridSpec {
    /// Points in increasing order; the endpoints are exact.
    pub fn points(&self) -> Vec<Q> {
        let mut out = match self {
            GridSpec::List(points) => points.clone(),
            GridSpec::Log { start, stop, count } | GridSpec::Lin { start, stop, count } => {
                if *count == 1 {
                    return vec![start.clone()];
                }
                let (s, e) = (to_f64(start), to_f64(stop));
                let last = *count - 1;
                (0..*count)
                    .map(|k| match k {
                        0 => start.clone(),
                        k if k == last => stop.clone(),
                        k => {
                            let w = k as f64 / last as f64;
                            snap(match self {
                                GridSpec::Log { .. } => s * (e / s).powf(w),
                                _ => s + (e - s) * w,
                            })
                        }
                    })
                    .collect()
            }
        };
        out.sort();
        out.dedup();
        out
    }
}
