//! The shipped matrix of space pairs for the tail-decay check at infinity, and the comparison
//! of symbolic verdicts with numerical limit classification.

use serde::Deserialize;

use rsc_core::extremal::{classify, sweep, ExtremalError, LimitClass, LimitDirection, SearchOptions};
use rsc_core::rational::{ExtRational, Q};
use rsc_core::spaces::{BrokenLog, LZSpace, LzParams, ParseSpaceError};
use rsc_core::verdicts::{ac_near_infinity_lz, VerdictError};

const SHIPPED: &str = include_str!("../data/tail_matrix.csv");

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct MatrixPair {
    pub source: String,
    pub target: String,
    /// Symbolic verdict the pair was chosen for.
    pub expected: bool,
}

/// The pairs in `data/tail_matrix.csv`.
pub fn shipped() -> Vec<MatrixPair> {
    csv::Reader::from_reader(SHIPPED.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .expect("shipped matrix is well formed")
}

/// Cut points `10^{0}, 10^{5}, …, 10^{40}`.
pub fn default_grid() -> Vec<Q> {
    (0..9).map(|k| Q::from_integer(10.into()).pow(5 * k)).collect()
}

fn perturbations(p: &LzParams) -> Vec<LzParams> {
    let mut out = Vec::new();
    for h in [Q::new(1.into(), 10.into()), Q::new(1.into(), 20.into())].into_iter().flat_map(|h| [h.clone(), -h]) {
        let shift_inv = |e: &ExtRational| {
            let inv = e.recip_q() + &h;
            if inv <= Q::from_integer(0.into()) {
                ExtRational::Infinite
            } else {
                ExtRational::Finite(inv).recip()
            }
        };
        let mut a = p.clone();
        a.p = shift_inv(&p.p);
        out.push(a);
        let mut a = p.clone();
        a.q = shift_inv(&p.q);
        out.push(a);
        let mut a = p.clone();
        a.a = BrokenLog::new(p.a.zero.clone(), &p.a.inf + &h);
        out.push(a);
    }
    out
}

/// Whether shifting `1/p`, `1/q` or the log exponent at infinity of either space by `±1/10`
/// or `±1/20` flips the symbolic verdict.
pub fn near_boundary(x: &LZSpace, y: &LZSpace, verdict: bool) -> bool {
    let flips = |xp: &LzParams, yp: &LzParams| match (LZSpace::new(xp.clone()), LZSpace::new(yp.clone())) {
        (Ok(x), Ok(y)) => ac_near_infinity_lz(&x, &y).map(|v| v.0 != verdict).unwrap_or(false),
        _ => false,
    };
    perturbations(x.params()).iter().any(|xp| flips(xp, y.params()))
        || perturbations(y.params()).iter().any(|yp| flips(x.params(), yp))
}

#[derive(Debug, thiserror::Error)]
pub enum MatrixError {
    #[error(transparent)]
    Parse(#[from] ParseSpaceError),
    #[error(transparent)]
    Verdict(#[from] VerdictError),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairOutcome {
    pub source: String,
    pub target: String,
    pub expected: bool,
    pub symbolic: bool,
    pub class: LimitClass,
    pub exponent: f64,
    pub near_boundary: bool,
    pub estimates: Vec<f64>,
}

impl PairOutcome {
    /// Vanishing needs a true verdict, Positive a false one, and Inconclusive is tolerated
    /// only near a boundary.
    pub fn agrees(&self) -> bool {
        self.symbolic == self.expected
            && match self.class {
                LimitClass::Vanishing => self.symbolic,
                LimitClass::Positive => !self.symbolic,
                LimitClass::Inconclusive => self.near_boundary,
            }
    }
}

pub fn evaluate(pair: &MatrixPair, grid: &[Q]) -> Result<PairOutcome, MatrixError> {
    let x: LZSpace = pair.source.parse()?;
    let y: LZSpace = pair.target.parse()?;
    let (symbolic, _) = ac_near_infinity_lz(&x, &y)?;
    let mut opts = SearchOptions::for_space(&x);
    opts.certificate = false;
    let curve = sweep(&x, &y, grid, &opts)?;
    let points: Vec<(f64, f64)> = curve.iter().map(|e| (e.a, e.estimate)).collect();
    let probe = classify(&points, LimitDirection::ToInfinity);
    Ok(PairOutcome {
        source: pair.source.clone(),
        target: pair.target.clone(),
        expected: pair.expected,
        symbolic,
        class: probe.class,
        exponent: probe.exponent,
        near_boundary: near_boundary(&x, &y, symbolic),
        estimates: points.iter().map(|p| p.1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_matrix_is_balanced_and_matches_symbolic_verdicts() {
        let pairs = shipped();
        assert!(pairs.len() >= 30);
        let trues = pairs.iter().filter(|p| p.expected).count();
        assert!(trues >= 10 && pairs.len() - trues >= 10);
        for p in &pairs {
            let x: LZSpace = p.source.parse().unwrap();
            let y: LZSpace = p.target.parse().unwrap();
            assert_eq!(ac_near_infinity_lz(&x, &y).unwrap().0, p.expected, "{} -> {}", p.source, p.target);
        }
    }

    #[test]
    fn boundary_detection() {
        let l2: LZSpace = "L2".parse().unwrap();
        let l4: LZSpace = "L4".parse().unwrap();
        assert!(!near_boundary(&l2, &l4, true));
        assert!(near_boundary(&l2, &l2, false));
    }
}
