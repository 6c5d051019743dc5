//! Seeded random instances for the verification suites.

use rand::seq::SliceRandom;
use rand::Rng;

use rsc_core::rational::{q, qi, ExtRational, Q};
use rsc_core::spaces::{BrokenLog, LZSpace, LzParams};
use rsc_core::stepfn::{IntervalDomain, PiecewiseFn};

/// Nonnegative step function with at most `max_pieces` pieces and bounded support. Breaks are
/// multiples of `1/d` for a random `d ∈ {1,2,3,4,8}` (scaled into `(0,1)` on the unit domain).
pub fn step_fn(rng: &mut impl Rng, domain: IntervalDomain, max_pieces: usize) -> PiecewiseFn {
    let k = rng.gen_range(1..=max_pieces.max(1));
    let d = *[1i64, 2, 3, 4, 8].choose(rng).expect("nonempty");
    let mut ends: Vec<i64> = Vec::with_capacity(k);
    let mut at = 0;
    for _ in 0..k {
        at += rng.gen_range(1..=4 * d);
        ends.push(at);
    }
    let total = at + rng.gen_range(1..=d);
    let breaks = ends
        .iter()
        .map(|&e| match domain {
            IntervalDomain::HalfLine => q(e, d),
            IntervalDomain::UnitInterval => q(e, total),
        })
        .collect();
    let values = (0..k).map(|_| q(rng.gen_range(0..=12), 4)).collect();
    PiecewiseFn::new(domain, breaks, values, qi(0)).expect("generated step function is valid")
}

/// `M+1 ≥ 2` disjoint intervals of a common length, in random order.
pub fn intervals(rng: &mut impl Rng) -> Vec<(Q, Q)> {
    let delta = q(rng.gen_range(1..=8), 4);
    let count = rng.gen_range(2..=6);
    let mut start = q(rng.gen_range(0..=4), 4);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let end = &start + &delta;
        out.push((start, end.clone()));
        start = end + q(rng.gen_range(0..=4), 4);
    }
    out.shuffle(rng);
    out
}

fn exponent(rng: &mut impl Rng) -> ExtRational {
    [ExtRational::int(1), ExtRational::ratio(3, 2), ExtRational::int(2), ExtRational::int(3), ExtRational::int(4), ExtRational::Infinite]
        .choose(rng)
        .expect("nonempty")
        .clone()
}

fn log_exponent(rng: &mut impl Rng) -> Q {
    q(rng.gen_range(-2..=2), 2)
}

/// Valid single-log Lorentz–Zygmund space on `domain`, drawn by rejection.
pub fn lz_space(rng: &mut impl Rng, domain: IntervalDomain) -> LZSpace {
    loop {
        let p = exponent(rng);
        let qe = if rng.gen_bool(0.4) { p.clone() } else { exponent(rng) };
        let logs = if rng.gen_bool(0.5) { BrokenLog::default() } else { BrokenLog::new(log_exponent(rng), log_exponent(rng)) };
        if let Ok(s) = LZSpace::new(LzParams::lorentz(p, qe).with_log(logs).on(domain)) {
            return s;
        }
    }
}
