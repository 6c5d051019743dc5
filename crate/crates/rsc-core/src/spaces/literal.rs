//! Text form of space parameters: `L(p=2,q=3,a0=0,ainf=-1/2)`, `Linf`, `L2`.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_traits::Zero;

use crate::rational::{fmt_q, parse_q, ExtRational};
use crate::stepfn::IntervalDomain;

use super::{BrokenLog, LZSpace, LzParams, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseSpaceError {
    #[error("malformed space literal `{0}`")]
    Syntax(String),
    #[error("unknown key `{0}` in space literal")]
    UnknownKey(String),
    #[error("bad value for `{key}`: `{value}`")]
    Value { key: String, value: String },
    #[error(transparent)]
    Invalid(#[from] SpaceError),
}

/// Keys: `p`/`r`, `q`/`s` (defaults to `p`), `a0`, `ainf`, `a`/`g` (both log exponents),
/// `b0`, `binf`, `b` (both double-log exponents). `Lx` abbreviates `L(p=x)`.
impl FromStr for LzParams {
    type Err = ParseSpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let syntax = || ParseSpaceError::Syntax(s.to_string());
        let body = text.strip_prefix('L').ok_or_else(syntax)?;
        let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) else {
            let p: ExtRational = body.parse().map_err(|_| syntax())?;
            return Ok(LzParams::lorentz(p.clone(), p));
        };
        let mut p = None;
        let mut q = None;
        let mut a = BrokenLog::default();
        let mut b = BrokenLog::default();
        for item in inner.split(',').filter(|x| !x.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(syntax)?;
            let bad = || ParseSpaceError::Value { key: key.to_string(), value: value.to_string() };
            match key {
                "p" | "r" => p = Some(value.parse::<ExtRational>().map_err(|_| bad())?),
                "q" | "s" => q = Some(value.parse::<ExtRational>().map_err(|_| bad())?),
                _ => {
                    let x = parse_q(value).map_err(|_| bad())?;
                    match key {
                        "a0" => a.zero = x,
                        "ainf" => a.inf = x,
                        "a" | "g" => a = BrokenLog::uniform(x),
                        "b0" => b.zero = x,
                        "binf" => b.inf = x,
                        "b" => b = BrokenLog::uniform(x),
                        _ => return Err(ParseSpaceError::UnknownKey(key.to_string())),
                    }
                }
            }
        }
        let p = p.ok_or_else(syntax)?;
        let q = q.unwrap_or_else(|| p.clone());
        Ok(LzParams::lorentz(p, q).with_log(a).with_double_log(b))
    }
}

impl FromStr for LZSpace {
    type Err = ParseSpaceError;

    /// Parses on the half-line; use [`LZSpace::on`] to move to `(0,1)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(LZSpace::new(s.parse()?)?)
    }
}

pub(super) fn write_params(f: &mut fmt::Formatter<'_>, c: &LzParams) -> fmt::Result {
    let no_logs = c.a.is_zero() && c.b.is_zero();
    if no_logs && c.p.is_infinite() && c.q.is_infinite() {
        return f.write_str("Linf");
    }
    write!(f, "L(p={},q={}", c.p, c.q)?;
    let unit = c.domain == IntervalDomain::UnitInterval;
    for (tag, pair) in [("a", &c.a), ("b", &c.b)] {
        if unit {
            if !pair.zero.is_zero() {
                write!(f, ",{tag}0={}", fmt_q(&pair.zero))?;
            }
            continue;
        }
        if !pair.zero.is_zero() {
            write!(f, ",{tag}0={}", fmt_q(&pair.zero))?;
        }
        if !pair.inf.is_zero() {
            write!(f, ",{tag}inf={}", fmt_q(&pair.inf))?;
        }
    }
    f.write_str(")")
}
