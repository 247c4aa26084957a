//! Parsing of the δ, γ parameters.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<u64>;

/// Accepts `"3"`, `"2/3"` or a decimal such as `"0.75"`; the result is exact.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::usage(format!("expected a rational number, got {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| bad())?;
        let den: u64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    match s.split_once('.') {
        Some((int, frac)) => {
            if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let den = 10u64.pow(frac.len() as u32);
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            let num = int.checked_mul(den).and_then(|v| v.checked_add(frac)).ok_or_else(bad)?;
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Checks `0 < r <= 1`.
pub fn check_unit_interval(name: &str, r: Rational) -> Result<()> {
    if *r.numer() == 0 || r > Rational::from_integer(1) {
        return Err(Error::usage(format!("{name} must lie in (0, 1], got {r}")));
    }
    Ok(())
}

/// `floor(r * m)`.
pub fn floor_mul(r: Rational, m: u64) -> u64 {
    ((*r.numer() as u128 * m as u128) / *r.denom() as u128) as u64
}

/// `ceil(r * m)`.
pub fn ceil_mul(r: Rational, m: u64) -> u64 {
    let num = *r.numer() as u128 * m as u128;
    let den = *r.denom() as u128;
    num.div_ceil(den) as u64
}
