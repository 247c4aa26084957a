//! Closed-form lower bounds on Kakeya set sizes and the brute-force zero counter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{check_unit_interval, floor_mul, Rational};
use crate::space::Space;

/// Default cap on `q^n` for brute-force enumeration.
pub const DEFAULT_ZERO_COUNT_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    /// `C(d + n - 1, n - 1)` with `d = floor(q min(δ, γ)) - 2`, for (δ,γ)-Kakeya sets.
    Thm2,
    /// `C(q + n - 2, n)`, for Kakeya sets.
    AlonTao,
    /// The (δ=γ=1) degree bound applied to `K^r ⊂ F^{n r}`, then the r-th root.
    CorollaryScheme,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub formula: Formula,
    pub q: u64,
    pub n: usize,
    pub delta: Option<String>,
    pub gamma: Option<String>,
    /// Degree driving the bound; `q - 1` for the Alon–Tao count.
    pub d: i64,
    pub r: Option<usize>,
    pub bound: u64,
    /// For the product scheme: the bound the product set itself must meet.
    pub product_bound: Option<u64>,
    /// For the product scheme: `C(q + n - 2, n)`, reported alongside.
    pub alon_tao: Option<u64>,
}

/// `C(n, k)`; saturates at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// `C(d + n - 1, n - 1)` with the vacuous convention `d < 0 => 0`.
pub fn homogeneous_monomial_count(d: i64, n: usize) -> u64 {
    if d < 0 {
        0
    } else {
        binomial(d as u64 + n as u64 - 1, n as u64 - 1)
    }
}

pub fn thm2_degree(q: u64, delta: Rational, gamma: Rational) -> i64 {
    floor_mul(delta.min(gamma), q) as i64 - 2
}

pub fn thm2_bound(q: u64, n: usize, delta: Rational, gamma: Rational) -> Result<BoundReport> {
    check_unit_interval("delta", delta)?;
    check_unit_interval("gamma", gamma)?;
    check_qn(q, n)?;
    let d = thm2_degree(q, delta, gamma);
    Ok(BoundReport {
        formula: Formula::Thm2,
        q,
        n,
        delta: Some(delta.to_string()),
        gamma: Some(gamma.to_string()),
        d,
        r: None,
        bound: homogeneous_monomial_count(d, n),
        product_bound: None,
        alon_tao: None,
    })
}

pub fn alon_tao_bound(q: u64, n: usize) -> Result<BoundReport> {
    check_qn(q, n)?;
    Ok(BoundReport {
        formula: Formula::AlonTao,
        q,
        n,
        delta: None,
        gamma: None,
        d: q as i64 - 1,
        r: None,
        bound: binomial(q + n as u64 - 2, n as u64),
        product_bound: None,
        alon_tao: None,
    })
}

/// Applies the δ = γ = 1 degree bound to `K^r` and takes the ceiling r-th root.
pub fn corollary_bound(q: u64, n: usize, r: usize) -> Result<BoundReport> {
    check_qn(q, n)?;
    if r == 0 {
        return Err(Error::usage("r must be at least 1"));
    }
    let one = Rational::from_integer(1);
    let big = thm2_bound(q, n * r, one, one)?;
    Ok(BoundReport {
        formula: Formula::CorollaryScheme,
        q,
        n,
        delta: None,
        gamma: None,
        d: big.d,
        r: Some(r),
        bound: ceil_root(big.bound, r as u32),
        product_bound: Some(big.bound),
        alon_tao: Some(alon_tao_bound(q, n)?.bound),
    })
}

/// Smallest `x` with `x^r >= v`.
pub fn ceil_root(v: u64, r: u32) -> u64 {
    let pow_ge = |x: u64| -> bool {
        let mut acc: u128 = 1;
        for _ in 0..r {
            acc *= x as u128;
            if acc >= v as u128 {
                return true;
            }
        }
        acc >= v as u128
    };
    let (mut lo, mut hi) = (0u64, v.max(1));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pow_ge(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// `d q^{n-1}`, the largest number of zeros a nonzero degree-`d` polynomial can have.
pub fn schwartz_zippel_bound(d: u64, q: u64, n: usize) -> u64 {
    d.saturating_mul(q.saturating_pow(n as u32 - 1))
}

/// Number of zeros of `f` over all of `F_q^n`, by enumeration.
pub fn count_zeros(f: &Polynomial, limit: u64) -> Result<u64> {
    let sp = Space::new(f.spec(), f.num_vars())?;
    if sp.size() > limit {
        return Err(Error::Resource(format!(
            "counting zeros over {} points exceeds the limit {limit}",
            sp.size()
        )));
    }
    Ok(sp.points().filter(|x| f.evaluate_unchecked(x).is_zero()).count() as u64)
}

fn check_qn(q: u64, n: usize) -> Result<()> {
    if q < 2 {
        return Err(Error::usage("q must be at least 2"));
    }
    if n < 1 {
        return Err(Error::usage("n must be at least 1"));
    }
    Ok(())
}
