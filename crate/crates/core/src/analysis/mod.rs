//! Exhaustive analysis of the planes and ciphers: censuses, axiom audits,
//! perfectness, completeness and a representation cross-check.
//!
//! Every audit iterates in a fixed order and returns plain serializable data,
//! so reports are byte-identical across runs and thread counts.

pub mod axioms;
pub mod census;
pub mod completeness;
pub mod incidence;
pub mod perfectness;
pub mod representation;

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

/// Nonnegative exact rational, always in lowest terms. Serializes as `"n/d"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };

    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den);
        Fraction {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// |self − other|
    pub fn abs_diff(&self, other: &Fraction) -> Fraction {
        let l = self.num as u128 * other.den as u128;
        let r = other.num as u128 * self.den as u128;
        let num = l.max(r) - l.min(r);
        let den = self.den as u128 * other.den as u128;
        let g = num.gcd(&den);
        Fraction {
            num: (num / g) as u64,
            den: (den / g) as u64,
        }
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Runs `f` on a rayon pool sized by `GEOCIPHER_THREADS` when that is set.
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var("GEOCIPHER_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0);
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_reduce_and_compare() {
        let a = Fraction::new(6, 8);
        assert_eq!((a.num(), a.den()), (3, 4));
        assert_eq!(a.to_string(), "3/4");
        assert!(Fraction::new(1, 3) < Fraction::new(1, 2));
        assert_eq!(Fraction::new(1, 2).abs_diff(&Fraction::new(1, 3)), Fraction::new(1, 6));
        assert_eq!(Fraction::new(1, 3).abs_diff(&Fraction::new(1, 2)), Fraction::new(1, 6));
        assert_eq!(serde_json::to_string(&Fraction::new(2, 10)).unwrap(), "\"1/5\"");
    }
}
