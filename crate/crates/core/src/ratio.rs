use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Flow value bounds `p..=q` of a circular flow, with `k = 1 + q/p` kept in
/// lowest terms. Only `k >= 2` is representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRatio")]
pub struct FlowRatio {
    p: i64,
    q: i64,
}

#[derive(Deserialize)]
struct RawRatio {
    p: i64,
    q: i64,
}

impl TryFrom<RawRatio> for FlowRatio {
    type Error = Error;

    fn try_from(r: RawRatio) -> Result<Self> {
        FlowRatio::from_bounds(r.p, r.q)
    }
}

impl FlowRatio {
    /// From the bounds directly; `1 <= p <= q`. The pair is not reduced, so
    /// `(2, 10)` and `(1, 5)` are different bounds for the same `k`.
    pub fn from_bounds(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q < p {
            return Err(Error::InvalidRatio(format!("bounds ({p}, {q})")));
        }
        Ok(FlowRatio { p, q })
    }

    /// From `k = num / den`, reduced.
    pub fn from_k(num: i64, den: i64) -> Result<Self> {
        if den < 1 || num < 2 * den {
            return Err(Error::InvalidRatio(format!("k = {num}/{den} is below 2")));
        }
        let g = gcd(num, den);
        let (num, den) = (num / g, den / g);
        Ok(FlowRatio {
            p: den,
            q: num - den,
        })
    }

    pub fn six() -> Self {
        FlowRatio { p: 1, q: 5 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `k` as a reduced fraction.
    pub fn k(&self) -> (i64, i64) {
        let (num, den) = (self.p + self.q, self.p);
        let g = gcd(num, den);
        (num / g, den / g)
    }

    /// Same `k` with the bounds in lowest terms.
    pub fn reduced(&self) -> Self {
        let g = gcd(self.p, self.q);
        FlowRatio {
            p: self.p / g,
            q: self.q / g,
        }
    }

    /// `floor(t / k)`.
    pub fn floor_div(&self, t: i64) -> i64 {
        let (num, den) = self.k();
        (t * den).div_euclid(num)
    }

    /// `floor(t / (k + 1))`.
    pub fn floor_div_plus_one(&self, t: i64) -> i64 {
        let (num, den) = self.k();
        (t * den).div_euclid(num + den)
    }
}

impl fmt::Display for FlowRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k() {
            (num, 1) => write!(f, "{num}"),
            (num, den) => write!(f, "{num}/{den}"),
        }
    }
}

impl FromStr for FlowRatio {
    type Err = Error;

    /// Parses `k` as `a` or `a/b`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRatio(format!("cannot parse {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        FlowRatio::from_k(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_to_bounds() {
        let r: FlowRatio = "5/2".parse().unwrap();
        assert_eq!((r.p(), r.q()), (2, 3));
        let r: FlowRatio = "6".parse().unwrap();
        assert_eq!((r.p(), r.q()), (1, 5));
        let r = FlowRatio::from_k(8, 4).unwrap();
        assert_eq!((r.p(), r.q()), (1, 1));
        assert!("3/2".parse::<FlowRatio>().is_err());
        assert!("x".parse::<FlowRatio>().is_err());
    }

    #[test]
    fn floors() {
        let six = FlowRatio::six();
        assert_eq!(six.floor_div(12), 2);
        assert_eq!(six.floor_div(5), 0);
        assert_eq!(six.floor_div_plus_one(14), 2);
        let r = FlowRatio::from_k(5, 2).unwrap();
        assert_eq!(r.floor_div(7), 2);
        assert_eq!(r.to_string(), "5/2");
        assert_eq!(FlowRatio::from_bounds(2, 10).unwrap().to_string(), "6");
    }
}
