//! Dyadic scale parameters.
//!
//! Every ε handled by the library has the form `a / 2^b`, so it is exactly
//! representable in binary64 and the strict comparison `d > ε` is a raw
//! floating point comparison.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dyadic {
    num: u64,
    pow: u32,
}

impl Dyadic {
    pub fn new(num: u64, pow: u32) -> Result<Self> {
        if num == 0 {
            return Err(Error::config("scale must be positive"));
        }
        if pow > 60 || num >= 1 << 52 {
            return Err(Error::config(format!(
                "scale {num}/2^{pow} is out of range"
            )));
        }
        let mut d = Dyadic { num, pow };
        while d.pow > 0 && d.num % 2 == 0 {
            d.num /= 2;
            d.pow -= 1;
        }
        Ok(d)
    }

    /// `1 / 2^pow`
    pub fn inverse_power_of_two(pow: u32) -> Self {
        Dyadic { num: 1, pow }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / (1u64 << self.pow) as f64
    }

    pub fn half(&self) -> Self {
        Dyadic::new(self.num, self.pow + 1).expect("halving stays in range")
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn log2_denominator(&self) -> u32 {
        self.pow
    }

    /// Number of integers `t >= 0` with `2^-t > ε`.
    ///
    /// A single symbol disagreement at relative index `t` in a window of the
    /// symbolic metric contributes at least `2^-t`, so it certifies separation
    /// exactly when `t` is below this count.
    pub fn separating_depth(&self) -> usize {
        let v = self.value();
        let mut t = 0usize;
        while (0.5f64).powi(t as i32) > v {
            t += 1;
        }
        t
    }

    /// `ceil(log2(1/ε))`, clamped at zero. Equal to [`Self::separating_depth`].
    pub fn ceil_log2_inverse(&self) -> usize {
        self.separating_depth()
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pow == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.pow)
        }
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let hint = "scales must be dyadic rationals written as a/2^b, e.g. 1/2 or 3/8";
        if s.contains('.') || s.contains('e') {
            return Err(Error::config(format!(
                "decimal scale '{s}' rejected; {hint}"
            )));
        }
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: u64 = a
            .parse()
            .map_err(|_| Error::config(format!("bad numerator in '{s}'; {hint}")))?;
        let den: u64 = if let Some(exp) = b.strip_prefix("2^") {
            let e: u32 = exp
                .parse()
                .map_err(|_| Error::config(format!("bad exponent in '{s}'; {hint}")))?;
            if e > 60 {
                return Err(Error::config(format!("exponent too large in '{s}'")));
            }
            1u64 << e
        } else {
            b.parse()
                .map_err(|_| Error::config(format!("bad denominator in '{s}'; {hint}")))?
        };
        if den == 0 || !den.is_power_of_two() {
            return Err(Error::config(format!(
                "denominator of '{s}' is not a power of two; {hint}"
            )));
        }
        Dyadic::new(num, den.trailing_zeros())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions() {
        let e: Dyadic = "1/4".parse().unwrap();
        assert_eq!(e.value(), 0.25);
        assert_eq!(e.to_string(), "1/4");
        let e: Dyadic = "6/16".parse().unwrap();
        assert_eq!(e, Dyadic::new(3, 3).unwrap());
        assert_eq!("1/2^3".parse::<Dyadic>().unwrap().value(), 0.125);
    }

    #[test]
    fn rejects_decimals_and_odd_denominators() {
        let err = "0.5".parse::<Dyadic>().unwrap_err().to_string();
        assert!(err.contains("a/2^b"));
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("0/4".parse::<Dyadic>().is_err());
    }

    #[test]
    fn separating_depth_counts_strict_powers() {
        assert_eq!(Dyadic::inverse_power_of_two(1).separating_depth(), 1);
        assert_eq!(Dyadic::inverse_power_of_two(2).separating_depth(), 2);
        assert_eq!("3/8".parse::<Dyadic>().unwrap().separating_depth(), 2);
        assert_eq!(Dyadic::new(1, 0).unwrap().separating_depth(), 0);
    }
}
