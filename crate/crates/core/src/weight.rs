//! Exact fixed-point edge weights and path lengths.
//!
//! A [`Weight`] counts integer ticks of `10^-k` for a precision `k` chosen by
//! the graph. Path lengths are sums of ticks, so ties between shortest paths
//! are detected with plain integer equality. `u64::MAX` is reserved as the
//! `+∞` sentinel and addition saturates at it.

use std::fmt;
use std::ops::Add;

use thiserror::Error;

/// Default number of fractional decimal digits carried by a weight.
pub const DEFAULT_PRECISION: u32 = 3;

/// Largest supported precision; `10^9` ticks per unit still leaves room for
/// path lengths up to ~1.8e10 units.
pub const MAX_PRECISION: u32 = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("`{0}` is not a decimal number")]
    Malformed(String),
    #[error("`{text}` has more than {precision} fractional digits")]
    TooPrecise { text: String, precision: u32 },
    #[error("`{0}` does not fit in the tick range")]
    Overflow(String),
    #[error("precision {0} exceeds the supported maximum of {MAX_PRECISION}")]
    UnsupportedPrecision(u32),
}

/// A non-negative path length in ticks, or `+∞`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(u64);

impl Weight {
    pub const ZERO: Weight = Weight(0);
    pub const INFINITY: Weight = Weight(u64::MAX);

    /// Builds a finite weight. `u64::MAX` is the infinity sentinel and maps to
    /// [`Weight::INFINITY`].
    pub const fn from_ticks(ticks: u64) -> Self {
        Weight(ticks)
    }

    /// Whole units at the given precision, e.g. `from_units(2, 3)` is 2000 ticks.
    pub fn from_units(units: u64, precision: u32) -> Self {
        Weight(units.saturating_mul(scale(precision)))
    }

    pub const fn ticks(self) -> u64 {
        self.0
    }

    pub const fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    /// `self - rhs` when both are finite and the result is non-negative.
    pub fn checked_sub(self, rhs: Weight) -> Option<Weight> {
        if !self.is_finite() || !rhs.is_finite() {
            return None;
        }
        self.0.checked_sub(rhs.0).map(Weight)
    }

    /// Value in units as a float, `f64::INFINITY` for the sentinel.
    pub fn to_f64(self, precision: u32) -> f64 {
        if self.is_finite() {
            self.0 as f64 / scale(precision) as f64
        } else {
            f64::INFINITY
        }
    }

    /// Parses a decimal like `2`, `2.5` or `0.125` into ticks, exactly.
    pub fn parse_decimal(text: &str, precision: u32) -> Result<Weight, WeightError> {
        if precision > MAX_PRECISION {
            return Err(WeightError::UnsupportedPrecision(precision));
        }
        let malformed = || WeightError::Malformed(text.to_string());
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(malformed());
        }
        let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) {
            return Err(malformed());
        }
        let frac_trimmed = frac_part.trim_end_matches('0');
        if frac_trimmed.len() > precision as usize {
            return Err(WeightError::TooPrecise {
                text: text.to_string(),
                precision,
            });
        }
        let overflow = || WeightError::Overflow(text.to_string());
        let whole: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| overflow())?
        };
        let mut frac: u64 = 0;
        for (i, b) in frac_trimmed.bytes().enumerate() {
            frac += u64::from(b - b'0') * 10u64.pow(precision - 1 - i as u32);
        }
        let ticks = whole
            .checked_mul(scale(precision))
            .and_then(|t| t.checked_add(frac))
            .filter(|&t| t != u64::MAX)
            .ok_or_else(overflow)?;
        Ok(Weight(ticks))
    }

    /// Shortest decimal rendering: `2`, `2.5`, `inf` for the sentinel.
    pub fn to_decimal_string(self, precision: u32) -> String {
        if !self.is_finite() {
            return "inf".to_string();
        }
        let s = scale(precision);
        let whole = self.0 / s;
        let frac = self.0 % s;
        if frac == 0 {
            return whole.to_string();
        }
        let digits = format!("{:0width$}", frac, width = precision as usize);
        format!("{}.{}", whole, digits.trim_end_matches('0'))
    }
}

/// Ticks per unit at the given precision.
pub fn scale(precision: u32) -> u64 {
    10u64.pow(precision)
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0.saturating_add(rhs.0))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "Weight({})", self.0)
        } else {
            f.write_str("Weight(inf)")
        }
    }
}
