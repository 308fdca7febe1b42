//! Enumeration guard and the mixed-radix assignment counter shared by the
//! brute-force oracles.

use std::ops::ControlFlow;

use crate::error::{Error, Result};

/// Environment variable overriding [`SearchBound::DEFAULT`].
pub const BOUND_ENV_VAR: &str = "GEFKIT_BOUND";

/// Maximum number of candidates an exhaustive search may enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SearchBound(pub u128);

impl SearchBound {
    pub const DEFAULT: SearchBound = SearchBound(1 << 20);

    /// [`SearchBound::DEFAULT`] unless `GEFKIT_BOUND` holds a positive integer.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BOUND_ENV_VAR) {
            Ok(raw) => raw
                .trim()
                .parse::<u128>()
                .ok()
                .filter(|&b| b > 0)
                .map(SearchBound)
                .ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "{BOUND_ENV_VAR}={raw:?} is not a positive integer"
                    ))
                }),
            Err(_) => Ok(SearchBound::DEFAULT),
        }
    }

    /// Fails unless `base^exp` candidates fit the bound.
    pub fn check_power(self, what: &str, base: usize, exp: usize) -> Result<u128> {
        let size = checked_pow(base, exp);
        match size {
            Some(s) if s <= self.0 => Ok(s),
            _ => Err(Error::BoundExceeded {
                what: what.to_string(),
                size: match size {
                    Some(s) => s.to_string(),
                    None => format!("{base}^{exp}"),
                },
                bound: self.0,
            }),
        }
    }
}

impl Default for SearchBound {
    fn default() -> Self {
        SearchBound::DEFAULT
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

/// Visits every assignment of `slots` positions to values `0..radix` in
/// lexicographic order (slot 0 most significant). Stops early on `Break`.
pub(crate) fn for_each_assignment<B>(
    radix: usize,
    slots: usize,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    let mut digits = vec![0usize; slots];
    if radix == 0 {
        return if slots == 0 {
            visit(&digits).break_value()
        } else {
            None
        };
    }
    loop {
        if let ControlFlow::Break(b) = visit(&digits) {
            return Some(b);
        }
        let mut pos = slots;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < radix {
                break;
            }
            digits[pos] = 0;
        }
    }
}
