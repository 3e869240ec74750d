use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A finite contiguous range `lo..=hi` of generator indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WindowError {
    #[error("empty window: lo {lo} > hi {hi}")]
    Empty { lo: i64, hi: i64 },
    #[error("malformed window {0:?}, expected lo:hi")]
    Malformed(String),
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self, WindowError> {
        if lo > hi {
            return Err(WindowError::Empty { lo, hi });
        }
        Ok(Window { lo, hi })
    }

    /// `[-n, n]`.
    pub fn symmetric(n: i64) -> Self {
        Window { lo: -n.abs(), hi: n.abs() }
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The window with `margin` indices removed on both sides.
    pub fn shrink(&self, margin: i64) -> Option<Window> {
        Window::new(self.lo + margin, self.hi - margin).ok()
    }

    pub fn is_subset_of(&self, other: &Window) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = WindowError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || WindowError::Malformed(s.to_string());
        let (lo, hi) = s.trim().split_once(':').ok_or_else(malformed)?;
        let lo = lo.trim().parse().map_err(|_| malformed())?;
        let hi = hi.trim().parse().map_err(|_| malformed())?;
        Window::new(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_shrink() {
        let w: Window = "-12:12".parse().unwrap();
        assert_eq!(w, Window::symmetric(12));
        assert_eq!(w.len(), 25);
        assert_eq!(w.shrink(4), Some(Window::symmetric(8)));
        assert_eq!(Window::symmetric(2).shrink(3), None);
        assert!("3:1".parse::<Window>().is_err());
        assert!("3".parse::<Window>().is_err());
        assert_eq!(w.to_string(), "-12:12");
    }
}
