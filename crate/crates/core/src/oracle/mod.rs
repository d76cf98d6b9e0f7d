//! Exact lower-bound machinery at desk scale.
//!
//! Exhaustive minima over all line trees, the binary-tree cost function
//! and its vocabulary view, the closed-form Hamming minimum, the analytic
//! bounds they are checked against, binomial facts and the path-plus-star
//! graph that has no light tree of small hop-diameter.

pub mod binomial;
pub mod bounds;
pub mod enumerate;
pub mod hamming;
pub mod hardgraph;
pub mod shapes;

use crate::error::{Error, Result};

/// Environment variable overriding [`Caps::line`].
pub const CAP_ENV: &str = "LOWLIGHT_CAP";

/// Largest sizes the exhaustive searches accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Line trees (`n^(n-1)` candidates).
    pub line: usize,
    /// Binary shapes (Catalan many).
    pub shapes: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { line: 8, shapes: 12 }
    }
}

impl Caps {
    /// Defaults, with the line cap taken from [`CAP_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        let mut caps = Caps::default();
        if let Ok(raw) = std::env::var(CAP_ENV) {
            caps.line = raw
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("{CAP_ENV}={raw:?} is not an integer")))?;
        }
        Ok(caps)
    }

    pub fn check_line(&self, n: usize) -> Result<()> {
        if n > self.line {
            return Err(Error::Resource(format!("line-tree enumeration capped at n = {}, asked for {n}", self.line)));
        }
        Ok(())
    }

    pub fn check_shapes(&self, n: usize) -> Result<()> {
        if n > self.shapes {
            return Err(Error::Resource(format!("binary-shape enumeration capped at n = {}, asked for {n}", self.shapes)));
        }
        Ok(())
    }
}
