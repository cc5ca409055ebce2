//! SO(3) quantum representations of braid groups at odd level r and the
//! Turaev–Viro values of braided-link complements.
//!
//! Conventions: A = e^{πi/r}, q = A² = e^{2πi/r}. A positive letter acts as
//! A·1 + A⁻¹·U_i. Trivalent vertices and recoupling follow Kauffman–Lins.

mod engine;
mod oracle;
mod recoupling;
mod series;

pub use engine::{colorings, rep_matrix, rep_trace, tv_braided_link, CMatrix, Engine, FusionBasis, DEFAULT_PRECISION};
pub use oracle::{oracle_traces, oracle_tv, tl_bracket_oracle, tl_bracket_oracle_with, OracleConfig};
pub use series::{slope_series, slope_series_with, TVRow, TVSeries};

use serde::{Deserialize, Serialize};

use crate::braid::{permutation_of, BraidWord};
use crate::error::{Error, Result};

/// Odd level r ≥ 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Level {
    r: u32,
}

impl Level {
    pub fn new(r: u32) -> Result<Self> {
        if r < 3 || r % 2 == 0 {
            return Err(Error::InvalidLevel(r));
        }
        Ok(Level { r })
    }

    pub fn r(self) -> u32 {
        self.r
    }

    /// Argument of q, 2π/r.
    pub fn q_angle(self) -> f64 {
        2.0 * std::f64::consts::PI / self.r as f64
    }

    /// U_r = {0, 2, …, r−3}.
    pub fn colors(self) -> Vec<u32> {
        (0..=self.r - 3).step_by(2).collect()
    }

    pub fn is_color(self, c: u32) -> bool {
        c % 2 == 0 && c + 3 <= self.r
    }
}

/// [n] = sin(2πn/r)/sin(2π/r).
pub fn quantum_integer(n: i64, level: Level) -> f64 {
    let t = level.q_angle();
    (t * n as f64).sin() / t.sin()
}

pub fn admissible(a: u32, b: u32, c: u32, level: Level) -> bool {
    (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * (level.r - 2)
}

/// Colors of the punctures (by starting position) and of the outer boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coloring {
    pub strands: Vec<u32>,
    pub root: u32,
}

impl Coloring {
    pub fn new(strands: Vec<u32>, root: u32) -> Self {
        Coloring { strands, root }
    }

    /// Checks ranges and constancy on the cycles of `b`.
    pub fn check(&self, b: &BraidWord, level: Level) -> Result<()> {
        if self.strands.len() != b.strands() as usize {
            return Err(Error::InvalidColoring(format!(
                "{} strand colors for a braid on {} strands",
                self.strands.len(),
                b.strands()
            )));
        }
        for &c in self.strands.iter().chain(std::iter::once(&self.root)) {
            if !level.is_color(c) {
                return Err(Error::InvalidColoring(format!("{c} is not in U_{}", level.r)));
            }
        }
        let perm = permutation_of(b);
        for p in 0..self.strands.len() {
            if self.strands[p] != self.strands[perm.apply(p)] {
                return Err(Error::InvalidColoring(format!("color changes along the cycle through strand {}", p + 1)));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
