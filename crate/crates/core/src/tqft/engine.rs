//! Braid group action on left-comb fusion bases, traces and the TV trace sum.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;
use rug::{Complex, Float};

use super::recoupling::Recoupling;
use super::{admissible, Coloring, Level};
use crate::braid::{permutation_of, BraidWord};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 128;

/// Admissible labelings x_1..x_m of the left comb, x_1 = c_1 and x_m = root,
/// where x_k is the edge after fusing the first k punctures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionBasis {
    pub colors: Vec<u32>,
    pub root: u32,
    pub labels: Vec<Vec<u32>>,
}

impl FusionBasis {
    pub fn new(colors: &[u32], root: u32, level: Level) -> Self {
        let mut labels = Vec::new();
        if !colors.is_empty() {
            let mut cur = vec![colors[0]];
            extend(colors, root, level, &mut cur, &mut labels);
        }
        FusionBasis { colors: colors.to_vec(), root, labels }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    fn index(&self) -> HashMap<&[u32], usize> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_slice(), i)).collect()
    }
}

fn extend(colors: &[u32], root: u32, level: Level, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let k = cur.len();
    if k == colors.len() {
        if cur[k - 1] == root {
            out.push(cur.clone());
        }
        return;
    }
    let prev = cur[k - 1];
    for x in level.colors() {
        if admissible(prev, colors[k], x, level) {
            cur.push(x);
            extend(colors, root, level, cur, out);
            cur.pop();
        }
    }
}

/// Dense row-major complex matrix at MPFR precision.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub dim: usize,
    pub data: Vec<Complex>,
}

impl CMatrix {
    pub fn identity(dim: usize, prec: u32) -> Self {
        let mut data = vec![Complex::new(prec); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex::with_val(prec, 1);
        }
        CMatrix { dim, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex {
        &self.data[i * self.dim + j]
    }

    pub fn trace(&self) -> Complex {
        let prec = self.data.first().map_or(DEFAULT_PRECISION, |z| z.prec().0);
        let mut t = Complex::new(prec);
        for i in 0..self.dim {
            t += self.get(i, i);
        }
        t
    }

    pub fn to_complex64(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| to_c64(self.get(i, j))).collect())
            .collect()
    }
}

pub(crate) fn to_c64(z: &Complex) -> Complex64 {
    Complex64::new(z.real().to_f64(), z.imag().to_f64())
}

/// Representation engine at one level and precision; recoupling data is cached.
pub struct Engine {
    rec: Recoupling,
}

impl Engine {
    pub fn new(level: Level, prec: u32) -> Self {
        Engine { rec: Recoupling::new(level, prec) }
    }

    pub fn level(&self) -> Level {
        self.rec.level
    }

    pub fn precision(&self) -> u32 {
        self.rec.prec
    }

    /// Product of the letter matrices in word order; rows index the basis
    /// before the braid acts.
    pub fn rep_matrix(&self, b: &BraidWord, coloring: &Coloring) -> Result<CMatrix> {
        coloring.check(b, self.level())?;
        let level = self.level();
        let prec = self.rec.prec;
        let mut cols = coloring.strands.clone();
        let mut basis = FusionBasis::new(&cols, coloring.root, level);
        let dim = basis.dim();
        if dim == 0 {
            return Err(Error::EmptyBlockSpace);
        }
        let mut m = CMatrix::identity(dim, prec);
        for &e in b.letters() {
            let p = e.unsigned_abs() as usize - 1;
            let sign = e.signum();
            let mut next_cols = cols.clone();
            next_cols.swap(p, p + 1);
            let next = FusionBasis::new(&next_cols, coloring.root, level);
            let idx = next.index();
            let mut out = vec![Complex::new(prec); dim * dim];
            for (xi, x) in basis.labels.iter().enumerate() {
                for (y, coef) in self.letter_images(&cols, x, p, sign) {
                    let yi = idx[y.as_slice()];
                    for row in 0..dim {
                        let v = m.get(row, xi);
                        if v.real().is_zero() && v.imag().is_zero() {
                            continue;
                        }
                        out[row * dim + yi] += Complex::with_val(prec, v * &coef);
                    }
                }
            }
            m = CMatrix { dim, data: out };
            cols = next_cols;
            basis = next;
        }
        Ok(m)
    }

    /// Images of basis vector `x` under σ_{p+1}^{sign}.
    fn letter_images(&self, cols: &[u32], x: &[u32], p: usize, sign: i32) -> Vec<(Vec<u32>, Complex)> {
        let level = self.level();
        let mut y = x.to_vec();
        if p == 0 {
            // the first two punctures fuse directly into x_2
            y[0] = cols[1];
            return vec![(y, self.rec.twist(cols[0], cols[1], x[1], sign))];
        }
        let (a, b, c, d) = (x[p - 1], cols[p], cols[p + 1], x[p + 1]);
        let mut out = Vec::new();
        for j in level.colors() {
            if !admissible(a, c, j, level) || !admissible(j, b, d, level) {
                continue;
            }
            let coef = self.rec.braid_coef(a, b, c, d, x[p], j, sign);
            y[p] = j;
            out.push((y.clone(), coef));
        }
        out
    }

    pub fn rep_trace(&self, b: &BraidWord, coloring: &Coloring) -> Result<Complex> {
        match self.rep_matrix(b, coloring) {
            Ok(m) => Ok(m.trace()),
            Err(Error::EmptyBlockSpace) => Ok(Complex::new(self.rec.prec)),
            Err(e) => Err(e),
        }
    }

    /// Σ_c |Tr ρ_{r,c}(b)|², summed in the order of [`colorings`].
    pub fn tv_braided_link(&self, b: &BraidWord) -> Result<Float> {
        let prec = self.rec.prec;
        let cs = colorings(b, self.level());
        let terms: Vec<Float> = cs
            .par_iter()
            .map(|c| {
                let t = self.rep_trace(b, c)?;
                let re = Float::with_val(prec, t.real() * t.real());
                Ok(re + Float::with_val(prec, t.imag() * t.imag()))
            })
            .collect::<Result<_>>()?;
        let mut sum = Float::new(prec);
        for t in &terms {
            sum += t;
        }
        Ok(sum)
    }
}

/// Colorings constant on the cycles of `b`, lexicographic in (cycle colors, root).
pub fn colorings(b: &BraidWord, level: Level) -> Vec<Coloring> {
    let cycles = permutation_of(b).cycles();
    let us = level.colors();
    let slots = cycles.len() + 1;
    let mut out = Vec::new();
    let mut digits = vec![0usize; slots];
    loop {
        let mut strands = vec![0; b.strands() as usize];
        for (ci, cyc) in cycles.iter().enumerate() {
            for &p in cyc {
                strands[p - 1] = us[digits[ci]];
            }
        }
        out.push(Coloring { strands, root: us[digits[slots - 1]] });
        let mut k = slots;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < us.len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

pub fn rep_matrix(b: &BraidWord, level: Level, coloring: &Coloring) -> Result<CMatrix> {
    Engine::new(level, DEFAULT_PRECISION).rep_matrix(b, coloring)
}

pub fn rep_trace(b: &BraidWord, level: Level, coloring: &Coloring) -> Result<Complex> {
    Engine::new(level, DEFAULT_PRECISION).rep_trace(b, coloring)
}

pub fn tv_braided_link(b: &BraidWord, level: Level) -> Result<Float> {
    Engine::new(level, DEFAULT_PRECISION).tv_braided_link(b)
}
