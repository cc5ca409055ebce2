//! Brute-force colored Kauffman bracket, independent of the recoupling engine.
//!
//! Each strand of the diagram's braid is cabled by its color, the cabled braid
//! acts on Temperley–Lieb standard modules, Jones–Wenzl projectors sit on the
//! cables, and the closure is the Markov trace Σ_k Δ_k χ_k. Plain f64 complex
//! arithmetic throughout.

use std::collections::HashMap;

use num_complex::Complex64;

use super::{engine::colorings, Coloring, Level};
use crate::braid::{permutation_of, BraidWord};
use crate::diagram::braided_link;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest total cabled width evaluated.
    pub width_limit: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { width_limit: 10 }
    }
}

const DEFECT: u8 = u8::MAX;

/// Link states of width w with k through-strands, and the action of each U_g.
struct Module {
    states: Vec<Vec<u8>>,
    /// u[g][s] = image of state s under U_g: None for zero, flag for a loop factor.
    u: Vec<Vec<Option<(u32, bool)>>>,
}

fn gen_states(w: usize, k: usize, cur: &mut Vec<u8>, open: &mut Vec<usize>, defects: usize, out: &mut Vec<Vec<u8>>) {
    let p = cur.len();
    if p == w {
        if open.is_empty() && defects == k {
            out.push(cur.clone());
        }
        return;
    }
    // points left must be able to close every open cup
    if open.len() > w - p {
        return;
    }
    if open.is_empty() && defects < k {
        cur.push(DEFECT);
        gen_states(w, k, cur, open, defects + 1, out);
        cur.pop();
    }
    if let Some(&q) = open.last() {
        cur[q] = p as u8;
        cur.push(q as u8);
        open.pop();
        gen_states(w, k, cur, open, defects, out);
        open.push(q);
        cur.pop();
        cur[q] = DEFECT;
    }
    cur.push(DEFECT);
    open.push(p);
    gen_states(w, k, cur, open, defects, out);
    open.pop();
    cur.pop();
}

impl Module {
    fn new(w: usize, k: usize) -> Self {
        let mut states = Vec::new();
        gen_states(w, k, &mut Vec::new(), &mut Vec::new(), 0, &mut states);
        let index: HashMap<Vec<u8>, u32> = states.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let u = (0..w.saturating_sub(1))
            .map(|g| {
                states
                    .iter()
                    .map(|s| {
                        let (x, y) = (s[g], s[g + 1]);
                        if x as usize == g + 1 {
                            return Some((index[s], true));
                        }
                        if x == DEFECT && y == DEFECT {
                            return None;
                        }
                        let mut t = s.clone();
                        match (x, y) {
                            (DEFECT, b) => t[b as usize] = DEFECT,
                            (a, DEFECT) => t[a as usize] = DEFECT,
                            (a, b) => {
                                t[a as usize] = b;
                                t[b as usize] = a;
                            }
                        }
                        t[g] = g as u8 + 1;
                        t[g + 1] = g as u8;
                        Some((index[&t], false))
                    })
                    .collect()
            })
            .collect();
        Module { states, u }
    }

    fn apply_u(&self, g: usize, v: &[Complex64], d: f64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (s, x) in v.iter().enumerate() {
            if x.re == 0.0 && x.im == 0.0 {
                continue;
            }
            if let Some((t, loop_factor)) = self.u[g][s] {
                out[t as usize] += if loop_factor { x * d } else { *x };
            }
        }
        out
    }
}

struct Ctx {
    a: Complex64,
    /// Δ_n for n = 0, 1, …
    delta: Vec<f64>,
}

impl Ctx {
    fn new(level: Level, w: usize) -> Self {
        let r = level.r() as f64;
        let a = Complex64::from_polar(1.0, std::f64::consts::PI / r);
        let q = |n: usize| (2.0 * std::f64::consts::PI * n as f64 / r).sin() / (2.0 * std::f64::consts::PI / r).sin();
        let delta = (0..=w + 1).map(|n| if n % 2 == 0 { q(n + 1) } else { -q(n + 1) }).collect();
        Ctx { a, delta }
    }

    /// Jones–Wenzl projector of width n on positions start.. by Wenzl's recursion.
    fn jw(&self, m: &Module, start: usize, n: usize, v: Vec<Complex64>) -> Vec<Complex64> {
        if n <= 1 {
            return v;
        }
        let v1 = self.jw(m, start, n - 1, v);
        let u = m.apply_u(start + n - 2, &v1, self.delta[1]);
        let v3 = self.jw(m, start, n - 1, u);
        let c = self.delta[n - 2] / self.delta[n - 1];
        v1.iter().zip(&v3).map(|(x, y)| x - y * c).collect()
    }
}

/// Elementary generators (0-based, sign) of the cabled braid.
fn cable(b: &BraidWord, widths: &[usize]) -> Vec<(usize, i32)> {
    let mut w = widths.to_vec();
    let mut out = Vec::new();
    for &e in b.letters() {
        let p = e.unsigned_abs() as usize - 1;
        let s: usize = w[..p].iter().sum();
        // the right cable passes over the left one, strand by strand
        let over = |a: usize, bw: usize| {
            let mut l = Vec::new();
            for m in 0..bw {
                for g in (s + m..s + a + m).rev() {
                    l.push((g, 1));
                }
            }
            l
        };
        if e > 0 {
            out.extend(over(w[p], w[p + 1]));
        } else {
            out.extend(over(w[p + 1], w[p]).into_iter().rev().map(|(g, _)| (g, -1)));
        }
        w.swap(p, p + 1);
    }
    out
}

/// Markov trace of P·X, P the projectors on the cables of widths `widths`.
fn colored_trace(b: &BraidWord, widths: &[usize], level: Level) -> Complex64 {
    let w: usize = widths.iter().sum();
    let ctx = Ctx::new(level, w);
    let word = cable(b, widths);
    let mut block = vec![0usize; w];
    let mut pos = 0;
    for (i, &c) in widths.iter().enumerate() {
        block[pos..pos + c].fill(i);
        pos += c;
    }
    let (ainv, a) = (1.0 / ctx.a, ctx.a);
    let mut total = Complex64::new(0.0, 0.0);
    for k in (w % 2..=w).step_by(2) {
        let m = Module::new(w, k);
        let mut chi = Complex64::new(0.0, 0.0);
        for (si, s) in m.states.iter().enumerate() {
            // a cup inside one cable is killed by its projector
            let valid = s.iter().enumerate().all(|(p, &q)| q == DEFECT || block[p] != block[q as usize]);
            if !valid {
                continue;
            }
            let mut v = vec![Complex64::new(0.0, 0.0); m.states.len()];
            v[si] = Complex64::new(1.0, 0.0);
            let mut start = 0;
            for &c in widths {
                v = ctx.jw(&m, start, c, v);
                start += c;
            }
            for &(g, sign) in &word {
                let uv = m.apply_u(g, &v, ctx.delta[1]);
                let (x, y) = if sign > 0 { (a, ainv) } else { (ainv, a) };
                v = v.iter().zip(&uv).map(|(p, q)| p * x + q * y).collect();
            }
            chi += v[si];
        }
        total += chi * ctx.delta[k];
    }
    total
}

/// Colored bracket of a closed-braid diagram, one color per component.
pub fn tl_bracket_oracle(d: &LinkDiagram, level: Level, coloring: &[u32]) -> Result<Complex64> {
    tl_bracket_oracle_with(d, level, coloring, &OracleConfig::default())
}

pub fn tl_bracket_oracle_with(d: &LinkDiagram, level: Level, coloring: &[u32], config: &OracleConfig) -> Result<Complex64> {
    let b = d
        .braid()
        .ok_or_else(|| Error::MalformedDiagram("oracle needs a diagram carrying its braid".into()))?;
    let cycles = permutation_of(b).cycles();
    if coloring.len() != cycles.len() || cycles.len() != d.component_count() {
        return Err(Error::InvalidColoring(format!(
            "{} colors for {} components",
            coloring.len(),
            d.component_count()
        )));
    }
    if let Some(&c) = coloring.iter().find(|&&c| !level.is_color(c)) {
        return Err(Error::InvalidColoring(format!("{c} is not in U_{}", level.r())));
    }
    let mut widths = vec![0usize; b.strands() as usize];
    for (cyc, &c) in cycles.iter().zip(coloring) {
        for &p in cyc {
            widths[p - 1] = c as usize;
        }
    }
    let width: usize = widths.iter().sum();
    if width > config.width_limit {
        return Err(Error::WidthLimit { width, limit: config.width_limit });
    }
    Ok(colored_trace(b, &widths, level))
}

fn solve(mut m: Vec<Vec<Complex64>>, mut rhs: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))
            .unwrap();
        if m[piv][col].norm() < 1e-12 {
            return Err(Error::Domain("Hopf pairing is singular".into()));
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for row in 0..n {
            if row != col {
                let f = m[row][col] / m[col][col];
                for c in col..n {
                    let t = m[col][c];
                    m[row][c] -= f * t;
                }
                let t = rhs[col];
                rhs[row] -= f * t;
            }
        }
    }
    Ok((0..n).map(|i| rhs[i] / m[i][i]).collect())
}

/// Traces of ρ_{r,c}(b) for every coloring, recovered from brackets of the
/// braided link with the axis colored j by inverting the Hopf pairing.
pub fn oracle_traces(b: &BraidWord, level: Level, config: &OracleConfig) -> Result<Vec<(Coloring, Complex64)>> {
    let us = level.colors();
    let hopf = braided_link(&BraidWord::identity(1));
    // h[j][t]: unknot colored t with the axis colored j
    let mut h = vec![vec![Complex64::new(0.0, 0.0); us.len()]; us.len()];
    for (ji, &j) in us.iter().enumerate() {
        for (ti, &t) in us.iter().enumerate() {
            h[ji][ti] = tl_bracket_oracle_with(&hopf, level, &[t, j], config)?;
        }
    }
    let ht: Vec<Vec<Complex64>> = (0..us.len()).map(|t| (0..us.len()).map(|j| h[j][t]).collect()).collect();
    let weights: Vec<Vec<Complex64>> = (0..us.len())
        .map(|t| {
            let mut e = vec![Complex64::new(0.0, 0.0); us.len()];
            e[t] = Complex64::new(1.0, 0.0);
            solve(ht.clone(), e)
        })
        .collect::<Result<_>>()?;

    let link = braided_link(b);
    let cycles = permutation_of(b).cycles();
    let mut brackets: HashMap<Vec<u32>, Vec<Complex64>> = HashMap::new();
    let mut out = Vec::new();
    for c in colorings(b, level) {
        let comp: Vec<u32> = cycles.iter().map(|cyc| c.strands[cyc[0] - 1]).collect();
        if !brackets.contains_key(&comp) {
            let row = us
                .iter()
                .map(|&j| {
                    let mut cc = comp.clone();
                    cc.push(j);
                    tl_bracket_oracle_with(&link, level, &cc, config)
                })
                .collect::<Result<Vec<_>>>()?;
            brackets.insert(comp.clone(), row);
        }
        let row = &brackets[&comp];
        let ti = us.iter().position(|&u| u == c.root).unwrap();
        let tr = weights[ti].iter().zip(row).map(|(w, x)| w * x).sum();
        out.push((c, tr));
    }
    Ok(out)
}

/// TV assembled from the oracle traces.
pub fn oracle_tv(b: &BraidWord, level: Level, config: &OracleConfig) -> Result<f64> {
    Ok(oracle_traces(b, level, config)?.iter().map(|(_, t)| t.norm_sqr()).sum())
}
