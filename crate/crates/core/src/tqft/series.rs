//! TV values along odd levels and the slopes (2π/r)·log TV.

use serde::{Deserialize, Serialize};

use super::{Engine, Level, DEFAULT_PRECISION};
use crate::braid::{make_bk, BraidWord};
use crate::error::{Error, Result};
use crate::fsl::v8_f64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TVRow {
    pub r: u32,
    pub tv: f64,
    /// Decimal digits of TV at working precision.
    pub tv_text: String,
    /// None when TV is zero.
    pub slope: Option<f64>,
    /// Least slope over this and every later row.
    pub tail_min: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TVSeries {
    pub braid: String,
    pub precision_bits: u32,
    pub rows: Vec<TVRow>,
    /// 2k·v₈ when the braid is b_k.
    pub target: Option<f64>,
    /// Tail minimum over the upper half of the computed levels.
    pub ltv_proxy: Option<f64>,
}

fn bk_index(b: &BraidWord) -> Option<u32> {
    (1..=b.strands().saturating_sub(2)).find(|&k| make_bk(k).is_ok_and(|w| &w == b))
}

pub fn slope_series(b: &BraidWord, r_list: &[u32]) -> Result<TVSeries> {
    slope_series_with(b, r_list, DEFAULT_PRECISION)
}

pub fn slope_series_with(b: &BraidWord, r_list: &[u32], prec: u32) -> Result<TVSeries> {
    if r_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("levels must be strictly ascending".into()));
    }
    let mut rows = Vec::new();
    for &r in r_list {
        let level = Level::new(r)?;
        let tv = Engine::new(level, prec).tv_braided_link(b)?;
        let digits = (prec as f64 * std::f64::consts::LOG10_2).floor() as usize;
        let tv_f = tv.to_f64();
        let slope = (tv_f > 0.0).then(|| level.q_angle() * tv.clone().ln().to_f64());
        rows.push(TVRow { r, tv: tv_f, tv_text: format!("{:.*e}", digits.saturating_sub(1), tv), slope, tail_min: None });
    }
    let mut run: Option<f64> = None;
    for row in rows.iter_mut().rev() {
        run = match (run, row.slope) {
            (Some(m), Some(s)) => Some(m.min(s)),
            (m, s) => m.or(s),
        };
        row.tail_min = run;
    }
    let ltv_proxy = rows.get(rows.len() / 2).and_then(|r| r.tail_min);
    Ok(TVSeries {
        braid: b.to_string(),
        precision_bits: prec,
        target: bk_index(b).map(|k| 2.0 * k as f64 * v8_f64()),
        rows,
        ltv_proxy,
    })
}
