//! The families L_k, J_k, K_k of links whose complements are fundamental shadow
//! link complements of complexity k.
//!
//! All three start from the chain graph: k crossings in a row, consecutive ones
//! joined by two edges and a loop at either end (the plat closure of σ₁ᵏ).
//! Augmenting it gives K_k. Every circle of K_k encircles one strand of the
//! chain and C, so it bounds a twice-punctured disk. A half-twist along such a
//! disk keeps the volume. J_k has one half-twist inside the circle around
//! the bottom loop of the chain, and L_k has a second one around the top loop.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::augment::augment_diagram;
use super::volume::v8_f64;
use crate::diagram::{faces, project_to_graph, LinkDiagram, Visit};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    L,
    J,
    K,
}

impl Family {
    pub fn expected_crossings(self, k: usize) -> usize {
        match self {
            Family::L => 5 * k + 6,
            Family::J => 5 * k + 5,
            Family::K => 5 * k + 4,
        }
    }

    pub fn expected_components(self, k: usize) -> usize {
        match self {
            Family::L if k % 2 == 1 => k + 2,
            Family::L => k + 3,
            Family::J => k + 2,
            Family::K => k + 3,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::L => "L",
            Family::J => "J",
            Family::K => "K",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" => Ok(Family::L),
            "J" | "j" => Ok(Family::J),
            "K" | "k" => Ok(Family::K),
            _ => Err(Error::Domain(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyLink {
    pub family: Family,
    pub k: usize,
    pub diagram: LinkDiagram,
    pub expected_crossings: usize,
    pub expected_components: usize,
    pub predicted_volume: f64,
    /// Labels of the unknots that are drilled in the surgery picture.
    pub drilled: Vec<String>,
}

/// Plat closure of σ₁^{±k}: cap on top, cup at the bottom, one component.
pub fn plat_chain(k: usize, sign: i8) -> Result<LinkDiagram> {
    if k == 0 {
        return Err(Error::Domain("chain needs at least one crossing".into()));
    }
    let mut down = Vec::with_capacity(k);
    let mut pos = 1;
    for _ in 0..k {
        let from_right = pos == 2;
        down.push((sign > 0) == from_right);
        pos = 3 - pos;
    }
    let mut visits: Vec<Visit> = down.iter().enumerate().map(|(t, &o)| Visit { crossing: t, over: o }).collect();
    visits.extend(down.iter().enumerate().rev().map(|(t, &o)| Visit { crossing: t, over: !o }));
    // one strand runs back up, so each crossing has the opposite sign of the letter
    let signs = vec![-sign; k];
    let d = LinkDiagram::from_visits(&signs, vec![("K1".into(), visits)])?;
    d.validate()?;
    Ok(d)
}

/// Inserts a crossing between arcs `a` and `b`, which must share a face.
///
/// Inside that face the two arcs are cut and reconnected through the new
/// crossing, each half joining the far half of the other arc. `first_under`
/// picks which of the two new strands passes under.
pub fn half_twist(d: &LinkDiagram, a: u32, b: u32, first_under: bool) -> Result<(LinkDiagram, BTreeMap<u32, u32>)> {
    if a == b {
        return Err(Error::Domain("half-twist needs two distinct arcs".into()));
    }
    let g = project_to_graph(d)?;
    let fs = faces(&g)?;
    let (ea, eb) = (a as usize - 1, b as usize - 1);
    let face = fs
        .faces
        .iter()
        .find(|f| f.darts.iter().any(|&x| g.edge_of(x) == ea) && f.darts.iter().any(|&x| g.edge_of(x) == eb))
        .ok_or_else(|| Error::Domain(format!("arcs {a} and {b} share no face")))?;
    let da = *face.darts.iter().find(|&&x| g.edge_of(x) == ea).unwrap();
    let db = *face.darts.iter().find(|&&x| g.edge_of(x) == eb).unwrap();
    let mut xs: Vec<[u32; 4]> = d.crossings().iter().map(|x| x.arcs).collect();
    let top = 2 * xs.len() as u32;
    let (a2, b2) = (top + 1, top + 2);
    // the far ends of both darts take the new labels
    for (dart, new) in [(g.mate(da), a2), (g.mate(db), b2)] {
        xs[dart / 4][dart % 4] = new;
    }
    // around the new crossing: a-near, a-far, b-near, b-far counterclockwise
    xs.push(if first_under { [a, a2, b, b2] } else { [a2, b, b2, a] });
    LinkDiagram::from_unoriented_pd(&xs)
}

fn volume(k: usize) -> f64 {
    2.0 * k as f64 * v8_f64()
}

/// Arcs of the chain strand and of C that pass through circle `ci`'s band.
fn band_arcs(d: &LinkDiagram, ci: usize, axis: usize) -> Result<(u32, u32)> {
    let visits = d.visits();
    let cv = &visits[ci];
    if cv.len() != 4 {
        return Err(Error::Domain(format!("circle {ci} does not bound a twice-punctured disk")));
    }
    // upper at the chain, upper at C, lower at C, lower at the chain
    let pair_arc = |comps: &mut dyn Iterator<Item = usize>, p: usize, q: usize| {
        for j in comps {
            let vs = &visits[j];
            let n = vs.len();
            for t in 0..n {
                let (x, y) = (vs[t].crossing, vs[(t + 1) % n].crossing);
                if (x, y) == (p, q) || (x, y) == (q, p) {
                    return Some(d.components()[j].arcs[t]);
                }
            }
        }
        None
    };
    let others = (0..visits.len()).filter(|&j| j != ci && j != axis);
    let chain = pair_arc(&mut others.into_iter(), cv[0].crossing, cv[3].crossing);
    let c = pair_arc(&mut std::iter::once(axis), cv[1].crossing, cv[2].crossing);
    match (chain, c) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Domain(format!("circle {ci} has no band between the chain and C"))),
    }
}

/// The link of `family` with parameter `k` ≥ 1.
pub fn make_family(family: Family, k: usize) -> Result<FamilyLink> {
    if k == 0 {
        return Err(Error::Domain("family parameter must be at least 1".into()));
    }
    let base = plat_chain(k, 1)?;
    let aug = augment_diagram(&base)?;
    let mut d = aug.diagram;
    let circles: Vec<String> = aug.circles.iter().map(|&i| d.components()[i].label.clone()).collect();
    let twists = match family {
        Family::K => 0,
        Family::J => 1,
        Family::L => 2,
    };
    if twists > 0 {
        // the two end loops of the chain; their circles sit at either end
        let g = project_to_graph(&base)?;
        let caps: Vec<usize> = aug
            .circles
            .iter()
            .zip(&aug.encircled_edges)
            .filter(|(_, es)| es.len() == 1 && {
                let (u, v) = g.endpoints(es[0]);
                u == v
            })
            .map(|(&c, _)| c)
            .collect();
        if caps.len() != 2 {
            return Err(Error::MalformedDiagram(format!("chain has {} end loops", caps.len())));
        }
        let picks = [caps[1], caps[0]];
        let bands = picks[..twists]
            .iter()
            .map(|&ci| band_arcs(&d, ci, aug.axis))
            .collect::<Result<Vec<_>>>()?;
        // circles are untouched by the twists, so their first arcs identify them
        let marks: Vec<u32> = aug.circles.iter().map(|&i| d.components()[i].arcs[0]).collect();
        let mut map: BTreeMap<u32, u32> = (1..=2 * d.crossing_count() as u32).map(|x| (x, x)).collect();
        for (ea, eb) in bands {
            let (nd, m) = half_twist(&d, map[&ea], map[&eb], true)?;
            map = map.into_iter().filter_map(|(o, x)| m.get(&x).map(|&y| (o, y))).collect();
            d = nd;
        }
        let owner = |arc: u32| d.components().iter().position(|c| c.arcs.contains(&arc)).unwrap();
        let circle_idx: Vec<usize> = marks.iter().map(|m| owner(map[m])).collect();
        let mut strands = 0;
        for i in 0..d.component_count() {
            match circle_idx.iter().position(|&c| c == i) {
                Some(r) => d.set_label(i, circles[r].clone()),
                None => {
                    strands += 1;
                    d.set_label(i, format!("K{strands}"));
                }
            }
        }
    }
    Ok(FamilyLink {
        family,
        k,
        expected_crossings: family.expected_crossings(k),
        expected_components: family.expected_components(k),
        predicted_volume: volume(k),
        drilled: circles,
        diagram: d,
    })
}
