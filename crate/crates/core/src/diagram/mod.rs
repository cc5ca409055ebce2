//! Planar link diagrams as PD codes.
//!
//! `X[a,b,c,d]` lists the four arcs at a crossing counterclockwise, starting
//! from the incoming under-arc. For a positive crossing slot 1 is the outgoing
//! over-arc; for a negative one it is the incoming over-arc.

mod closure;
mod graph;

pub use closure::{braided_link, closure_diagram};
pub use graph::{
    dual_shortest_path, dual_tree, faces, maximal_tree, project_to_graph, DualPath, DualTree,
    Face, FaceSet, GraphLoop, ParentLink, PlanarGraph4V,
};
pub(crate) use graph::path_in_tree;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// A crossing slot: leaving crossing `crossing` through slot `slot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Dart {
    pub crossing: usize,
    pub slot: u8,
}

impl Dart {
    pub fn new(crossing: usize, slot: u8) -> Self {
        Dart { crossing, slot }
    }

    pub fn index(self) -> usize {
        4 * self.crossing + self.slot as usize
    }

    pub fn from_index(i: usize) -> Self {
        Dart { crossing: i / 4, slot: (i % 4) as u8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub sign: i8,
}

impl Crossing {
    /// Slot through which the strand entering at `slot` leaves.
    pub fn pass_through(&self, slot: u8) -> u8 {
        (slot + 2) % 4
    }

    pub fn is_incoming(&self, slot: u8) -> bool {
        match slot {
            0 => true,
            2 => false,
            1 => self.sign < 0,
            _ => self.sign > 0,
        }
    }

    pub fn is_over(&self, slot: u8) -> bool {
        slot % 2 == 1
    }
}

/// Where a crossingless loop sits in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LoopHost {
    /// Inside the face on the left of this dart.
    Face(Dart),
    /// Inside the region bounded by another crossingless loop (its own face).
    Loop(usize),
    /// No placement information.
    Unplaced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopPlacement {
    pub host: LoopHost,
    /// True if the crossing graph lies inside this loop.
    pub encloses_graph: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub label: String,
    /// Arcs in traversal order; empty for a crossingless loop.
    pub arcs: Vec<u32>,
    pub placement: Option<LoopPlacement>,
}

impl Component {
    pub fn is_free_loop(&self) -> bool {
        self.arcs.is_empty()
    }
}

/// One pass of a component through a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Visit {
    pub crossing: usize,
    pub over: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    components: Vec<Component>,
    outer: Option<Dart>,
    braid: Option<BraidWord>,
}

impl LinkDiagram {
    /// Builds a diagram from each component's sequence of crossing visits.
    ///
    /// Every crossing must be visited exactly once over and once under. Arcs are
    /// numbered consecutively along components in the given order; arc `j` of a
    /// component leaves its `j`-th visit.
    pub fn from_visits(signs: &[i8], comps: Vec<(String, Vec<Visit>)>) -> Result<Self> {
        let v = signs.len();
        // (in, out) arc per crossing for the under and the over strand
        let mut under: Vec<[Option<u32>; 2]> = vec![[None; 2]; v];
        let mut over: Vec<[Option<u32>; 2]> = vec![[None; 2]; v];
        let mut components = Vec::with_capacity(comps.len());
        let mut next = 1u32;
        for (label, visits) in comps {
            let len = visits.len() as u32;
            let first = next;
            let mut arcs = Vec::with_capacity(visits.len());
            for (j, vis) in visits.iter().enumerate() {
                if vis.crossing >= v {
                    return Err(Error::MalformedDiagram(format!("unknown crossing {}", vis.crossing)));
                }
                let out_arc = first + j as u32;
                let in_arc = if j == 0 { first + len - 1 } else { out_arc - 1 };
                let slot = if vis.over { &mut over[vis.crossing] } else { &mut under[vis.crossing] };
                if slot[0].is_some() {
                    return Err(Error::MalformedDiagram(format!(
                        "crossing {} visited twice on the same level",
                        vis.crossing
                    )));
                }
                *slot = [Some(in_arc), Some(out_arc)];
                arcs.push(out_arc);
            }
            next += len;
            components.push(Component { label, arcs, placement: None });
        }
        let mut crossings = Vec::with_capacity(v);
        for c in 0..v {
            let (Some(ui), Some(uo)) = (under[c][0], under[c][1]) else {
                return Err(Error::MalformedDiagram(format!("crossing {c} has no under-pass")));
            };
            let (Some(oi), Some(oo)) = (over[c][0], over[c][1]) else {
                return Err(Error::MalformedDiagram(format!("crossing {c} has no over-pass")));
            };
            let sign = signs[c];
            let arcs = if sign > 0 { [ui, oo, uo, oi] } else { [ui, oi, uo, oo] };
            crossings.push(Crossing { arcs, sign });
        }
        Ok(LinkDiagram { crossings, components, outer: None, braid: None })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn free_loop_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_free_loop()).count()
    }

    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    pub fn set_outer_dart(&mut self, d: Option<Dart>) {
        self.outer = d;
    }

    /// Braid whose closure this diagram is, when known.
    pub fn braid(&self) -> Option<&BraidWord> {
        self.braid.as_ref()
    }

    pub fn set_braid(&mut self, b: Option<BraidWord>) {
        self.braid = b;
    }

    pub fn set_placement(&mut self, comp: usize, p: LoopPlacement) {
        self.components[comp].placement = Some(p);
    }

    pub fn set_label(&mut self, comp: usize, label: impl Into<String>) {
        self.components[comp].label = label.into();
    }

    pub fn component_index(&self, label: &str) -> Option<usize> {
        self.components.iter().position(|c| c.label == label)
    }

    /// Slot where arc `a` enters (head) and leaves (tail), as darts.
    fn arc_ends(&self) -> BTreeMap<u32, (Option<Dart>, Option<Dart>)> {
        let mut ends: BTreeMap<u32, (Option<Dart>, Option<Dart>)> = BTreeMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for s in 0..4u8 {
                let e = ends.entry(x.arcs[s as usize]).or_default();
                let d = Some(Dart::new(c, s));
                if x.is_incoming(s) {
                    e.0 = d;
                } else {
                    e.1 = d;
                }
            }
        }
        ends
    }

    /// Visit sequence of every component, aligned with its arc list.
    pub fn visits(&self) -> Vec<Vec<Visit>> {
        let ends = self.arc_ends();
        self.components
            .iter()
            .map(|comp| {
                comp.arcs
                    .iter()
                    .map(|a| {
                        let tail = ends[a].1.expect("validated diagram");
                        Visit {
                            crossing: tail.crossing,
                            over: self.crossings[tail.crossing].is_over(tail.slot),
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Checks double occurrence of arcs, orientation and component consistency.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedDiagram(m));
        let mut count: BTreeMap<u32, usize> = BTreeMap::new();
        for x in &self.crossings {
            if x.sign != 1 && x.sign != -1 {
                return bad(format!("sign {} is not ±1", x.sign));
            }
            for &a in &x.arcs {
                *count.entry(a).or_default() += 1;
            }
        }
        let n_arcs = 2 * self.crossings.len() as u32;
        if count.len() as u32 != n_arcs || count.keys().copied().ne(1..=n_arcs) {
            return bad("arcs must be numbered 1..2V".into());
        }
        if let Some((a, _)) = count.iter().find(|(_, &k)| k != 2) {
            return bad(format!("arc {a} does not occur exactly twice"));
        }
        let ends = self.arc_ends();
        for (a, (h, t)) in &ends {
            if h.is_none() || t.is_none() {
                return bad(format!("arc {a} is not oriented consistently"));
            }
        }
        let mut seen = BTreeSet::new();
        for comp in &self.components {
            for (j, a) in comp.arcs.iter().enumerate() {
                if !seen.insert(*a) {
                    return bad(format!("arc {a} belongs to two components"));
                }
                let head = ends[a].0.unwrap();
                let x = &self.crossings[head.crossing];
                let nxt = x.arcs[x.pass_through(head.slot) as usize];
                if nxt != comp.arcs[(j + 1) % comp.arcs.len()] {
                    return bad(format!("component {} breaks after arc {a}", comp.label));
                }
            }
        }
        if seen.len() as u32 != n_arcs {
            return bad("components do not cover every arc".into());
        }
        Ok(())
    }

    /// PD text: one `X[a,b,c,d,±]` line per crossing, then `U[n]` for each
    /// crossingless component (1-based position in the component list).
    pub fn to_pd_text(&self) -> String {
        let mut s = String::new();
        for x in &self.crossings {
            let sg = if x.sign > 0 { '+' } else { '-' };
            let [a, b, c, d] = x.arcs;
            writeln!(s, "X[{a},{b},{c},{d},{sg}]").unwrap();
        }
        for (i, comp) in self.components.iter().enumerate() {
            if comp.is_free_loop() {
                writeln!(s, "U[{}]", i + 1).unwrap();
            }
        }
        s
    }

    pub fn pd_records(&self) -> Vec<String> {
        self.to_pd_text().lines().map(str::to_string).collect()
    }

    /// Rebuilds an oriented diagram from crossings listed as counterclockwise arc
    /// labels with the under-strand on slots 0 and 2.
    ///
    /// Labels are arbitrary but each must occur exactly twice. Components are
    /// traced from their least label, entering on slot 0 where the label allows,
    /// so an already oriented PD keeps its orientation. Returns the diagram and
    /// the new arc number given to every old label.
    pub fn from_unoriented_pd(xs: &[[u32; 4]]) -> Result<(LinkDiagram, BTreeMap<u32, u32>)> {
        let mut occ: BTreeMap<u32, Vec<(usize, u8)>> = BTreeMap::new();
        for (c, x) in xs.iter().enumerate() {
            for s in 0..4u8 {
                occ.entry(x[s as usize]).or_default().push((c, s));
            }
        }
        if let Some((a, _)) = occ.iter().find(|(_, o)| o.len() != 2) {
            return Err(Error::MalformedDiagram(format!("label {a} does not occur exactly twice")));
        }
        let n = xs.len();
        let mut under_in = vec![None; n];
        let mut over_in = vec![None; n];
        let mut used = BTreeSet::new();
        let mut relabel = BTreeMap::new();
        let mut comps = Vec::new();
        let mut next = 1u32;
        for (&start, o) in &occ {
            if used.contains(&start) {
                continue;
            }
            // the entry end of the starting label
            let mut at = if let Some(&e) = o.iter().find(|e| e.1 == 0) {
                e
            } else if let Some(i) = o.iter().position(|e| e.1 == 2) {
                o[1 - i]
            } else {
                o[0]
            };
            let mut label = start;
            let mut visits = Vec::new();
            loop {
                used.insert(label);
                let (c, s) = at;
                let level = if s % 2 == 1 { &mut over_in[c] } else { &mut under_in[c] };
                if level.is_some() {
                    return Err(Error::MalformedDiagram(format!("crossing {c} entered twice")));
                }
                *level = Some(s);
                visits.push(Visit { crossing: c, over: s % 2 == 1 });
                let exit = (s + 2) % 4;
                label = xs[c][exit as usize];
                relabel.insert(label, next + visits.len() as u32 - 1);
                let ends = &occ[&label];
                at = if ends[0] == (c, exit) { ends[1] } else { ends[0] };
                if label == start {
                    break;
                }
            }
            next += visits.len() as u32;
            comps.push((format!("K{}", comps.len() + 1), visits));
        }
        let mut signs = Vec::with_capacity(n);
        for c in 0..n {
            let (Some(u), Some(o)) = (under_in[c], over_in[c]) else {
                return Err(Error::MalformedDiagram(format!("crossing {c} is not traversed twice")));
            };
            signs.push(if (o + 4 - u) % 4 == 3 { 1 } else { -1 });
        }
        Ok((LinkDiagram::from_visits(&signs, comps)?, relabel))
    }

    /// Parses PD text. Components are recovered from the arcs, ordered by their
    /// least arc, with crossingless loops inserted at their recorded positions.
    pub fn from_pd_text(text: &str) -> Result<Self> {
        let mut crossings = Vec::new();
        let mut loops = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim().trim_end_matches(',');
            if line.is_empty() {
                continue;
            }
            let bad = |m: &str| Error::Parse { pos: ln + 1, msg: format!("line {}: {m}", ln + 1) };
            if let Some(inner) = line.strip_prefix("X[").and_then(|r| r.strip_suffix(']')) {
                let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
                if parts.len() != 5 {
                    return Err(bad("crossing needs four arcs and a sign"));
                }
                let mut arcs = [0u32; 4];
                for (k, p) in parts[..4].iter().enumerate() {
                    arcs[k] = p.parse().map_err(|_| bad("arc label must be a positive integer"))?;
                }
                let sign = match parts[4] {
                    "+" => 1,
                    "-" => -1,
                    _ => return Err(bad("sign must be + or -")),
                };
                crossings.push(Crossing { arcs, sign });
            } else if let Some(inner) = line.strip_prefix("U[").and_then(|r| r.strip_suffix(']')) {
                let n: usize = inner.trim().parse().map_err(|_| bad("U record needs an index"))?;
                if n == 0 {
                    return Err(bad("U index is 1-based"));
                }
                loops.push(n - 1);
            } else {
                return Err(bad("expected X[...] or U[...]"));
            }
        }
        let mut d = LinkDiagram { crossings, components: Vec::new(), outer: None, braid: None };
        d.components = d.trace_components()?;
        loops.sort_unstable();
        for (k, &pos) in loops.iter().enumerate() {
            if pos > d.components.len() {
                return Err(Error::MalformedDiagram(format!("U[{}] out of order", pos + 1)));
            }
            let label = format!("U{}", k + 1);
            d.components.insert(pos, Component { label, arcs: Vec::new(), placement: None });
        }
        let mut k = 0;
        for comp in d.components.iter_mut() {
            if !comp.is_free_loop() {
                k += 1;
                comp.label = format!("K{k}");
            }
        }
        d.validate()?;
        Ok(d)
    }

    fn trace_components(&self) -> Result<Vec<Component>> {
        let mut ends: BTreeMap<u32, Dart> = BTreeMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for s in 0..4u8 {
                if x.is_incoming(s) && ends.insert(x.arcs[s as usize], Dart::new(c, s)).is_some() {
                    return Err(Error::MalformedDiagram(format!(
                        "arc {} enters two crossings",
                        x.arcs[s as usize]
                    )));
                }
            }
        }
        let mut used = BTreeSet::new();
        let mut comps = Vec::new();
        for &start in ends.keys() {
            if used.contains(&start) {
                continue;
            }
            let mut arcs = Vec::new();
            let mut a = start;
            loop {
                if !used.insert(a) {
                    return Err(Error::MalformedDiagram(format!("arc {a} reached twice")));
                }
                arcs.push(a);
                let head = ends
                    .get(&a)
                    .ok_or_else(|| Error::MalformedDiagram(format!("arc {a} has no head")))?;
                let x = &self.crossings[head.crossing];
                a = x.arcs[x.pass_through(head.slot) as usize];
                if a == start {
                    break;
                }
            }
            comps.push(Component { label: String::new(), arcs, placement: None });
        }
        Ok(comps)
    }

    /// Deletes the given components and every crossing they take part in.
    ///
    /// Remaining components keep their order and labels; components left without
    /// crossings become unplaced free loops.
    pub fn remove_components(&self, drop: &[usize]) -> Result<LinkDiagram> {
        let drop: BTreeSet<usize> = drop.iter().copied().collect();
        let visits = self.visits();
        let mut owner = vec![Vec::new(); self.crossings.len()];
        for (ci, vs) in visits.iter().enumerate() {
            for v in vs {
                owner[v.crossing].push(ci);
            }
        }
        let keep: Vec<bool> = owner.iter().map(|o| o.iter().all(|c| !drop.contains(c))).collect();
        let mut new_id = vec![usize::MAX; self.crossings.len()];
        let mut signs = Vec::new();
        for (c, &k) in keep.iter().enumerate() {
            if k {
                new_id[c] = signs.len();
                signs.push(self.crossings[c].sign);
            }
        }
        let mut comps = Vec::new();
        let mut placements = Vec::new();
        for (ci, comp) in self.components.iter().enumerate() {
            if drop.contains(&ci) {
                continue;
            }
            let vs: Vec<Visit> = visits[ci]
                .iter()
                .filter(|v| keep[v.crossing])
                .map(|v| Visit { crossing: new_id[v.crossing], over: v.over })
                .collect();
            placements.push(if comp.is_free_loop() { comp.placement } else { None });
            comps.push((comp.label.clone(), vs));
        }
        let mut d = LinkDiagram::from_visits(&signs, comps)?;
        for (ci, p) in placements.into_iter().enumerate() {
            if d.components[ci].is_free_loop() {
                let encloses_graph = p.is_some_and(|p| p.encloses_graph);
                d.components[ci].placement =
                    Some(LoopPlacement { host: LoopHost::Unplaced, encloses_graph });
            }
        }
        Ok(d)
    }

    /// Labelling-independent form: each connected part relabelled from every
    /// possible starting arc, keeping the least code; parts sorted; free loops counted.
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.crossings.len();
        let mut part_of = vec![usize::MAX; n];
        let mut parts = Vec::new();
        let by_arc = self.arc_slots();
        for s in 0..n {
            if part_of[s] != usize::MAX {
                continue;
            }
            let id = parts.len();
            let mut stack = vec![s];
            part_of[s] = id;
            let mut members = Vec::new();
            while let Some(c) = stack.pop() {
                members.push(c);
                for &a in &self.crossings[c].arcs {
                    for d in &by_arc[&a] {
                        if part_of[d.crossing] == usize::MAX {
                            part_of[d.crossing] = id;
                            stack.push(d.crossing);
                        }
                    }
                }
            }
            parts.push(members);
        }
        let mut codes: Vec<Vec<(u32, u32, u32, u32, i8)>> = parts
            .iter()
            .map(|members| {
                let mut arcs: Vec<u32> = members
                    .iter()
                    .flat_map(|&c| self.crossings[c].arcs)
                    .collect();
                arcs.sort_unstable();
                arcs.dedup();
                arcs.iter()
                    .map(|&a| self.relabel_from(a, members.len()))
                    .min()
                    .unwrap()
            })
            .collect();
        codes.sort();
        CanonicalForm { parts: codes, free_loops: self.free_loop_count() }
    }

    fn arc_slots(&self) -> BTreeMap<u32, Vec<Dart>> {
        let mut m: BTreeMap<u32, Vec<Dart>> = BTreeMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for s in 0..4u8 {
                m.entry(x.arcs[s as usize]).or_default().push(Dart::new(c, s));
            }
        }
        m
    }

    fn relabel_from(&self, start: u32, part_size: usize) -> Vec<(u32, u32, u32, u32, i8)> {
        let ends = self.arc_ends();
        let mut label: BTreeMap<u32, u32> = BTreeMap::new();
        let mut order: Vec<usize> = Vec::new();
        let mut seen_x = BTreeSet::new();
        let mut pending = Some(start);
        let mut cursor = 0;
        while let Some(a0) = pending.take() {
            let mut a = a0;
            while !label.contains_key(&a) {
                let next_label = label.len() as u32 + 1;
                label.insert(a, next_label);
                let head = ends[&a].0.unwrap();
                if seen_x.insert(head.crossing) {
                    order.push(head.crossing);
                }
                let x = &self.crossings[head.crossing];
                a = x.arcs[x.pass_through(head.slot) as usize];
            }
            // next component: first discovered crossing with an unlabelled arc,
            // entered through its lowest unlabelled incoming slot
            while cursor < order.len() && pending.is_none() {
                let x = &self.crossings[order[cursor]];
                pending = (0..4u8)
                    .filter(|&s| x.is_incoming(s))
                    .map(|s| x.arcs[s as usize])
                    .find(|b| !label.contains_key(b));
                if pending.is_none() {
                    cursor += 1;
                }
            }
        }
        debug_assert_eq!(order.len(), part_size);
        let mut code: Vec<(u32, u32, u32, u32, i8)> = order
            .iter()
            .map(|&c| {
                let x = &self.crossings[c];
                let l = |k: usize| label[&x.arcs[k]];
                (l(0), l(1), l(2), l(3), x.sign)
            })
            .collect();
        code.sort_unstable();
        code
    }
}

/// Output of [`LinkDiagram::canonical_form`]; equal forms mean equal diagrams up to relabelling.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub parts: Vec<Vec<(u32, u32, u32, u32, i8)>>,
    pub free_loops: usize,
}

#[cfg(test)]
mod tests;
