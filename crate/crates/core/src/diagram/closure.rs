use super::{Dart, LinkDiagram, LoopHost, LoopPlacement, Visit};
use crate::braid::{permutation_of, BraidWord};

// Slot of each corner of the crossing for letter sign s; corners are
// top-left, top-right, bottom-left, bottom-right of the braid picture.
fn slot_tl(s: i32) -> u8 {
    if s > 0 { 0 } else { 1 }
}
fn slot_bl(s: i32) -> u8 {
    if s > 0 { 1 } else { 2 }
}
fn slot_br(s: i32) -> u8 {
    if s > 0 { 2 } else { 3 }
}

/// Closure of `b`: strands run down, closing arcs pass to the right.
///
/// A positive letter is a right-handed crossing, so the strand coming from
/// position i+1 passes over. Components follow the permutation's cycles and
/// positions with no crossings become free loops.
pub fn closure_diagram(b: &BraidWord) -> LinkDiagram {
    let n = b.strands() as usize;
    let letters = b.letters();
    let perm = permutation_of(b);
    let mut comps = Vec::new();
    let mut loop_of_pos = vec![None; n + 1];
    for (ci, cycle) in perm.cycles().iter().enumerate() {
        let label = format!("K{}", ci + 1);
        let start = cycle[0];
        let mut visits = Vec::new();
        let mut pos = start;
        loop {
            for (t, &e) in letters.iter().enumerate() {
                let i = e.unsigned_abs() as usize;
                if pos == i || pos == i + 1 {
                    let from_right = pos == i + 1;
                    // positive: right strand over; negative: left strand over
                    let over = (e > 0) == from_right;
                    visits.push(Visit { crossing: t, over });
                    pos = if from_right { i } else { i + 1 };
                }
            }
            if pos == start {
                break;
            }
        }
        if visits.is_empty() {
            loop_of_pos[start] = Some(ci);
        }
        comps.push((label, visits));
    }
    let signs: Vec<i8> = letters.iter().map(|e| e.signum() as i8).collect();
    let mut d = LinkDiagram::from_visits(&signs, comps).expect("closure visits are consistent");

    let first_at = |p: usize| {
        letters
            .iter()
            .position(|&e| {
                let i = e.unsigned_abs() as usize;
                p == i || p == i + 1
            })
    };
    let involved: Vec<usize> = (1..=n).filter(|&p| first_at(p).is_some()).collect();
    if let Some(&lo) = involved.first() {
        let t = first_at(lo).unwrap();
        // upward along the leftmost strand: the outer face is on its left
        d.set_outer_dart(Some(Dart::new(t, slot_tl(letters[t]))));
    }
    for p in 1..=n {
        let Some(ci) = loop_of_pos[p] else { continue };
        let left = involved.iter().rev().find(|&&q| q < p).copied();
        let placement = match left {
            Some(q) if q + 1 == p => {
                let t = first_at(q).unwrap();
                let i = letters[t].unsigned_abs() as usize;
                let s = letters[t].signum();
                let slot = if q == i { slot_bl(s) } else { slot_br(s) };
                LoopPlacement { host: LoopHost::Face(Dart::new(t, slot)), encloses_graph: false }
            }
            Some(_) => LoopPlacement {
                host: LoopHost::Loop(loop_of_pos[p - 1].unwrap()),
                encloses_graph: false,
            },
            None => {
                let host = match involved.first() {
                    Some(&lo) if lo == p + 1 => LoopHost::Face(d.outer_dart().unwrap()),
                    Some(_) => LoopHost::Loop(loop_of_pos[p + 1].unwrap()),
                    None if p > 1 => LoopHost::Loop(loop_of_pos[p - 1].unwrap()),
                    None => LoopHost::Unplaced,
                };
                LoopPlacement { host, encloses_graph: !involved.is_empty() }
            }
        };
        d.set_placement(ci, placement);
    }
    d.set_braid(Some(b.clone()));
    d
}

/// Closure of `b` together with its braid axis.
///
/// The axis enters as an extra strand on the right that runs over every strand
/// to the far left and back under all of them, i.e. the closure of
/// b·σ_n⋯σ_1σ_1⋯σ_n in B_{n+1}. It adds 2n crossings.
pub fn braided_link(b: &BraidWord) -> LinkDiagram {
    let n = b.strands() as i32;
    let mut letters = b.letters().to_vec();
    letters.extend((1..=n).rev());
    letters.extend(1..=n);
    let bb = BraidWord::new(n as u32 + 1, letters).expect("axis letters in range");
    let mut d = closure_diagram(&bb);
    let last = d.component_count() - 1;
    d.set_label(last, "axis");
    d
}
