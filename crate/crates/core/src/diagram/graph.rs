//! The 4-valent planar graph under a diagram, its faces and dual graph.
//!
//! Faces are traced on darts: from a dart, follow its edge to the far slot and
//! leave through the next slot clockwise. The traced face lies on the left.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Dart, LinkDiagram, LoopHost};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphLoop {
    pub component: usize,
    pub host: LoopHost,
    pub encloses_graph: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarGraph4V {
    signs: Vec<i8>,
    mate: Vec<usize>,
    edge_of: Vec<usize>,
    edge_darts: Vec<[usize; 2]>,
    forward: Vec<bool>,
    loops: Vec<GraphLoop>,
    outer_dart: Option<usize>,
}

impl PlanarGraph4V {
    pub fn vertex_count(&self) -> usize {
        self.signs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_darts.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn loops(&self) -> &[GraphLoop] {
        &self.loops
    }

    /// The dart at the other end of this dart's edge.
    pub fn mate(&self, d: usize) -> usize {
        self.mate[d]
    }

    pub fn next_in_face(&self, d: usize) -> usize {
        let m = Dart::from_index(self.mate[d]);
        Dart::new(m.crossing, (m.slot + 3) % 4).index()
    }

    /// Edge id of a dart; edge `e` carries PD arc `e + 1`.
    pub fn edge_of(&self, d: usize) -> usize {
        self.edge_of[d]
    }

    /// The two darts of an edge: first the one leaving its tail, then the reverse.
    pub fn edge_darts(&self, e: usize) -> [usize; 2] {
        self.edge_darts[e]
    }

    /// True if travelling along the dart follows the component orientation.
    pub fn is_forward(&self, d: usize) -> bool {
        self.forward[d]
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let [a, b] = self.edge_darts[e];
        (a / 4, b / 4)
    }

    fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut parts = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            parts += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for slot in 0..4 {
                    let w = self.mate[4 * v + slot] / 4;
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        parts
    }
}

/// Each crossing becomes a signed vertex; slot order gives the rotation system.
pub fn project_to_graph(d: &LinkDiagram) -> Result<PlanarGraph4V> {
    let xs = d.crossings();
    if xs.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let n_edges = 2 * xs.len();
    let mut ends: Vec<Vec<usize>> = vec![Vec::new(); n_edges];
    for (c, x) in xs.iter().enumerate() {
        for s in 0..4u8 {
            let a = x.arcs[s as usize] as usize;
            if a == 0 || a > n_edges {
                return Err(Error::MalformedDiagram(format!("arc {a} out of range")));
            }
            ends[a - 1].push(Dart::new(c, s).index());
        }
    }
    let mut mate = vec![0; 4 * xs.len()];
    let mut edge_of = vec![0; 4 * xs.len()];
    let mut forward = vec![false; 4 * xs.len()];
    let mut edge_darts = Vec::with_capacity(n_edges);
    for (e, ds) in ends.iter().enumerate() {
        let &[p, q] = ds.as_slice() else {
            return Err(Error::MalformedDiagram(format!("arc {} is not used twice", e + 1)));
        };
        mate[p] = q;
        mate[q] = p;
        edge_of[p] = e;
        edge_of[q] = e;
        let out = |i: usize| {
            let dd = Dart::from_index(i);
            !xs[dd.crossing].is_incoming(dd.slot)
        };
        forward[p] = out(p);
        forward[q] = out(q);
        if forward[p] == forward[q] {
            return Err(Error::MalformedDiagram(format!("arc {} is not oriented", e + 1)));
        }
        edge_darts.push(if forward[p] { [p, q] } else { [q, p] });
    }
    let loop_index: BTreeMap<usize, usize> = d
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_free_loop())
        .enumerate()
        .map(|(j, (ci, _))| (ci, j))
        .collect();
    let loops = d
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_free_loop())
        .map(|(ci, c)| {
            let p = c.placement.unwrap_or(super::LoopPlacement {
                host: LoopHost::Unplaced,
                encloses_graph: false,
            });
            let host = match p.host {
                LoopHost::Loop(other) => match loop_index.get(&other) {
                    Some(&j) => LoopHost::Loop(j),
                    None => LoopHost::Unplaced,
                },
                h => h,
            };
            GraphLoop { component: ci, host, encloses_graph: p.encloses_graph }
        })
        .collect();
    Ok(PlanarGraph4V {
        signs: xs.iter().map(|x| x.sign).collect(),
        mate,
        edge_of,
        edge_darts,
        forward,
        loops,
        outer_dart: d.outer_dart().map(Dart::index),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Darts with this face on their left, in boundary order; empty for loop faces.
    pub darts: Vec<usize>,
    /// Set for the extra face contributed by a crossingless loop.
    pub loop_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    pub dart_face: Vec<usize>,
    pub loop_face: Vec<usize>,
    pub loop_host_face: Vec<Option<usize>>,
    pub outer: usize,
    pub vertices: usize,
    /// Graph edges plus one per crossingless loop.
    pub edges: usize,
    pub euler_verify: bool,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// A loop touches its own face and the face it sits in.
    pub fn touches_loop(&self, f: usize, j: usize) -> bool {
        self.loop_face[j] == f || self.loop_host_face[j] == Some(f)
    }

    pub fn faces_not_touching_loop(&self, j: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| !self.touches_loop(f, j)).collect()
    }

    /// Faces across each edge of `f`, as (face, edge id, dart of `f`) sorted by face then edge.
    /// Loop boundaries count as edges numbered after the graph edges.
    pub fn neighbors(&self, g: &PlanarGraph4V, f: usize) -> Vec<(usize, usize, Option<usize>)> {
        let mut out = BTreeSet::new();
        for &d in &self.faces[f].darts {
            let other = self.dart_face[g.mate[d]];
            if other != f {
                out.insert((other, g.edge_of[d], Some(d)));
            }
        }
        for j in 0..self.loop_face.len() {
            let e = g.edge_count() + j;
            if let Some(h) = self.loop_host_face[j] {
                if self.loop_face[j] == f {
                    out.insert((h, e, None));
                } else if h == f {
                    out.insert((self.loop_face[j], e, None));
                }
            }
        }
        out.into_iter().collect()
    }
}

/// Enumerates faces; crossingless loops each add one edge and one face.
pub fn faces(g: &PlanarGraph4V) -> Result<FaceSet> {
    let parts = g.component_count();
    if parts != 1 {
        return Err(Error::DisconnectedGraph(parts));
    }
    let nd = 4 * g.vertex_count();
    let mut dart_face = vec![usize::MAX; nd];
    let mut faces = Vec::new();
    for s in 0..nd {
        if dart_face[s] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut darts = Vec::new();
        let mut d = s;
        while dart_face[d] == usize::MAX {
            dart_face[d] = id;
            darts.push(d);
            d = g.next_in_face(d);
        }
        faces.push(Face { darts, loop_index: None });
    }
    let graph_faces = faces.len();
    let outer = match g.outer_dart {
        Some(d) => dart_face[d],
        None => (0..graph_faces)
            .max_by_key(|&f| (faces[f].darts.len(), std::cmp::Reverse(f)))
            .unwrap(),
    };
    let loop_face: Vec<usize> = (0..g.loops.len()).map(|j| graph_faces + j).collect();
    for j in 0..g.loops.len() {
        faces.push(Face { darts: Vec::new(), loop_index: Some(j) });
    }
    let loop_host_face = g
        .loops
        .iter()
        .map(|l| match l.host {
            LoopHost::Face(d) => Some(dart_face[d.index()]),
            LoopHost::Loop(j) => Some(loop_face[j]),
            LoopHost::Unplaced => None,
        })
        .collect();
    let vertices = g.vertex_count();
    let edges = g.edge_count() + g.loops.len();
    let euler_verify = vertices as i64 - edges as i64 + faces.len() as i64 == 2;
    Ok(FaceSet { faces, dart_face, loop_face, loop_host_face, outer, vertices, edges, euler_verify })
}

/// Link from a face towards the outer face in the breadth-first dual tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParentLink {
    pub face: usize,
    pub edge: usize,
    /// Dart of the crossed edge with the child face on its left (None for loop edges).
    pub child_dart: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualTree {
    pub root: usize,
    pub dist: Vec<Option<usize>>,
    pub parent: Vec<Option<ParentLink>>,
}

impl DualTree {
    pub fn children(&self, f: usize) -> Vec<usize> {
        (0..self.parent.len())
            .filter(|&c| self.parent[c].is_some_and(|p| p.face == f))
            .collect()
    }
}

/// Breadth-first tree of the dual graph rooted at the outer face. Each face's
/// parent is the lowest-index neighbour one step closer, via its lowest-index edge.
pub fn dual_tree(g: &PlanarGraph4V, fs: &FaceSet) -> DualTree {
    let n = fs.len();
    let mut dist = vec![None; n];
    dist[fs.outer] = Some(0);
    let mut queue = VecDeque::from([fs.outer]);
    let nbrs: Vec<_> = (0..n).map(|f| fs.neighbors(g, f)).collect();
    while let Some(f) = queue.pop_front() {
        let df = dist[f].unwrap();
        for &(h, _, _) in &nbrs[f] {
            if dist[h].is_none() {
                dist[h] = Some(df + 1);
                queue.push_back(h);
            }
        }
    }
    let parent = (0..n)
        .map(|f| {
            let df = dist[f]?;
            if df == 0 {
                return None;
            }
            nbrs[f]
                .iter()
                .find(|&&(h, _, _)| dist[h] == Some(df - 1))
                .map(|&(face, edge, child_dart)| ParentLink { face, edge, child_dart })
        })
        .collect();
    DualTree { root: fs.outer, dist, parent }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPath {
    /// From the start face to the outer face.
    pub faces: Vec<usize>,
    /// Edge crossed between consecutive faces.
    pub edges: Vec<usize>,
}

impl DualPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Shortest dual path from `from` to the outer face, following the dual tree.
pub fn dual_shortest_path(g: &PlanarGraph4V, fs: &FaceSet, from: usize) -> Result<DualPath> {
    path_in_tree(&dual_tree(g, fs), from)
}

pub(crate) fn path_in_tree(t: &DualTree, from: usize) -> Result<DualPath> {
    if from >= t.parent.len() || t.dist[from].is_none() {
        return Err(Error::Domain(format!("face {from} is not connected to the outer face")));
    }
    let mut faces = vec![from];
    let mut edges = Vec::new();
    let mut f = from;
    while let Some(p) = t.parent[f] {
        edges.push(p.edge);
        faces.push(p.face);
        f = p.face;
    }
    Ok(DualPath { faces, edges })
}

/// Spanning tree on `restrict_to` using only edges between those vertices and
/// not bordering the outer face. Grown from the lowest vertex, lowest edge first.
pub fn maximal_tree(g: &PlanarGraph4V, restrict_to: &[usize]) -> Result<Vec<usize>> {
    let fs = faces(g)?;
    let verts: BTreeSet<usize> = restrict_to.iter().copied().collect();
    if verts.iter().any(|&v| v >= g.vertex_count()) {
        return Err(Error::Domain("vertex outside the graph".into()));
    }
    let Some(&start) = verts.first() else {
        return Ok(Vec::new());
    };
    let eligible: Vec<usize> = (0..g.edge_count())
        .filter(|&e| {
            let (a, b) = g.endpoints(e);
            let [p, q] = g.edge_darts(e);
            a != b
                && verts.contains(&a)
                && verts.contains(&b)
                && fs.dart_face[p] != fs.outer
                && fs.dart_face[q] != fs.outer
        })
        .collect();
    let mut in_tree = BTreeSet::from([start]);
    let mut tree = Vec::new();
    loop {
        let pick = eligible.iter().copied().find(|&e| {
            let (a, b) = g.endpoints(e);
            in_tree.contains(&a) != in_tree.contains(&b)
        });
        match pick {
            Some(e) => {
                let (a, b) = g.endpoints(e);
                in_tree.insert(a);
                in_tree.insert(b);
                tree.push(e);
            }
            None => break,
        }
    }
    if in_tree.len() != verts.len() {
        return Err(Error::NoValidTree);
    }
    Ok(tree)
}
