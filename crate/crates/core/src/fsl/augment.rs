//! Augmenting a braid closure into a fundamental shadow link.
//!
//! A new unknot C encloses the closure, and every face other than the outer one
//! gets an unknot that runs from inside the face along the dual tree, over every
//! strand on its way out and over C, then comes back under all of them. Each such
//! circle is a thin band, so it encircles exactly the strands it crosses.

use std::cmp::Reverse;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::volume::v8_f64;
use crate::braid::{generators_all_present, missing_generator, BraidWord};
use crate::diagram::{
    closure_diagram, dual_tree, faces, path_in_tree, project_to_graph, LinkDiagram, Visit,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Part {
    Upper,
    Lower,
}

/// One side of a circle's band: (circle index, side).
type Strand = (usize, Part);

/// Result of augmenting an arbitrary connected diagram.
#[derive(Debug, Clone)]
pub(crate) struct Augmentation {
    pub diagram: LinkDiagram,
    pub axis: usize,
    pub circles: Vec<usize>,
    /// For each circle, the base edges it crosses on its way out (innermost first).
    pub encircled_edges: Vec<Vec<usize>>,
}

/// Adds the enclosing unknot `C` and one band circle per inner face of `base`.
///
/// Base components keep their labels and order; C comes next, then the circles
/// `R1, R2, …` in face order.
pub(crate) fn augment_diagram(base: &LinkDiagram) -> Result<Augmentation> {
    if base.free_loop_count() > 0 {
        return Err(Error::Domain("augmentation needs a diagram without crossingless loops".into()));
    }
    let g = project_to_graph(base)?;
    let fs = faces(&g)?;
    let tree = dual_tree(&g, &fs);
    let outer = fs.outer;
    let inner: Vec<usize> = (0..fs.len()).filter(|&f| f != outer).collect();
    let circle_of: HashMap<usize, usize> = inner.iter().enumerate().map(|(i, &f)| (f, i)).collect();

    let child_dart = |f: usize| tree.parent[f].and_then(|p| p.child_dart).expect("inner face has a parent edge");
    let child_by_dart: HashMap<usize, usize> = inner.iter().map(|&f| (child_dart(f), f)).collect();
    let child_by_edge: HashMap<usize, usize> =
        inner.iter().map(|&f| (tree.parent[f].unwrap().edge, f)).collect();

    // Bands met along the face cycle after `skip` darts, children's bands reversed.
    let gather = |f: usize, start: usize, s: &[Vec<Strand>]| {
        let darts = &fs.faces[f].darts;
        let m = darts.len();
        let mut l = Vec::new();
        for j in 0..m {
            let d = darts[(start + j) % m];
            if let Some(&c) = child_by_dart.get(&g.mate(d)) {
                l.extend(s[c].iter().rev().copied());
            }
        }
        l
    };

    // order of bands along each child dart, deepest faces first
    let mut by_depth = inner.clone();
    by_depth.sort_by_key(|&f| (Reverse(tree.dist[f]), f));
    let mut s: Vec<Vec<Strand>> = vec![Vec::new(); fs.len()];
    for &f in &by_depth {
        let dc = child_dart(f);
        let pos = fs.faces[f].darts.iter().position(|&d| d == dc).unwrap();
        let mut l = gather(f, pos + 1, &s);
        let ci = circle_of[&f];
        l.push((ci, Part::Upper));
        l.push((ci, Part::Lower));
        l.reverse();
        s[f] = l;
    }
    let mut c_order = gather(outer, 0, &s);
    c_order.reverse();

    let mut signs: Vec<i8> = base.crossings().iter().map(|x| x.sign).collect();
    let mut on_edge: HashMap<(usize, Strand), usize> = HashMap::new();
    for &f in &inner {
        let sign = if g.is_forward(child_dart(f)) { 1 } else { -1 };
        for &st in &s[f] {
            on_edge.insert((f, st), signs.len());
            signs.push(sign);
        }
    }
    let mut on_c: HashMap<Strand, usize> = HashMap::new();
    for &st in &c_order {
        on_c.insert(st, signs.len());
        signs.push(1);
    }

    let mut comps = Vec::new();
    let base_visits = base.visits();
    for (ci, comp) in base.components().iter().enumerate() {
        let mut vs = Vec::new();
        for (v, &a) in base_visits[ci].iter().zip(&comp.arcs) {
            vs.push(*v);
            let Some(&f) = child_by_edge.get(&(a as usize - 1)) else { continue };
            let mut seq = s[f].clone();
            if !g.is_forward(child_dart(f)) {
                seq.reverse();
            }
            vs.extend(seq.iter().map(|&st| Visit { crossing: on_edge[&(f, st)], over: st.1 == Part::Lower }));
        }
        comps.push((comp.label.clone(), vs));
    }
    let axis = comps.len();
    comps.push((
        "C".to_string(),
        c_order.iter().map(|&st| Visit { crossing: on_c[&st], over: st.1 == Part::Lower }).collect(),
    ));
    let mut circles = Vec::new();
    let mut encircled_edges = Vec::new();
    for (ci, &f) in inner.iter().enumerate() {
        let path = path_in_tree(&tree, f)?;
        let crossed = &path.faces[..path.faces.len() - 1];
        let mut vs: Vec<Visit> = crossed
            .iter()
            .map(|&x| Visit { crossing: on_edge[&(x, (ci, Part::Upper))], over: true })
            .collect();
        vs.push(Visit { crossing: on_c[&(ci, Part::Upper)], over: true });
        vs.push(Visit { crossing: on_c[&(ci, Part::Lower)], over: false });
        vs.extend(
            crossed.iter().rev().map(|&x| Visit { crossing: on_edge[&(x, (ci, Part::Lower))], over: false }),
        );
        circles.push(comps.len());
        encircled_edges.push(path.edges.clone());
        comps.push((format!("R{}", ci + 1), vs));
    }
    let diagram = LinkDiagram::from_visits(&signs, comps)?;
    diagram.validate()?;
    let check = faces(&project_to_graph(&diagram)?)?;
    if !check.euler_verify {
        return Err(Error::MalformedDiagram("augmented diagram fails the Euler check".into()));
    }
    Ok(Augmentation { diagram, axis, circles, encircled_edges })
}

/// The augmented link containing the closure of `base`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugmentedLink {
    pub base: BraidWord,
    pub diagram: LinkDiagram,
    /// Label of the enclosing unknot C (the front strand of the shifted braid).
    pub axis_component: String,
    /// Labels of the encircling unknots, one per face not touching C.
    pub added_components: Vec<String>,
    pub complexity: usize,
    pub predicted_volume: f64,
}

impl AugmentedLink {
    /// Component indices of C and the added circles.
    pub fn extra_indices(&self) -> Vec<usize> {
        let mut out = vec![self.diagram.component_index(&self.axis_component).unwrap()];
        out.extend(self.added_components.iter().map(|l| self.diagram.component_index(l).unwrap()));
        out
    }

    /// The diagram with C and the circles deleted.
    pub fn sublink(&self) -> Result<LinkDiagram> {
        self.diagram.remove_components(&self.extra_indices())
    }
}

fn check_input(b: &BraidWord) -> Result<()> {
    if let Some(i) = missing_generator(b) {
        return Err(Error::MissingGenerator(i));
    }
    debug_assert!(generators_all_present(b));
    if b.is_empty() {
        return Err(Error::Domain("augmentation needs at least one crossing".into()));
    }
    Ok(())
}

/// Augments the closure of `b` into a link of volume 2k·v₈, k = length of `b`.
pub fn augment_to_fsl(b: &BraidWord) -> Result<AugmentedLink> {
    check_input(b)?;
    let aug = augment_diagram(&closure_diagram(b))?;
    let labels = |i: usize| aug.diagram.components()[i].label.clone();
    let k = b.len();
    Ok(AugmentedLink {
        base: b.clone(),
        axis_component: labels(aug.axis),
        added_components: aug.circles.iter().map(|&i| labels(i)).collect(),
        diagram: aug.diagram,
        complexity: k,
        predicted_volume: 2.0 * k as f64 * v8_f64(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Framing {
    /// 0-framed surgery curve.
    Zero,
    /// Unknot drilled out; its tubular neighbourhood becomes a cusp.
    Drilled,
    /// Ordinary link component.
    Plain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurgeryPresentation {
    pub diagram: LinkDiagram,
    pub framing: Vec<Framing>,
    pub complexity: usize,
}

impl SurgeryPresentation {
    pub fn zero_framed(&self) -> Vec<usize> {
        (0..self.framing.len()).filter(|&i| self.framing[i] == Framing::Zero).collect()
    }
}

/// The augmentation's circles as 0-framed surgery curves; every other component is plain.
pub fn fsl_surgery_presentation(b: &BraidWord) -> Result<SurgeryPresentation> {
    let a = augment_to_fsl(b)?;
    let framing = a
        .diagram
        .components()
        .iter()
        .map(|c| if a.added_components.contains(&c.label) { Framing::Zero } else { Framing::Plain })
        .collect();
    Ok(SurgeryPresentation { diagram: a.diagram, framing, complexity: a.complexity })
}
