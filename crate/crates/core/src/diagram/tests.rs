use super::*;
use crate::braid::{closure_component_count, generators_all_present, permutation_of};
use proptest::prelude::*;

fn w(n: u32, l: &[i32]) -> BraidWord {
    BraidWord::new(n, l.to_vec()).unwrap()
}

// Faces and connected parts computed straight from the PD, without the graph module.
fn pd_euler(d: &LinkDiagram) -> (usize, usize, usize, usize) {
    let xs = d.crossings();
    let mut at: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, x) in xs.iter().enumerate() {
        for s in 0..4 {
            at.entry(x.arcs[s]).or_default().push((c, s));
        }
    }
    let other = |c: usize, s: usize| {
        let v = &at[&xs[c].arcs[s]];
        if v[0] == (c, s) { v[1] } else { v[0] }
    };
    let mut seen = BTreeSet::new();
    let mut f = 0;
    for c in 0..xs.len() {
        for s in 0..4 {
            if seen.contains(&(c, s)) {
                continue;
            }
            f += 1;
            let mut cur = (c, s);
            while seen.insert(cur) {
                let (c2, s2) = other(cur.0, cur.1);
                cur = (c2, (s2 + 3) % 4);
            }
        }
    }
    let mut parent: Vec<usize> = (0..xs.len()).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for v in at.values() {
        let (a, b) = (find(&mut parent, v[0].0), find(&mut parent, v[1].0));
        parent[a] = b;
    }
    let parts = (0..xs.len()).filter(|&i| find(&mut parent, i) == i).count();
    (xs.len(), 2 * xs.len(), f, parts)
}

// Linking numbers read off the braid: half the signed crossings between two cycles.
fn braid_linking(b: &BraidWord) -> BTreeMap<(usize, usize), i32> {
    let cycles = permutation_of(b).cycles();
    let mut cycle_of = vec![0; b.strands() as usize + 1];
    for (k, c) in cycles.iter().enumerate() {
        for &p in c {
            cycle_of[p] = k;
        }
    }
    // which starting strand is at each position
    let mut occ: Vec<usize> = (0..=b.strands() as usize).collect();
    let mut lk = BTreeMap::new();
    for &e in b.letters() {
        let i = e.unsigned_abs() as usize;
        let (a, c) = (cycle_of[occ[i]], cycle_of[occ[i + 1]]);
        if a != c {
            *lk.entry((a.min(c), a.max(c))).or_insert(0) += e.signum();
        }
        occ.swap(i, i + 1);
    }
    lk
}

fn pd_linking(d: &LinkDiagram) -> BTreeMap<(usize, usize), i32> {
    let visits = d.visits();
    let mut owner: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (ci, vs) in visits.iter().enumerate() {
        for v in vs {
            owner.entry(v.crossing).or_default().push(ci);
        }
    }
    let mut lk = BTreeMap::new();
    for (c, o) in owner {
        if o[0] != o[1] {
            *lk.entry((o[0].min(o[1]), o[0].max(o[1]))).or_insert(0) += d.crossings()[c].sign as i32;
        }
    }
    lk
}

#[test]
fn closure_examples() {
    let d = closure_diagram(&w(2, &[1, 1]));
    assert_eq!(d.crossing_count(), 2);
    // the closure of σ1² is the Hopf link: two components, as the postcondition demands
    assert_eq!(d.component_count(), 2);
    let d = closure_diagram(&w(3, &[1, -2, 1, -2, 1, -2]));
    assert_eq!((d.crossing_count(), d.component_count()), (6, 3));
    let d = closure_diagram(&BraidWord::identity(2));
    assert_eq!((d.crossing_count(), d.component_count(), d.free_loop_count()), (0, 2, 2));
    let d = closure_diagram(&w(2, &[1]));
    assert_eq!((d.crossing_count(), d.component_count()), (1, 1));
    assert_eq!(d.to_pd_text(), "X[2,2,1,1,+]\n");
    d.validate().unwrap();
}

#[test]
fn closure_signs_follow_letters() {
    let b = w(4, &[1, -2, 3, 3, -1, 2]);
    let d = closure_diagram(&b);
    let signs: Vec<i8> = d.crossings().iter().map(|x| x.sign).collect();
    assert_eq!(signs, vec![1, -1, 1, 1, -1, 1]);
}

#[test]
fn braided_link_examples() {
    let d = braided_link(&crate::braid::make_bk(1).unwrap());
    assert_eq!(d.component_count(), 4);
    assert_eq!(d.crossing_count(), 4 + 6);
    assert_eq!(d.components().last().unwrap().label, "axis");
    let h = braided_link(&BraidWord::identity(1));
    assert_eq!((h.component_count(), h.crossing_count()), (2, 2));
    assert_eq!(pd_linking(&h)[&(0, 1)], 2);
    let d2 = braided_link(&crate::braid::make_bk(2).unwrap());
    assert_eq!(d2.component_count(), 6);
    // the axis links every strand once
    let lk = pd_linking(&d2);
    for c in 0..5 {
        assert_eq!(lk[&(c, 5)], 2, "component {c}");
    }
}

#[test]
fn trefoil_graph() {
    let g = project_to_graph(&closure_diagram(&w(2, &[1, 1, 1]))).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (3, 6));
    let fs = faces(&g).unwrap();
    assert_eq!(fs.len(), 5);
    assert!(fs.euler_verify);
    let fs = faces(&project_to_graph(&closure_diagram(&w(2, &[1, 1]))).unwrap()).unwrap();
    assert_eq!(fs.len(), 4);
}

#[test]
fn front_strand_faces() {
    // σ1σ1⁻¹σ1⁻¹ shifted into B3: strand 1 is a crossingless loop around the graph
    let b = w(2, &[1, -1, -1]).shifted(1);
    let d = closure_diagram(&b);
    let g = project_to_graph(&d).unwrap();
    assert_eq!(g.vertex_count(), 3);
    let fs = faces(&g).unwrap();
    assert_eq!((fs.vertices, fs.edges, fs.len()), (3, 7, 6));
    assert!(fs.euler_verify);
    assert_eq!(fs.faces_not_touching_loop(0).len(), 4);

    let fs1 = faces(&project_to_graph(&closure_diagram(&w(2, &[1]).shifted(1))).unwrap()).unwrap();
    assert_eq!((fs1.vertices, fs1.edges, fs1.len()), (1, 3, 4));
}

#[test]
fn empty_and_disconnected() {
    assert_eq!(
        project_to_graph(&closure_diagram(&BraidWord::identity(3))).unwrap_err(),
        Error::EmptyDiagram
    );
    let g = project_to_graph(&closure_diagram(&w(4, &[1, 3]))).unwrap();
    assert_eq!(faces(&g).unwrap_err(), Error::DisconnectedGraph(2));
}

fn brute_force_valid_trees(g: &PlanarGraph4V, verts: &[usize]) -> Vec<BTreeSet<usize>> {
    let fs = faces(g).unwrap();
    let vs: BTreeSet<usize> = verts.iter().copied().collect();
    let edges: Vec<usize> = (0..g.edge_count()).collect();
    let need = vs.len().saturating_sub(1);
    let mut out = Vec::new();
    for mask in 0u32..(1 << edges.len()) {
        if mask.count_ones() as usize != need {
            continue;
        }
        let chosen: Vec<usize> = edges.iter().copied().filter(|&e| mask >> e & 1 == 1).collect();
        let ok = chosen.iter().all(|&e| {
            let (a, b) = g.endpoints(e);
            let [p, q] = g.edge_darts(e);
            vs.contains(&a) && vs.contains(&b) && fs.dart_face[p] != fs.outer && fs.dart_face[q] != fs.outer
        });
        if !ok {
            continue;
        }
        let mut parent: BTreeMap<usize, usize> = vs.iter().map(|&v| (v, v)).collect();
        fn find(p: &mut BTreeMap<usize, usize>, i: usize) -> usize {
            let j = p[&i];
            if j == i { i } else { let r = find(p, j); p.insert(i, r); r }
        }
        let mut acyclic = true;
        for &e in &chosen {
            let (a, b) = g.endpoints(e);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                acyclic = false;
                break;
            }
            parent.insert(ra, rb);
        }
        if acyclic {
            out.push(chosen.into_iter().collect());
        }
    }
    out
}

#[test]
fn tree_on_cycle_graph() {
    for k in 2..=6 {
        let d = closure_diagram(&BraidWord::new(2, vec![1; k]).unwrap());
        let g = project_to_graph(&d).unwrap();
        let verts: Vec<usize> = (0..k).collect();
        let t = maximal_tree(&g, &verts).unwrap();
        assert_eq!(t.len(), k - 1);
        let fs = faces(&g).unwrap();
        // the innermost region is the k-gon that does not border the outer face
        let tree = dual_tree(&g, &fs);
        let inner = (0..fs.len())
            .find(|&f| fs.faces[f].darts.len() == k && tree.dist[f] == Some(2))
            .unwrap();
        // every tree edge bounds the innermost region
        for &e in &t {
            let [p, q] = g.edge_darts(e);
            assert!(fs.dart_face[p] == inner || fs.dart_face[q] == inner);
        }
        assert!(brute_force_valid_trees(&g, &verts).contains(&t.iter().copied().collect()));
        let path = dual_shortest_path(&g, &fs, inner).unwrap();
        assert_eq!(path.len(), 2);
    }
}

#[test]
fn tree_single_vertex_and_sublink_graph() {
    let g = project_to_graph(&closure_diagram(&w(2, &[1]))).unwrap();
    assert!(maximal_tree(&g, &[0]).unwrap().is_empty());
    let g = project_to_graph(&closure_diagram(&w(2, &[1, -1, -1]).shifted(1))).unwrap();
    let t = maximal_tree(&g, &[0, 1, 2]).unwrap();
    assert_eq!(t.len(), 2);
    assert!(brute_force_valid_trees(&g, &[0, 1, 2]).contains(&t.iter().copied().collect()));
}

#[test]
fn no_valid_tree_is_reported() {
    // with two strands every edge at position 1 touches the outer face and
    // a single crossing pair cannot be joined through the inner edges alone
    let g = project_to_graph(&closure_diagram(&w(3, &[1, 2]))).unwrap();
    let trees = brute_force_valid_trees(&g, &[0, 1]);
    let got = maximal_tree(&g, &[0, 1]);
    match got {
        Ok(t) => assert!(trees.contains(&t.into_iter().collect())),
        Err(e) => {
            assert_eq!(e, Error::NoValidTree);
            assert!(trees.is_empty());
        }
    }
}

#[test]
fn dual_path_adjacent_face() {
    let g = project_to_graph(&closure_diagram(&w(2, &[1, 1, 1]))).unwrap();
    let fs = faces(&g).unwrap();
    let t = dual_tree(&g, &fs);
    for f in 0..fs.len() {
        let p = dual_shortest_path(&g, &fs, f).unwrap();
        assert_eq!(p.len(), t.dist[f].unwrap());
        assert_eq!(*p.faces.last().unwrap(), fs.outer);
        for (i, &e) in p.edges.iter().enumerate() {
            let [a, b] = g.edge_darts(e);
            let pair = BTreeSet::from([fs.dart_face[a], fs.dart_face[b]]);
            assert_eq!(pair, BTreeSet::from([p.faces[i], p.faces[i + 1]]));
        }
        if t.dist[f] == Some(1) {
            assert_eq!(p.len(), 1);
        }
    }
}

#[test]
fn pd_text_round_trip_examples() {
    let d = closure_diagram(&w(3, &[1]));
    assert_eq!(d.to_pd_text(), "X[2,2,1,1,+]\nU[2]\n");
    let back = LinkDiagram::from_pd_text(&d.to_pd_text()).unwrap();
    assert_eq!(back.to_pd_text(), d.to_pd_text());
    assert!(LinkDiagram::from_pd_text("X[1,2,3,4,+]\n").is_err());
    assert!(LinkDiagram::from_pd_text("Y[1]\n").is_err());
    assert!(LinkDiagram::from_pd_text("X[1,2,2,1,*]\n").is_err());
}

#[test]
fn removal_and_canonical_form() {
    // deleting the axis from a braided link gives back the closure
    let b = w(3, &[1, 1, -2, 1]);
    let bl = braided_link(&b);
    let axis = bl.component_index("axis").unwrap();
    let back = bl.remove_components(&[axis]).unwrap();
    back.validate().unwrap();
    assert_eq!(back.canonical_form(), closure_diagram(&b).canonical_form());
    assert_ne!(closure_diagram(&w(2, &[1, 1])).canonical_form(), closure_diagram(&w(2, &[-1, -1])).canonical_form());
}

fn arb_braid(max_n: u32, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (1..=max_n).prop_flat_map(move |n| {
        let letter = if n > 1 {
            (1..n as i32, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i }).boxed()
        } else {
            Just(1).boxed()
        };
        let len = if n > 1 { max_len } else { 0 };
        proptest::collection::vec(letter, 0..=len).prop_map(move |l| BraidWord::new(n, l).unwrap())
    })
}

proptest! {
    #[test]
    fn generated_diagrams_are_sound(b in arb_braid(6, 16)) {
        for d in [closure_diagram(&b), braided_link(&b)] {
            d.validate().unwrap();
            let (v, e, f, parts) = pd_euler(&d);
            if v > 0 {
                prop_assert_eq!(v as i64 - e as i64 + f as i64, 2 * parts as i64);
            }
        }
        let d = closure_diagram(&b);
        prop_assert_eq!(d.crossing_count(), b.len());
        prop_assert_eq!(d.component_count(), closure_component_count(&b));
        prop_assert_eq!(pd_linking(&d), braid_linking(&b));
        let bl = braided_link(&b);
        prop_assert_eq!(bl.component_count(), closure_component_count(&b) + 1);
        prop_assert_eq!(bl.crossing_count(), b.len() + 2 * b.strands() as usize);
    }

    #[test]
    fn front_strand_face_counts(b in arb_braid(6, 16)) {
        prop_assume!(generators_all_present(&b) && !b.is_empty());
        let k = b.len();
        let g = project_to_graph(&closure_diagram(&b.shifted(1))).unwrap();
        let fs = faces(&g).unwrap();
        prop_assert!(fs.euler_verify);
        prop_assert_eq!(fs.edges, 2 * k + 1);
        prop_assert_eq!(fs.len(), k + 3);
        prop_assert_eq!(fs.faces_not_touching_loop(0).len(), k + 1);
        let verts: Vec<usize> = (0..k).collect();
        if let Ok(t) = maximal_tree(&g, &verts) {
            prop_assert_eq!(t.len(), k - 1);
            for &e in &t {
                let [p, q] = g.edge_darts(e);
                prop_assert!(fs.dart_face[p] != fs.outer && fs.dart_face[q] != fs.outer);
            }
        }
    }

    #[test]
    fn pd_round_trip(b in arb_braid(6, 16)) {
        let d = closure_diagram(&b);
        let text = d.to_pd_text();
        let back = LinkDiagram::from_pd_text(&text).unwrap();
        prop_assert_eq!(back.to_pd_text(), text);
        prop_assert_eq!(back.canonical_form(), d.canonical_form());
    }

    #[test]
    fn canonical_form_ignores_labels(b in arb_braid(5, 10), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let d = closure_diagram(&b);
        let n = 2 * d.crossing_count() as u32;
        let mut relabel: Vec<u32> = (1..=n).collect();
        relabel.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let mut text = String::new();
        for x in d.crossings() {
            let a = x.arcs.map(|a| relabel[a as usize - 1]);
            text += &format!("X[{},{},{},{},{}]\n", a[0], a[1], a[2], a[3], if x.sign > 0 { '+' } else { '-' });
        }
        let shuffled = LinkDiagram::from_pd_text(&text).unwrap();
        prop_assert_eq!(shuffled.canonical_form().parts, d.canonical_form().parts);
    }
}

#[test]
fn unoriented_pd_keeps_oriented_input() {
    for w in ["B3: 1 -2 1 -2", "B2: 1 1 1", "B4: 1 2 3 -1 2"] {
        let d = closure_diagram(&w.parse().unwrap());
        let xs: Vec<[u32; 4]> = d.crossings().iter().map(|x| x.arcs).collect();
        let (e, map) = LinkDiagram::from_unoriented_pd(&xs).unwrap();
        assert_eq!(e.canonical_form(), d.canonical_form(), "{w}");
        let signs: Vec<i8> = d.crossings().iter().map(|x| x.sign).collect();
        let signs2: Vec<i8> = e.crossings().iter().map(|x| x.sign).collect();
        assert_eq!(signs, signs2);
        assert_eq!(map.len(), xs.len() * 2);
    }
}

#[test]
fn unoriented_pd_reorients_reversed_strands() {
    // the trefoil with one crossing listed from the other under-end
    let d = closure_diagram(&"B2: 1 1 1".parse().unwrap());
    let mut xs: Vec<[u32; 4]> = d.crossings().iter().map(|x| x.arcs).collect();
    xs[0] = [xs[0][2], xs[0][3], xs[0][0], xs[0][1]];
    let (e, _) = LinkDiagram::from_unoriented_pd(&xs).unwrap();
    e.validate().unwrap();
    assert_eq!(e.crossing_count(), 3);
    assert_eq!(e.component_count(), 1);
    assert!(LinkDiagram::from_unoriented_pd(&[[1, 2, 3, 4]]).is_err());
}
