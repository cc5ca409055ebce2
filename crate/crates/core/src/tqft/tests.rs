use num_complex::Complex64;
use proptest::prelude::*;

use super::engine::to_c64;
use super::*;
use crate::braid::{make_bk, BraidWord};
use crate::diagram::{braided_link, closure_diagram};
use crate::error::Error;

const TOL: f64 = 1e-9;

fn lv(r: u32) -> Level {
    Level::new(r).unwrap()
}

fn bw(n: u32, l: &[i32]) -> BraidWord {
    BraidWord::new(n, l.to_vec()).unwrap()
}

fn matmul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn max_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn ident(n: usize) -> Vec<Vec<Complex64>> {
    (0..n)
        .map(|i| (0..n).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect()
}

/// Plain-trig twist eigenvalue for the positive letter.
fn lambda(r: u32, a: u32, b: u32, c: u32) -> Complex64 {
    let e = (c * (c + 2)) as f64 - (a * (a + 2)) as f64 - (b * (b + 2)) as f64;
    let z = Complex64::from_polar(1.0, std::f64::consts::PI * e / 2.0 / r as f64);
    if ((a + b - c) / 2) % 2 == 1 {
        -z
    } else {
        z
    }
}

fn qint(r: u32, n: i64) -> f64 {
    let t = 2.0 * std::f64::consts::PI / r as f64;
    (t * n as f64).sin() / t.sin()
}

#[test]
fn level_validation() {
    assert_eq!(Level::new(4), Err(Error::InvalidLevel(4)));
    assert_eq!(Level::new(1), Err(Error::InvalidLevel(1)));
    assert_eq!(lv(7).colors(), vec![0, 2, 4]);
    assert_eq!(lv(3).colors(), vec![0]);
}

#[test]
fn quantum_integers() {
    for r in [3, 5, 7, 31] {
        assert!((quantum_integer(1, lv(r)) - 1.0).abs() < 1e-15);
        assert_eq!(quantum_integer(0, lv(r)), 0.0);
    }
    let direct = (4.0 * std::f64::consts::PI / 5.0).sin() / (2.0 * std::f64::consts::PI / 5.0).sin();
    assert!((quantum_integer(2, lv(5)) - direct).abs() < 1e-15);
    assert!((direct - 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
}

#[test]
fn admissibility_rules() {
    assert!(admissible(0, 0, 0, lv(3)));
    assert!(admissible(2, 2, 2, lv(5)));
    for r in [5u32, 7, 9] {
        for a in 0..=r {
            for b in 0..=r {
                for c in 0..=r {
                    let parity = (a + b + c) % 2 == 0;
                    let tri = c <= a + b && a <= b + c && b <= a + c;
                    let bound = a + b + c <= 2 * (r - 2);
                    assert_eq!(admissible(a, b, c, lv(r)), parity && tri && bound, "({a},{b},{c}) r={r}");
                }
            }
        }
    }
    assert!(!admissible(2, 2, 6, lv(7)));
}

#[test]
fn fusion_basis_dimensions() {
    // three punctures colored 2 at r = 7, root 2: x_2 ∈ {0, 2, 4}
    let f = FusionBasis::new(&[2, 2, 2], 2, lv(7));
    assert_eq!(f.dim(), 3);
    assert!(f.labels.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(FusionBasis::new(&[2], 0, lv(5)).dim(), 0);
    assert_eq!(FusionBasis::new(&[0, 0, 0], 0, lv(3)).dim(), 1);
}

#[test]
fn recoupling_matrices_invert() {
    // the mirror recoupling {c b j; a d i} inverts {a b i; c d j}
    let rec = recoupling::Recoupling::new(lv(9), 128);
    let us = lv(9).colors();
    for &a in &us {
        for &b in &us {
            for &c in &us {
                for &d in &us {
                    for &j in &us {
                        for &j2 in &us {
                            let mut s = 0.0;
                            for &i in &us {
                                s += rec.sixj(c, b, j2, a, d, i).to_f64() * rec.sixj(a, b, i, c, d, j).to_f64();
                            }
                            let ok = admissible(a, b, j, lv(9)) && admissible(j, c, d, lv(9));
                            let want = if j == j2 && ok { 1.0 } else { 0.0 };
                            assert!((s - want).abs() < 1e-9, "{a} {b} {c} {d} {j} {j2}: {s}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn single_crossing_is_twist_eigenvalue() {
    for r in [5, 7, 9] {
        for a in lv(r).colors() {
            for t in lv(r).colors() {
                let c = Coloring::new(vec![a, a], t);
                if !admissible(a, a, t, lv(r)) {
                    assert_eq!(rep_matrix(&bw(2, &[1]), lv(r), &c).unwrap_err(), Error::EmptyBlockSpace);
                    continue;
                }
                let m = rep_matrix(&bw(2, &[1]), lv(r), &c).unwrap().to_complex64();
                assert!((m[0][0] - lambda(r, a, a, t)).norm() < TOL);
                let tr = to_c64(&rep_trace(&bw(2, &[1, 1]), lv(r), &c).unwrap());
                assert!((tr - lambda(r, a, a, t).powi(2)).norm() < TOL);
            }
        }
    }
}

#[test]
fn identity_and_inverse() {
    let c = Coloring::new(vec![2, 2, 2], 2);
    let m = rep_matrix(&BraidWord::identity(3), lv(7), &c).unwrap();
    assert_eq!(max_diff(&m.to_complex64(), &ident(3)), 0.0);
    let t = to_c64(&rep_trace(&BraidWord::identity(3), lv(5), &Coloring::new(vec![0, 0, 0], 0)).unwrap());
    assert!((t - 1.0).norm() < TOL);
    let m = rep_matrix(&bw(3, &[2, -2]), lv(7), &c).unwrap().to_complex64();
    assert!(max_diff(&m, &ident(3)) < TOL);
}

#[test]
fn coloring_must_follow_cycles() {
    let e = rep_matrix(&bw(2, &[1]), lv(7), &Coloring::new(vec![0, 2], 2)).unwrap_err();
    assert!(matches!(e, Error::InvalidColoring(_)));
    let e = rep_matrix(&bw(2, &[1, 1]), lv(7), &Coloring::new(vec![0, 6], 2)).unwrap_err();
    assert!(matches!(e, Error::InvalidColoring(_)));
    assert!(rep_matrix(&bw(2, &[1, 1]), lv(7), &Coloring::new(vec![0, 2], 2)).is_ok());
}

#[test]
fn colorings_are_lexicographic_and_cycle_constant() {
    let b = bw(3, &[1]);
    let cs = colorings(&b, lv(7));
    assert_eq!(cs.len(), 9 * 3);
    assert!(cs.iter().all(|c| c.strands[0] == c.strands[1]));
    let keys: Vec<(u32, u32, u32)> = cs.iter().map(|c| (c.strands[0], c.strands[2], c.root)).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn oracle_unknots_and_unlinks() {
    let unknot = closure_diagram(&BraidWord::identity(1));
    for r in [5, 7, 9] {
        for a in lv(r).colors() {
            let v = tl_bracket_oracle(&unknot, lv(r), &[a]).unwrap();
            let want = if a % 2 == 0 { qint(r, a as i64 + 1) } else { -qint(r, a as i64 + 1) };
            assert!((v - want).norm() < TOL, "r={r} a={a}: {v}");
        }
    }
    let unlink = closure_diagram(&BraidWord::identity(2));
    let v = tl_bracket_oracle(&unlink, lv(5), &[0, 0]).unwrap();
    assert!((v - 1.0).norm() < TOL);
}

#[test]
fn oracle_width_limit_and_input_checks() {
    let hopf = closure_diagram(&bw(2, &[1, 1]));
    let e = tl_bracket_oracle(&hopf, lv(13), &[10, 2]).unwrap_err();
    assert_eq!(e, Error::WidthLimit { width: 12, limit: 10 });
    let big = OracleConfig { width_limit: 12 };
    assert!(tl_bracket_oracle_with(&hopf, lv(13), &[10, 2], &big).is_ok());
    assert!(matches!(tl_bracket_oracle(&hopf, lv(5), &[2]), Err(Error::InvalidColoring(_))));
    let (bare, _) = crate::diagram::LinkDiagram::from_unoriented_pd(&[[1, 4, 2, 3], [3, 2, 4, 1]]).unwrap();
    assert!(matches!(tl_bracket_oracle(&bare, lv(5), &[0, 0]), Err(Error::MalformedDiagram(_))));
}

#[test]
fn hopf_pairing_three_ways() {
    // closed form, oracle, and Σ_t Δ_t Tr ρ over the σ₁² route
    let r = 7;
    let hopf = closure_diagram(&bw(2, &[1, 1]));
    let cfg = OracleConfig { width_limit: 12 };
    for a in lv(r).colors() {
        for b in lv(r).colors() {
            let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
            let closed = sign * qint(r, ((a + 1) * (b + 1)) as i64);
            let oracle = tl_bracket_oracle_with(&hopf, lv(r), &[a, b], &cfg).unwrap();
            let mut route = Complex64::new(0.0, 0.0);
            for t in lv(r).colors() {
                let tr = to_c64(&rep_trace(&bw(2, &[1, 1]), lv(r), &Coloring::new(vec![a, b], t)).unwrap());
                let delta = if t % 2 == 0 { qint(r, t as i64 + 1) } else { -qint(r, t as i64 + 1) };
                route += tr * delta;
            }
            assert!((oracle - closed).norm() < TOL, "({a},{b}): {oracle} vs {closed}");
            assert!((route - closed).norm() < TOL, "({a},{b}): {route} vs {closed}");
        }
    }
}

fn traces_agree(b: &BraidWord, r: u32, cfg: &OracleConfig) {
    let engine = Engine::new(lv(r), 128);
    for (c, want) in oracle_traces(b, lv(r), cfg).unwrap() {
        let got = to_c64(&engine.rep_trace(b, &c).unwrap());
        assert!((got - want).norm() < TOL, "{b} r={r} {c:?}: {got} vs {want}");
    }
}

#[test]
fn engine_traces_match_oracle() {
    let cfg = OracleConfig { width_limit: 12 };
    traces_agree(&BraidWord::identity(1), 5, &cfg);
    traces_agree(&BraidWord::identity(1), 7, &cfg);
    traces_agree(&bw(2, &[1, 1]), 5, &cfg);
    traces_agree(&bw(2, &[1, 1]), 7, &cfg);
    traces_agree(&bw(2, &[1, 1, 1]), 5, &cfg);
    traces_agree(&bw(3, &[1, -2, 1]), 5, &cfg);
    traces_agree(&make_bk(1).unwrap(), 5, &cfg);
}

#[test]
fn tv_examples() {
    for r in [5, 7, 9] {
        // product of a disk with a circle: Σ d² = number of colorings with c = t
        let tv = tv_braided_link(&BraidWord::identity(1), lv(r)).unwrap().to_f64();
        assert!((tv - ((r - 1) / 2) as f64).abs() < TOL);
        let cfg = OracleConfig { width_limit: 12 };
        assert!((oracle_tv(&BraidWord::identity(1), lv(r), &cfg).unwrap() - tv).abs() < TOL);
    }
    let b1 = make_bk(1).unwrap();
    let tv = tv_braided_link(&b1, lv(5)).unwrap().to_f64();
    let o = oracle_tv(&b1, lv(5), &OracleConfig::default()).unwrap();
    assert!((tv - o).abs() < TOL * tv.max(1.0), "{tv} vs {o}");
}

#[test]
fn braided_link_axis_is_last_component() {
    let d = braided_link(&make_bk(1).unwrap());
    assert_eq!(d.components().last().unwrap().label, "axis");
    assert_eq!(d.component_count(), 4);
}

#[test]
fn slope_series_reports_target() {
    let s = slope_series(&make_bk(1).unwrap(), &[5, 7, 9]).unwrap();
    assert_eq!(s.rows.len(), 3);
    assert!((s.target.unwrap() - 7.32772475341775).abs() < 1e-10);
    for row in &s.rows {
        let tv = row.tv;
        assert!(tv > 0.0);
        let slope = 2.0 * std::f64::consts::PI / row.r as f64 * tv.ln();
        assert!((row.slope.unwrap() - slope).abs() < 1e-12);
    }
    assert_eq!(s.rows[0].tail_min, s.rows.iter().filter_map(|r| r.slope).reduce(f64::min));
    assert!(slope_series(&BraidWord::identity(1), &[5, 7]).unwrap().target.is_none());
    assert!(slope_series(&BraidWord::identity(1), &[7, 5]).is_err());
    let s2 = slope_series(&make_bk(2).unwrap(), &[5]).unwrap();
    assert!((s2.target.unwrap() - 2.0 * 7.32772475341775).abs() < 1e-10);
}

fn word(n: u32, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..n as i32, any::<bool>()), 0..=max_len)
        .prop_map(move |l| BraidWord::new(n, l.into_iter().map(|(i, s)| if s { i } else { -i }).collect()).unwrap())
}

/// A uniform coloring with a nonempty block space, picked by `pick`.
fn uniform(n: u32, r: u32, pick: usize) -> Coloring {
    let l = lv(r);
    let cs: Vec<Coloring> = l
        .colors()
        .into_iter()
        .flat_map(|a| l.colors().into_iter().map(move |t| Coloring::new(vec![a; n as usize], t)))
        .filter(|c| FusionBasis::new(&c.strands, c.root, l).dim() > 0)
        .collect();
    cs[pick % cs.len()].clone()
}

fn mat(e: &Engine, b: &BraidWord, c: &Coloring) -> Vec<Vec<Complex64>> {
    e.rep_matrix(b, c).unwrap().to_complex64()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn representation_property(r in prop::sample::select(vec![5u32, 7]),
                               (n, u, v) in (2u32..=4).prop_flat_map(|n| (Just(n), word(n, 6), word(n, 6))), pick in 0usize..64) {
        let e = Engine::new(lv(r), 128);
        let c = uniform(n, r, pick);
        let uv = mat(&e, &u.concat(&v), &c);
        prop_assert!(max_diff(&uv, &matmul(&mat(&e, &u, &c), &mat(&e, &v, &c))) < TOL);
        let id = mat(&e, &u.concat(&u.inverse()), &c);
        prop_assert!(max_diff(&id, &ident(id.len())) < TOL);
    }

    #[test]
    fn braid_relations(r in prop::sample::select(vec![5u32, 7]), i in 1i32..=2, s in prop::sample::select(vec![1i32, -1]), pick in 0usize..64) {
        let e = Engine::new(lv(r), 128);
        let c = uniform(4, r, pick);
        let lhs = mat(&e, &bw(4, &[s * i, s * (i + 1), s * i]), &c);
        let rhs = mat(&e, &bw(4, &[s * (i + 1), s * i, s * (i + 1)]), &c);
        prop_assert!(max_diff(&lhs, &rhs) < TOL);
        let far = mat(&e, &bw(4, &[1, 3 * s]), &c);
        let far2 = mat(&e, &bw(4, &[3 * s, 1]), &c);
        prop_assert!(max_diff(&far, &far2) < TOL);
    }

    #[test]
    fn conjugation_invariance(b in word(4, 6), w in word(4, 4), r in prop::sample::select(vec![5u32, 7]), pick in 0usize..64) {
        let e = Engine::new(lv(r), 128);
        let c = uniform(4, r, pick);
        let conj = w.concat(&b).concat(&w.inverse());
        let t1 = to_c64(&e.rep_trace(&conj, &c).unwrap());
        let t2 = to_c64(&e.rep_trace(&b, &c).unwrap());
        prop_assert!((t1 - t2).norm() < TOL);
    }

    #[test]
    fn tv_is_one_at_level_three(b in word(4, 10)) {
        let tv = tv_braided_link(&b, lv(3)).unwrap();
        prop_assert_eq!(tv.to_f64(), 1.0);
    }

    #[test]
    fn tv_nonnegative_and_reproducible(b in word(3, 6), r in prop::sample::select(vec![5u32, 7])) {
        let e = Engine::new(lv(r), 128);
        let t1 = e.tv_braided_link(&b).unwrap();
        let t2 = Engine::new(lv(r), 128).tv_braided_link(&b).unwrap();
        prop_assert!(t1 >= 0);
        prop_assert_eq!(t1, t2);
    }
}
