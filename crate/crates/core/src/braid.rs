//! Braid words in B_n, their permutations, and the explicit braid families.
//!
//! A letter `e` is the generator σ_|e| with the sign of `e`. Words are read
//! left to right, which is top to bottom in a braid picture.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidBraid("strand count must be positive".into()));
        }
        for &e in &letters {
            let i = e.unsigned_abs();
            if e == 0 || i >= strands {
                return Err(Error::InvalidBraid(format!(
                    "letter {e} outside [1, {}] in B{strands}",
                    strands - 1
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: u32) -> Self {
        assert!(strands > 0, "B_0 does not exist");
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|e| -e).collect(),
        }
    }

    /// Concatenation `self · other`; the result lives in the larger braid group.
    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands.max(other.strands), letters }
    }

    /// σ_i ↦ σ_{i+by} in B_{n+by}: adds `by` strands on the left.
    pub fn shifted(&self, by: u32) -> Self {
        BraidWord {
            strands: self.strands + by,
            letters: self
                .letters
                .iter()
                .map(|&e| e.signum() * (e.abs() + by as i32))
                .collect(),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for e in &self.letters {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        let lead = s.len() - s.trim_start().len();
        let rest = &s[lead..];
        if !rest.starts_with('B') {
            return Err(err(lead, "expected 'B'"));
        }
        let colon = rest
            .find(':')
            .ok_or_else(|| err(lead + rest.len(), "expected ':' after strand count"))?;
        let count = &rest[1..colon];
        if count.is_empty() || !count.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err(lead + 1, "strand count must be a positive integer"));
        }
        let strands: u32 = count
            .parse()
            .map_err(|_| err(lead + 1, "strand count out of range"))?;
        if strands == 0 {
            return Err(err(lead + 1, "strand count must be positive"));
        }
        let body_start = lead + colon + 1;
        let mut letters = Vec::new();
        let mut pos = body_start;
        for tok in s[body_start..].split_inclusive(char::is_whitespace) {
            let t = tok.trim_end();
            if !t.is_empty() {
                let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
                if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(err(pos, "expected a signed integer"));
                }
                let e: i32 = t.parse().map_err(|_| err(pos, "letter out of range"))?;
                if e == 0 || e.unsigned_abs() >= strands {
                    return Err(err(pos, "generator index outside [1, n-1]"));
                }
                letters.push(e);
            }
            pos += tok.len();
        }
        Ok(BraidWord { strands, letters })
    }
}

/// A permutation of {1..n}, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Domain("image is not a bijection".into()));
            }
        }
        Ok(Permutation { image })
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    /// 0-based image of 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycles on 1-based points, each starting at its least element, sorted by it.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.image.len()];
        let mut out = Vec::new();
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i + 1);
                i = self.image[i];
            }
            out.push(cyc);
        }
        out
    }
}

/// Strand starting at position p (0-based) ends at position `perm.apply(p)`.
pub fn permutation_of(b: &BraidWord) -> Permutation {
    let n = b.strands as usize;
    // occupant[pos] = strand currently at pos
    let mut occupant: Vec<usize> = (0..n).collect();
    for &e in &b.letters {
        let i = e.unsigned_abs() as usize;
        occupant.swap(i - 1, i);
    }
    let mut image = vec![0; n];
    for (pos, &s) in occupant.iter().enumerate() {
        image[s] = pos;
    }
    Permutation { image }
}

pub fn is_pure(b: &BraidWord) -> bool {
    permutation_of(b).is_identity()
}

pub fn closure_component_count(b: &BraidWord) -> usize {
    permutation_of(b).cycles().len()
}

pub fn is_homogeneous(b: &BraidWord) -> bool {
    first_mixed_generator(b).is_none()
}

fn first_mixed_generator(b: &BraidWord) -> Option<u32> {
    let mut sign = vec![0i32; b.strands as usize];
    for &e in &b.letters {
        let i = e.unsigned_abs() as usize;
        if sign[i] == 0 {
            sign[i] = e.signum();
        } else if sign[i] != e.signum() {
            return Some(i as u32);
        }
    }
    None
}

pub fn missing_generator(b: &BraidWord) -> Option<u32> {
    let mut seen = vec![false; b.strands as usize];
    for &e in &b.letters {
        seen[e.unsigned_abs() as usize] = true;
    }
    (1..b.strands).find(|&i| !seen[i as usize])
}

pub fn generators_all_present(b: &BraidWord) -> bool {
    missing_generator(b).is_none()
}

/// Genus and boundary count of the fiber surface Σ_{g,n}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberData {
    pub genus: u32,
    pub boundary: u32,
}

impl fmt::Display for FiberData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ_{{{},{}}}", self.genus, self.boundary)
    }
}

/// Fiber of the closure of a homogeneous braid: g = (2 + C − strands − components)/2.
pub fn seifert_genus(b: &BraidWord) -> Result<FiberData> {
    if let Some(i) = first_mixed_generator(b) {
        return Err(Error::NonHomogeneous(i));
    }
    if b.is_empty() {
        return Err(Error::Domain("seifert_genus needs a nonempty word".into()));
    }
    let comps = closure_component_count(b) as i64;
    let two_g = 2 + b.len() as i64 - b.strands as i64 - comps;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(Error::NonIntegerGenus(two_g));
    }
    Ok(FiberData { genus: (two_g / 2) as u32, boundary: comps as u32 })
}

// σ_hi σ_{hi-1} ... σ_{lo}
fn down(hi: i32, lo: i32) -> impl Iterator<Item = i32> {
    (lo..=hi).rev()
}

// σ_lo ... σ_hi
fn up(lo: i32, hi: i32) -> impl Iterator<Item = i32> {
    lo..=hi
}

/// σ_t σ_{t-1} ... σ_3 σ_2 σ_1² σ_2⁻¹ σ_3 ... σ_t
fn clasp1(top: i32) -> Vec<i32> {
    let mut w: Vec<i32> = down(top, 2).collect();
    w.extend([1, 1, -2]);
    w.extend(up(3, top));
    w
}

/// σ_t ... σ_3 σ_2² σ_3 ... σ_t
fn clasp2(top: i32) -> Vec<i32> {
    let mut w: Vec<i32> = down(top, 3).collect();
    w.extend([2, 2]);
    w.extend(up(3, top));
    w
}

/// σ_t ... σ_4 σ_3² σ_4 ... σ_t
fn clasp3(top: i32) -> Vec<i32> {
    let mut w: Vec<i32> = down(top, 4).collect();
    w.extend([3, 3]);
    w.extend(up(4, top));
    w
}

/// σ_t ... σ_3 σ_2² σ_3⁻¹ σ_4 ... σ_t
fn clasp2_twisted(top: i32) -> Vec<i32> {
    let mut w: Vec<i32> = down(top, 3).collect();
    w.extend([2, 2, -3]);
    w.extend(up(4, top));
    w
}

/// The monodromy braids b_k, transcribed from their product formulas.
///
/// For odd k ≥ 3 the formula opens with a lone σ_1, so those words are not pure.
pub fn make_bk(k: u32) -> Result<BraidWord> {
    if k == 0 {
        return Err(Error::Domain("b_k needs k >= 1".into()));
    }
    if k == 1 {
        return BraidWord::new(3, vec![-1, -1, 2, 2]);
    }
    let mut w = Vec::new();
    if k % 2 == 0 {
        let m = (k / 2) as i32;
        for i in 1..=m {
            w.extend(clasp1(2 * i + 1));
            w.extend(clasp2(2 * i + 2));
        }
    } else {
        let m = ((k + 1) / 2) as i32;
        w.push(1);
        w.extend(clasp1(3));
        for i in 2..=m {
            w.extend(clasp2(2 * i));
            w.extend(clasp1(2 * i + 1));
        }
    }
    BraidWord::new(k + 3, w)
}

/// Same letters, `p − 1` trivial strands appended on the right.
pub fn embed_with_trivial_strands(b: &BraidWord, p: u32) -> Result<BraidWord> {
    if p < 2 {
        return Err(Error::Domain("embedding needs p >= 2".into()));
    }
    Ok(BraidWord { strands: b.strands + p - 1, letters: b.letters.clone() })
}

fn omega9() -> Vec<i32> {
    let mut w = clasp3(4);
    w.extend(clasp2(5));
    w.extend(clasp1(6));
    w.extend(clasp2_twisted(7));
    w
}

/// The pure braids ω_m, m ≥ 4; ω_m has m − 1 strands.
pub fn make_omega(m: u32) -> Result<BraidWord> {
    match m {
        0..=3 => Err(Error::Domain("omega_m needs m >= 4".into())),
        4 => make_bk(1),
        5 | 7 => embed_with_trivial_strands(&make_omega(m - 1)?, 2),
        9 => BraidWord::new(8, omega9()),
        m if m % 2 == 0 => make_bk(m - 4),
        m => {
            let s = ((m - 7) / 2) as i32;
            let mut w = omega9();
            for i in 2..=s {
                w.extend(clasp3(4 + 2 * i));
                w.extend(clasp2_twisted(5 + 2 * i));
            }
            BraidWord::new(m - 1, w)
        }
    }
}

/// Homogeneous n-component braid L_{n,m} built on the Borromean braid (σ_2⁻¹σ_1)³.
///
/// Generator σ_i always carries sign (−1)^{i+1}. L_{5,m} adds σ_3² σ_4^{−2m} σ_3 σ_4⁻² σ_3;
/// L_{4,m} uses 2m − 1 negative crossings instead, closing strands 4, 5 into one
/// component. Each further component is clasped on as σ_n^{±2} · L_{n,m} · σ_n^{±2}.
pub fn make_lnm(n: u32, m: u32) -> Result<BraidWord> {
    if n < 4 || m < 1 {
        return Err(Error::Domain(format!("L_{{n,m}} needs n >= 4, m >= 1 (got n={n}, m={m})")));
    }
    let mut core: Vec<i32> = [-2, 1].repeat(3);
    core.extend([3, 3]);
    let twists = if n == 4 { 2 * m - 1 } else { 2 * m };
    core.extend(std::iter::repeat(-4).take(twists as usize));
    core.extend([3, -4, -4, 3]);
    let mut w = core;
    for j in 5..n {
        let g = if j % 2 == 1 { j as i32 } else { -(j as i32) };
        let mut next = vec![g, g];
        next.extend(w);
        next.extend([g, g]);
        w = next;
    }
    BraidWord::new(n.max(5), w)
}

/// One row of the monodromy table: a link, its braid, and its fiber surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedBraid {
    pub key: &'static str,
    pub link: &'static str,
    pub word: BraidWord,
    pub fiber: Option<FiberData>,
}

fn named(key: &'static str, link: &'static str, n: u32, w: &[i32], fib: Option<(u32, u32)>) -> NamedBraid {
    NamedBraid {
        key,
        link,
        word: BraidWord::new(n, w.to_vec()).expect("catalog word is valid"),
        fiber: fib.map(|(genus, boundary)| FiberData { genus, boundary }),
    }
}

/// The seven monodromy-table rows (in table order) followed by the six-strand closed braid.
pub fn named_constant_braid_list() -> Vec<NamedBraid> {
    vec![
        named("L6a4", "L6a4", 3, &[1, -2, 1, -2, 1, -2], Some((1, 3))),
        named("L6a4-mirror", "L6a4", 3, &[-1, 2, -1, 2, -1, 2], Some((1, 3))),
        named("L8n7", "L8n7", 4, &[1, -2, -2, 1, -3, -2, -2, -3], Some((1, 4))),
        named("L10n87", "L10n87", 3, &[1, 1, 1, 2, 2, 1, 1, 2, 2, 1], Some((3, 3))),
        named(
            "L10n97",
            "L10n97",
            4,
            &[-1, -1, -1, -2, -2, -1, -3, -2, -2, -3],
            Some((2, 4)),
        ),
        named(
            "L10n108",
            "L10n108",
            4,
            &[-1, -2, -1, -2, -1, -2, 3, -2, -2, 3],
            Some((2, 4)),
        ),
        named(
            "L11n385",
            "L11n385",
            4,
            &[-1, -2, -1, -2, -1, -2, 3, -2, -2, 3, -2],
            Some((3, 3)),
        ),
        named(
            "remark-closed-braid",
            "",
            6,
            &[
                4, 3, 2, 1, 1, 2, -3, 4, //
                5, 4, 3, 3, 4, 5, //
                1, 2, 3, 4, 5, 5, 4, 3, 2, 1,
            ],
            None,
        ),
    ]
}

pub fn named_constant_braids() -> BTreeMap<&'static str, BraidWord> {
    named_constant_braid_list()
        .into_iter()
        .map(|nb| (nb.key, nb.word))
        .collect()
}
