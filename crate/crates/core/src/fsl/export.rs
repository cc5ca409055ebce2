//! JSON records consumed by the external volume checker.

use serde::{Deserialize, Serialize};

use super::augment::{AugmentedLink, Framing, SurgeryPresentation};
use super::catalog::{catalog_table_links, TableCatalog};
use super::families::FamilyLink;
use super::volume::v8_f64;
use crate::braid::BraidWord;
use crate::diagram::{braided_link, closure_diagram, LinkDiagram};

pub const SCHEMA_VERSION: u32 = 1;

/// One link. `pd` holds the crossing records; crossingless components are only
/// counted in `unknots`. `components` and `framings` run over all components in
/// diagram order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportRecord {
    pub schema_version: u32,
    pub name: String,
    pub braid: Option<String>,
    pub pd: Vec<[u32; 4]>,
    pub signs: Vec<i8>,
    pub components: Vec<String>,
    pub framings: Vec<Framing>,
    pub unknots: usize,
    pub complexity: Option<usize>,
    pub predicted_volume: Option<f64>,
}

impl ExportRecord {
    fn new(name: &str, d: &LinkDiagram, framing: impl Fn(usize, &str) -> Framing) -> Self {
        ExportRecord {
            schema_version: SCHEMA_VERSION,
            name: name.to_string(),
            braid: d.braid().map(|b| b.to_string()),
            pd: d.crossings().iter().map(|x| x.arcs).collect(),
            signs: d.crossings().iter().map(|x| x.sign).collect(),
            components: d.components().iter().map(|c| c.label.clone()).collect(),
            framings: d.components().iter().enumerate().map(|(i, c)| framing(i, &c.label)).collect(),
            unknots: d.free_loop_count(),
            complexity: None,
            predicted_volume: None,
        }
    }

    fn with_volume(mut self, k: usize) -> Self {
        self.complexity = Some(k);
        self.predicted_volume = Some(2.0 * k as f64 * v8_f64());
        self
    }

    /// The augmented link in S³: every component is part of the link.
    pub fn from_augmented(name: &str, a: &AugmentedLink) -> Self {
        let mut r = Self::new(name, &a.diagram, |_, l| {
            if a.added_components.iter().any(|x| x == l) { Framing::Drilled } else { Framing::Plain }
        })
        .with_volume(a.complexity);
        r.braid = Some(a.base.to_string());
        r
    }

    pub fn from_surgery(name: &str, s: &SurgeryPresentation) -> Self {
        Self::new(name, &s.diagram, |i, _| s.framing[i]).with_volume(s.complexity)
    }

    pub fn from_family(f: &FamilyLink) -> Self {
        let name = format!("{}{}", f.family, f.k);
        Self::new(&name, &f.diagram, |_, l| {
            if f.drilled.iter().any(|x| x == l) { Framing::Drilled } else { Framing::Plain }
        })
        .with_volume(f.k)
    }

    /// Plain closure of `b`.
    pub fn from_closure(name: &str, b: &BraidWord) -> Self {
        Self::new(name, &closure_diagram(b), |_, _| Framing::Plain)
    }

    /// Braided link of `b`; pass `k` when the volume 2k·v₈ is known.
    pub fn from_braided_link(name: &str, b: &BraidWord, k: Option<usize>) -> Self {
        let d = braided_link(b);
        let r = Self::new(name, &d, |_, _| Framing::Plain);
        let mut r = match k {
            Some(k) => r.with_volume(k),
            None => r,
        };
        r.braid = Some(b.to_string());
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogExport {
    pub schema_version: u32,
    pub name: &'static str,
    pub catalog: TableCatalog,
}

pub fn catalog_export() -> CatalogExport {
    CatalogExport { schema_version: SCHEMA_VERSION, name: "table-links", catalog: catalog_table_links() }
}
