//! Table data: links up to 11 crossings whose complements are complements of
//! complexity-one fundamental shadow links, and the count argument separating
//! the families from the Whitehead chains of volume (c+d)·v₈.

use serde::Serialize;

use super::families::Family;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FslRow {
    pub fsl: &'static str,
    /// LinkInfo names with homeomorphic complements.
    pub links: Vec<&'static str>,
    /// The k = 1 family member realizing this row, when there is one.
    pub family: Option<Family>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogNote {
    pub link: &'static str,
    pub status: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableCatalog {
    pub rows: Vec<FslRow>,
    /// All links of volume 2v₈ found this way, in table order.
    pub volume_two_v8: Vec<&'static str>,
    pub notes: Vec<CatalogNote>,
}

impl TableCatalog {
    pub fn row(&self, fsl: &str) -> Option<&FslRow> {
        self.rows.iter().find(|r| r.fsl == fsl)
    }
}

pub fn catalog_table_links() -> TableCatalog {
    let row = |fsl, links: &[&'static str], family| FslRow { fsl, links: links.to_vec(), family };
    TableCatalog {
        rows: vec![
            row("FSL1", &["L10n32"], None),
            row("FSL2", &["L10n36"], None),
            row("FSL3", &["L6a4", "L9n25", "L11n287", "L11n378"], Some(Family::L)),
            row("FSL4", &["L10n84", "L10n87"], None),
            row("FSL5", &["L8n5", "L9n26", "L10n70", "L11n376", "L11n385"], Some(Family::J)),
            row("FSL6", &["L8n7", "L10n97", "L10n105", "L10n108"], Some(Family::K)),
        ],
        volume_two_v8: vec![
            "L6a4", "L8n5", "L8n7", "L9n25", "L9n26", "L10n32", "L10n36", "L10n70", "L10n84", "L10n87",
            "L10n97", "L10n105", "L10n108", "L11n287", "L11n376", "L11n378", "L11n385",
        ],
        notes: vec![
            CatalogNote { link: "L10n59", status: "open: numerically not an FSL complement, unproven" },
            CatalogNote { link: "L11n387", status: "candidate, unverified (complexity two)" },
            CatalogNote { link: "L11n388", status: "candidate, unverified (complexity two)" },
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WhiteheadCheck {
    pub k: usize,
    /// Components of a Whitehead chain with one belt and volume 2k·v₈.
    pub whitehead_components: usize,
    /// Most components any family link of complexity k has.
    pub max_family_components: usize,
    pub distinct: bool,
}

/// Whether component counts alone separate complexity-k family links from
/// single-belt Whitehead chains of the same volume.
pub fn whitehead_distinct(k: usize) -> WhiteheadCheck {
    let whitehead_components = 2 * k + 1;
    let max_family_components = k + 4;
    WhiteheadCheck { k, whitehead_components, max_family_components, distinct: whitehead_components > max_family_components }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let c = catalog_table_links();
        assert_eq!(c.row("FSL1").unwrap().links, ["L10n32"]);
        assert_eq!(c.row("FSL3").unwrap().links, ["L6a4", "L9n25", "L11n287", "L11n378"]);
        assert_eq!(c.row("FSL6").unwrap().links, ["L8n7", "L10n97", "L10n105", "L10n108"]);
        let mut all: Vec<_> = c.rows.iter().flat_map(|r| r.links.clone()).collect();
        let mut listed = c.volume_two_v8.clone();
        all.sort();
        listed.sort();
        assert_eq!(all, listed);
        assert_eq!(listed.len(), 17);
    }

    #[test]
    fn family_rows() {
        let c = catalog_table_links();
        let fam: Vec<_> = c.rows.iter().filter_map(|r| r.family.map(|f| (r.fsl, f))).collect();
        assert_eq!(fam, [("FSL3", Family::L), ("FSL5", Family::J), ("FSL6", Family::K)]);
        assert!(c.notes.iter().any(|n| n.link == "L10n59"));
    }

    #[test]
    fn whitehead_boundary() {
        assert!(!whitehead_distinct(3).distinct);
        let w = whitehead_distinct(4);
        assert!(w.distinct);
        assert_eq!((w.whitehead_components, w.max_family_components), (9, 8));
        assert!(whitehead_distinct(10).distinct);
    }
}
