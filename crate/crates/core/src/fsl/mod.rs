//! Fundamental shadow link constructions.

mod augment;
mod catalog;
mod export;
mod families;
pub mod volume;

pub use augment::{augment_to_fsl, fsl_surgery_presentation, AugmentedLink, Framing, SurgeryPresentation};
pub use catalog::{catalog_table_links, whitehead_distinct, CatalogNote, FslRow, TableCatalog, WhiteheadCheck};
pub use export::{catalog_export, CatalogExport, ExportRecord, SCHEMA_VERSION};
pub use families::{half_twist, make_family, plat_chain, Family, FamilyLink};
pub use volume::{v8, v8_f64, v8_string};
