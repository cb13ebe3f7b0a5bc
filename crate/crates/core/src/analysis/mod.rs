//! Density maps, regularity, superimposable solutions and known-value tables.

mod density;
mod regularity;
mod superimpose;
mod tables;

pub use density::{density_export, density_map, DensityMap};
pub use regularity::{regularity_check, Regularity};
pub use superimpose::{find_superimposable, Superimposable};
pub use tables::{tables_report, CellDiff, TableCell, TableScope, TablesOptions, TablesReport};
