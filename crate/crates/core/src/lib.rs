//! Finite generation and FP_n decisions for coabelian kernels of pro-p
//! right-angled Artin groups, computed from graphs, characters and flag
//! complex homology over F_p.

pub mod catalog;
pub mod cli;
pub mod coabelian;
pub mod error;
pub mod flag_homology;
pub mod fpcheck;
pub mod gog;
pub mod graph;
pub mod linalg;
pub mod random;
pub mod report;
pub mod verify;

pub use coabelian::{fg_coabelian, fpn_coabelian, is_full, CoabelianSpec, ZeroPattern};
pub use error::{Error, Result};
pub use flag_homology::{flag_complex, link_complex, reduced_homology, ChainComplexFp, FlagComplex, HomologyDims};
pub use fpcheck::{analyze, fp_via_complex, fp_via_links, is_fg, max_fp, Character, FpLevel, FpnReport};
pub use gog::GraphOfFiniteGroups;
pub use graph::{Clique, SimplicialGraph};
pub use linalg::MatrixFp;
