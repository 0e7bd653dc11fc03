//! Length spectra, Hölder bounds, packing dimension, maximizing chords and
//! the planar diametral map.

mod diametral;
mod maximizing;
mod packing;
mod spectrum;

pub use diametral::{diametral_map_d1, DiametralMap};
pub use maximizing::{
    classify_maximizing, curvature_bound_check, CurvatureBound, MaxClass, MaxClassification,
    DEFAULT_ALPHA,
};
pub use packing::{
    box_dimension_chords, box_dimension_estimate, brute_force_packing, default_ladder, packing_count,
    packing_count_chords, packing_count_with, PackingReport,
};
pub use spectrum::{holder_verify, spectrum, FamilyLength, HolderReport, SpectrumReport};
