//! Explicit bodies: arc and sphere ladders, cap and rectangle grafts, and
//! cone sharpening.

mod cone;
mod graft;
mod ladder;

pub use cone::{cone_sharpen, SharpenedBody};
pub use graft::{rectangle_graft, spherical_cap_graft, CapGraft, RectangleGraft};
pub use ladder::{
    acute_check_d2, arc_ladder_d1, arc_ladder_d1_at, scan_acute_threshold, sphere_ladder_d2,
    AcuteCheck, LadderD1, LadderD2, ThresholdScan,
};

/// Cap and cone discretization density.
pub const DEFAULT_SAMPLES_PER_RADIAN: f64 = 64.0;
