//! Limit shapes: band structure of `g(φ)`, limiting densities and kernels, the
//! limit shape of Plancherel measure, the hook functional, surface tension, the
//! concave action maximizer and the Seiberg-Witten conformal-map solver.

mod action;
mod bands;
mod energy;
mod profile;
mod sw;

pub use action::{action, maximize_action, surface_tension, ActionMaximizer, SurfaceTension};
pub use bands::{bands_at_level, g_of_phi, limit_density, limit_kernel, BandGapStructure};
pub use energy::{hook_energy, hook_energy_refined};
pub use sw::{
    calibrate_period_constant, match_periods, match_periods_from, maximizer_from_map, sw_map, sw_periods, PeriodCalibration,
    PeriodMatch, SwCurve,
};
pub use profile::{integrate_slope, vkls_height, vkls_slope, DiscreteProfile};

#[cfg(test)]
mod tests;
