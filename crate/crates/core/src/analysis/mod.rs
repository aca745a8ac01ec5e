//! Occupancy statistics, the EMD(1) error metric and dense reference
//! transforms.

mod dense;
mod emd;
mod occupancy;

pub use dense::{dense_oracle, dense_samples, dense_transform, DENSE_CAP};
pub use emd::{emd1, emd1_assignment, emd1_brute_force, mode_distance, EmdAssignment, Flow};
pub use occupancy::{
    approx_isolated_fraction, expected_occupancy, occupancy_recurrence, simulate_occupancy,
    solve_c_for_isolation, OccupancyEstimate, OccupancyExpectation,
};
