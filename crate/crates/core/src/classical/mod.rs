//! Krein strings, Lévy–Khintchine triplets and mean periodicity.

mod levy;
mod mean_periodic;
mod string;

pub use levy::{idd_charfn_check, idd_density, levy_triplet, screw_from_triplet, LevyTriplet};
pub use mean_periodic::{
    annihilator, annihilator_hat, fourier_carleman, fourier_carleman_closed, full_convolution, half_convolution,
    half_convolution_closed, mean_periodic_checks, MeanPeriodicReport, FOURIER_SAMPLES, QUAD_RANGE,
};
pub use string::{
    q_substitute, stieltjes_string, string_solve, titchmarsh_weyl, KreinString, StringMass, StringSolution,
};
