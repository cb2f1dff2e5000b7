//! The SL₂ pipeline: jump graphs Σ₀ of polygon triangulations, their Stokes
//! data, the induced log-canonical form and Poisson bivector, and the
//! verifications against the Flaschka–Newell bracket and cluster mutation.

mod checks;
mod sigma0;
pub mod sl2;

pub use checks::{
    is_even_in, monodromy_matrix, stokes_form, symbolic_bound, verify_flip_mutation,
    verify_fn_pushforward, verify_prop_ideal, StokesForm, STOKES_MAX_K,
};
pub use sigma0::{
    build_sigma0, monodromy_check, param_names, prop1_parametrization, stokes_matrices,
    valid_orientations, StokesData,
};
