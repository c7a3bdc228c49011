//! Magic unitaries: models, orbits, quasi-flatness, Haar integrals on
//! index words, stationarity, idempotency, and block constructions from
//! finite-order unitaries.

pub mod bichon;
pub mod model;
pub mod words;

pub use bichon::bichon_build;
pub use model::{
    quasi_flat_check, verify_magic, MagicModel, MagicReport, OrbitSource, OrbitStructure, QuasiFlatReport,
};
pub use words::{
    convolution_idempotency, fixed_point_matrix, fixed_point_matrix_classical, haar_state_classical,
    haar_word_classical, model_state, stationarity_check, DualPresentation, FixedPointReport, IdempotencyReport,
    Reference, StateOnWords, StationarityCertificate, Word,
};
