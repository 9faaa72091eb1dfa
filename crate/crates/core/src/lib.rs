//! Perfect state transfer in spin networks.
//!
//! A network is stratified into distance layers from a reference vertex; when
//! the Hamiltonian is layer-regular it reduces to a Jacobi chain whose Gauss
//! quadrature measure gives the transfer amplitude in closed form. A dense
//! full-space engine in [`oracle`] checks every quotient result.
//!
//! All numeric types are generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fidelity;
pub mod network;
pub mod oracle;
mod scalar;
pub mod spectral;
pub mod stratification;

pub use error::{PstError, Result};
pub use oracle::Target;
pub use scalar::Scalar;
pub use stratification::Stratification;

pub type SpinNetwork = network::SpinNetwork<f64>;
pub type HamiltonianMatrix = network::HamiltonianMatrix<f64>;
pub type LayerVectors = stratification::LayerVectors<f64>;
pub type JacobiSequences = stratification::JacobiSequences<f64>;
pub type OrthoPolySystem = spectral::OrthoPolySystem<f64>;
pub type SpectralMeasure = spectral::SpectralMeasure<f64>;
pub type FidelityTrace = fidelity::FidelityTrace<f64>;
pub type PstCertificate = fidelity::PstCertificate<f64>;
pub type EigenDecomposition = oracle::EigenDecomposition<f64>;

pub type SpinNetworkF32 = network::SpinNetwork<f32>;
pub type JacobiSequencesF32 = stratification::JacobiSequences<f32>;
pub type SpectralMeasureF32 = spectral::SpectralMeasure<f32>;

pub type Complex64 = num_complex::Complex<f64>;
