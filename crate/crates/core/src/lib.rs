//! Harmonic analysis on compact Lie groups at desk scale.
//!
//! The crate covers the flat tori `T^1..T^3` and `SU(2)`: their unitary duals
//! and Wigner matrices ([`groups`]), exact Haar quadrature and the
//! analysis/synthesis pair ([`fourier`]), the L^p, sequence-space, Sobolev,
//! Besov, Triebel-Lizorkin, Wiener and Beurling norms ([`norms`]), and
//! numerical checks of Nikolskii, Hausdorff-Young, Weyl and embedding
//! inequalities ([`verify`]).

pub mod error;
pub mod fourier;
pub mod groups;
pub mod norms;
pub mod parallel;
pub mod settings;
pub mod verify;

pub use error::{Error, Result};
pub use groups::{
    enumerate_dual, quadrature, rep_info, weyl_count, GroupElement, GroupId, QuadratureRule, RepIndex, RepInfo,
};
pub use settings::Settings;
