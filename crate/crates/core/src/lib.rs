//! Exact modular data toolkit.
//!
//! Cyclotomic arithmetic ([`cyclo`]), modular data and its verification
//! ([`modular`]), the Galois action ([`galois`]), constructors for standard
//! families ([`construct`]), bound checks ([`bounds`]) and a persistent
//! catalog ([`catalog`]).

pub mod bounds;
pub mod catalog;
pub mod construct;
pub mod cyclo;
pub mod error;
pub mod galois;
pub mod modular;
pub mod numtheory;

pub use cyclo::{Cyc, Rat, RootOfUnity};
pub use error::{Error, Result};
pub use modular::{FusionTensor, ModularDatum, VerificationReport};
