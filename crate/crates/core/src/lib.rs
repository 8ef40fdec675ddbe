//! HPPK key encapsulation over a hidden ring, with toy-scale cryptanalysis
//! oracles and a command line front end.

pub mod analysis;
pub mod cli;
pub mod codec;
pub mod fhe;
pub mod kem;
pub mod modmath;
pub mod rng;
pub mod scheme;

pub use kem::{decaps, encaps, KemCiphertext, SharedSecret};
pub use scheme::{keygen, ParameterSet, PrivateKey, PublicKey, SecurityLevel};
