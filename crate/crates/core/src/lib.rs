#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod charring;
pub mod error;
pub mod ktheta;
pub mod langlands;
pub mod lattice;
pub mod nilcone;
pub mod oracle;
pub mod qcombinatorics;
pub mod rootdata;

pub use error::{Error, Result};
pub use lattice::{IntMatrix, Weight};
pub use qcombinatorics::QPolynomial;
pub use rootdata::{InvolutionData, RootDatum, WeylElement};
