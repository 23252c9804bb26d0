#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod ads3;
pub mod error;
pub mod geom_maps;
pub mod jspace;
pub mod linalg;
pub mod mat2;
pub mod moment_maps;
pub mod numcheck;
pub mod para_algebra;
pub mod phk_core;

pub use error::{Component, Error, Result};
pub use mat2::Mat2;
pub use para_algebra::ParaComplex;
