#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::should_implement_trait)]

pub mod bessel;
pub mod cli;
pub mod dd;
pub mod error;
pub mod figure;
pub mod functional;
pub mod oracle;
pub mod output;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
