//! Thomas decomposition of polynomial and differential polynomial systems.

pub mod algthomas;
pub mod control;
pub mod diffring;
pub mod diffthomas;
mod engine;
mod error;
pub mod janet;
pub mod polyring;
pub mod sysfile;
pub mod system;

pub use error::Error;
