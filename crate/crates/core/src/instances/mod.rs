//! Concrete categories and monads used as oracles.

pub mod finset;
pub mod sets;
pub mod zoo;

pub use finset::{finset, FinSetInstance};
pub use sets::{Func, InstanceError, Maybe, Monoid, SetMonad, Sets, Writer};
pub use zoo::{zoo, ZooEntry};
