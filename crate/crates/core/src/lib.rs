//! A finite-category computation kernel.
//!
//! Categories are explicit tables ([`FinCategory`]); universal properties,
//! slice structure, fibrations and monads are checked by exhaustive search.

pub mod analysis;
pub mod category;
pub mod catspec;
pub mod construct;
pub mod fibration;
pub mod functor;
pub mod instances;
pub mod lawcheck;
pub mod model;
pub mod monad;
pub mod report;
pub mod slice;
pub mod structures;

pub use category::{CategoryError, FinCategory, MorId, ObjId, RawCategory};
pub use functor::{FunctorData, FunctorError, NatTransData};
pub use report::{Counterexample, LawEntry, LawReport, LawStatus};
