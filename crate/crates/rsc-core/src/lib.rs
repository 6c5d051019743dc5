#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod extremal;
pub mod math;
pub mod rational;
pub mod spaces;
pub mod stepfn;
pub mod transforms;
pub mod verdicts;
pub mod witness;
