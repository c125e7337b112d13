#![no_std]
extern crate alloc;

pub mod arith;
pub mod canonical;
pub mod gonality;
pub mod modcurve;
pub mod qlinalg;
