#![allow(dead_code)]

pub mod cli;
pub mod link;
pub mod revenue;
pub mod slots;
pub mod tree;
pub mod wireless;
