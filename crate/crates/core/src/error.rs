use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("slot {slot} outside [1, {slots}]")]
    SlotOutOfRange { slot: usize, slots: usize },

    #[error("reversed range [{a}, {b}]")]
    ReversedRange { a: usize, b: usize },

    #[error("node {node} outside [0, {nodes})")]
    NodeOutOfRange { node: usize, nodes: usize },

    #[error("unknown vertex {0}")]
    UnknownVertex(usize),

    #[error("arithmetic overflow in bandwidth units")]
    Overflow,

    #[error("update would leave slot {slot} at {value} units, outside [0, {capacity}]")]
    CapacityViolation { slot: usize, value: i64, capacity: i64 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
