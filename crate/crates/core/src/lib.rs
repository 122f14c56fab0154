pub mod arith;
pub mod field;
pub mod matrix;
pub mod lincode;
pub mod constacyclic;
pub mod grs;
pub mod eaqecc;
pub mod certificate;
pub mod pipeline;
pub mod verify;
pub mod cli;
