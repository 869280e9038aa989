pub mod design;
pub mod errorsim;
pub mod galois;
pub mod convcode;
pub mod netgraph;
