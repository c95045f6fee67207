//! Graph complexes of decorated diagrams on an oriented circle.

pub mod diagrams;
pub mod error;

pub use diagrams::{canonicalize, ComplexType, Diagram, Edge, GraphVector, Sign, SignedDiagram};
pub use error::{GraphError, Result};
pub mod differential;
pub mod enumeration;
pub mod linalg;
pub mod chordhom;
pub mod cli;
