use std::fmt::Debug;
use std::hash::Hash;

use super::{enumerate_diagrams, Diagram, DiagramError, Side};

/// The diagram-level primitives a planar algebra must provide so that the
/// graded algebra can be built on top of it.
///
/// Implementors are bases that are closed under the primitive tangles up to
/// a power of the loop weight. Only Temperley-Lieb is implemented.
pub trait PlanarBasis: Clone + Ord + Hash + Debug + Send + Sync + Sized {
    fn unit() -> Self;
    fn grade(&self) -> usize;
    fn basis(n: usize) -> Vec<Self>;
    fn concat(&self, other: &Self) -> Self;
    fn stitch(&self, other: &Self, j: usize) -> Result<(u32, Self), DiagramError>;
    fn cap(&self, side: Side) -> Result<(u32, Self), DiagramError>;
    fn close(&self, other: &Self) -> Result<u32, DiagramError>;
    fn reflect(&self) -> Self;
    fn encode(&self) -> String;
    fn decode(n: usize, s: &str) -> Result<Self, DiagramError>;
}

impl PlanarBasis for Diagram {
    fn unit() -> Self {
        Diagram::empty()
    }

    fn grade(&self) -> usize {
        Diagram::grade(self)
    }

    fn basis(n: usize) -> Vec<Self> {
        enumerate_diagrams(n)
    }

    fn concat(&self, other: &Self) -> Self {
        Diagram::concat(self, other)
    }

    fn stitch(&self, other: &Self, j: usize) -> Result<(u32, Self), DiagramError> {
        Diagram::stitch(self, other, j)
    }

    fn cap(&self, side: Side) -> Result<(u32, Self), DiagramError> {
        Diagram::cap(self, side)
    }

    fn close(&self, other: &Self) -> Result<u32, DiagramError> {
        self.close_pairing(other)
    }

    fn reflect(&self) -> Self {
        Diagram::reflect(self)
    }

    fn encode(&self) -> String {
        self.canonical_string()
    }

    fn decode(n: usize, s: &str) -> Result<Self, DiagramError> {
        let d = Diagram::from_parens(s)?;
        if d.grade() != n {
            return Err(DiagramError::GradeMismatch(n, d.grade()));
        }
        Ok(d)
    }
}
