pub mod aop;
pub mod cli;
pub mod cup;
pub mod graded;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod shift;
pub mod tl;

pub use graded::GradedElement;
pub use scalar::Scalar;
pub use tl::Diagram;
