pub mod algebra;
pub mod calculus;
pub mod cli;
pub mod contraction;
pub mod error;
pub mod expr;
pub mod poly;
pub mod presentations;
pub mod report;
pub mod rewrite;
pub mod scalar;
pub mod supermatrix;
