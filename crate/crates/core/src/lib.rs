//! Exact computations with finite-dimensional bound quiver algebras and their modules.

pub mod algebra;
pub mod bounds;
pub mod catalog;
pub mod commands;
pub mod corpus;
pub mod document;
pub mod formats;
pub mod linalg;
pub mod modules;
pub mod oracle;
