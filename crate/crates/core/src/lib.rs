//! Finite-scale workbench for lex, regular and coherent categories.

pub mod category;
pub mod derived;
pub mod diagram;
pub mod elementary;
pub mod error;
pub mod finset;
pub mod format;
pub mod fixtures;
pub mod functor;
pub mod lattice;
pub mod limits;
pub mod poset;
pub mod report;
pub mod sheaf;
pub mod slice_yoneda;
pub mod table;
pub mod unionfind;

pub use category::{Category, Cospan, Functor, Span};
pub use error::{CatError, Result};
pub use report::{Finding, Report, Verdict};
