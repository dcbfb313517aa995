//! Doc-test shim for the book.
//!
//! mdbook renders `book/` but cannot run its snippets against this workspace,
//! so each chapter is also included here as a doc comment: `cargo test --doc
//! -p telegrapher-guide` compiles and runs every Rust code block in the book.
//! One module per chapter keeps failures attributable to their source file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/line-model.md")]
pub mod line_model {}

#[doc = include_str!("../../../book/src/matrix-functions.md")]
pub mod matrix_functions {}

#[doc = include_str!("../../../book/src/network-matrices.md")]
pub mod network_matrices {}

#[doc = include_str!("../../../book/src/growth-bounds.md")]
pub mod growth_bounds {}

#[doc = include_str!("../../../book/src/immittance.md")]
pub mod immittance {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
