//! The guide chapters under `book/` doubled as doctests: every fenced Rust
//! snippet in the book runs under `cargo test --doc`, which keeps the prose
//! and the library in sync. One module per chapter so a failure names its
//! chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/finite-fields.md")]
pub mod finite_fields {}

#[doc = include_str!("../../../book/src/incidence-geometry.md")]
pub mod incidence_geometry {}

#[doc = include_str!("../../../book/src/moore-graphs.md")]
pub mod moore_graphs {}

#[doc = include_str!("../../../book/src/certification.md")]
pub mod certification {}

#[doc = include_str!("../../../book/src/compounding.md")]
pub mod compounding {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
