//! The guide's chapters, compiled as doc-tests so its snippets stay in sync
//! with the library. One module per chapter keeps failures traceable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/instances.md")]
pub mod instances {}
#[doc = include_str!("../../../book/src/problems.md")]
pub mod problems {}
#[doc = include_str!("../../../book/src/certificates.md")]
pub mod certificates {}
#[doc = include_str!("../../../book/src/bicriteria.md")]
pub mod bicriteria {}
#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}
#[doc = include_str!("../../../book/src/generators.md")]
pub mod generators {}
#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
