//! Chapters of the guide, compiled as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}
#[doc = include_str!("../../../book/src/states.md")]
mod states {}
#[doc = include_str!("../../../book/src/measures.md")]
mod measures {}
#[doc = include_str!("../../../book/src/plateau.md")]
mod plateau {}
#[doc = include_str!("../../../book/src/roof.md")]
mod roof {}
#[doc = include_str!("../../../book/src/audits.md")]
mod audits {}
#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
#[doc = include_str!("../../../README.md")]
mod readme {}
