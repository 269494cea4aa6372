//! Compiles the code blocks of the guide in `book/` as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/sequences.md")]
mod sequences {}

#[doc = include_str!("../../../book/src/scoring.md")]
mod scoring {}

#[doc = include_str!("../../../book/src/extension-charge.md")]
mod extension_charge {}

#[doc = include_str!("../../../book/src/engines.md")]
mod engines {}

#[doc = include_str!("../../../book/src/oracle.md")]
mod oracle {}

#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
