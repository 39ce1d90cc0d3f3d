//! Every chapter of the guide is compiled as a module here, so each Rust
//! snippet in it runs under `cargo test --doc -p mcf-book`.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/exact-numbers.md")]
pub mod exact_numbers {}
#[doc = include_str!("src/continued-fractions.md")]
pub mod continued_fractions {}
#[doc = include_str!("src/legendre-chain.md")]
pub mod legendre_chain {}
#[doc = include_str!("src/mu.md")]
pub mod mu {}
#[doc = include_str!("src/spectra.md")]
pub mod spectra {}
#[doc = include_str!("src/oscillation.md")]
pub mod oscillation {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
