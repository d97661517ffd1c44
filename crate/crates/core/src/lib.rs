//! Corpus-level metrics for comparing machine-generated text against native
//! corpora: lexical divergence over word frequencies, syntactic divergence
//! over dependency-tree kernels, part-of-speech pattern mining, stability
//! protocols, and preference-pair filtering.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default `std`
//! feature and enable `libm` for embedded or wasm targets. The `parallel`
//! feature adds multi-threaded kernel matrix computation via rayon without
//! changing any computed value.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod corpus;
pub mod error;
pub mod lexdiv;
mod math;
pub mod patterns;
pub mod prefpairs;
pub mod rng;
pub mod stability;
pub mod syndiv;

pub use corpus::{lexical_word_stream, AnnotatedToken, Corpus, Document, Sentence, Token, Upos};
pub use error::{Error, Result};
