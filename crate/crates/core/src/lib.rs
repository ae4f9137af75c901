//! Instance matching between knowledge bases with automatically generated
//! property weights.
//!
//! The pipeline is: parse triples into a [`kb::KnowledgeBase`], derive a
//! [`weights::WeightTable`] from value-distinctness statistics, score
//! instance pairs by weighted affinity of their Semantic Link Clouds
//! ([`matching::match_kbs`]) and compare the result against a gold standard
//! ([`eval::evaluate`]). [`benchgen`] produces synthetic test beds.

pub mod benchgen;
pub mod error;
pub mod eval;
pub mod kb;
pub mod matching;
pub mod pipeline;
pub mod weights;

pub use error::{Error, ParseError, Result};
