//! Citation sentiment fluctuation analysis.
//!
//! Labeled citation sentences are grouped per (cited, citing) pair, scored,
//! and turned into one time-ordered sequence per cited paper. Each sequence
//! is summarised by seven eddy-dissipation-rate style fluctuation features,
//! and the papers are clustered with K-means, choosing the cluster count by
//! average silhouette.
//!
//! ```
//! use citation_edr::metrics::{countcitations_l, pratio_l, Icss};
//!
//! let icss = Icss::from_values("W02-1011", "P09-1028", &[1, -1, 1, 1, -1]).unwrap();
//! assert_eq!(countcitations_l(&icss), 1);
//! assert_eq!(pratio_l(&icss), 0.6);
//! ```
//!
//! Runnable walkthroughs live in `examples/`; the `citation-edr` binary
//! exposes each stage as a subcommand.

pub mod clustering;
pub mod corpus;
pub mod error;
pub mod metrics;
pub mod pipeline;
pub mod sequence;
pub mod synthetic;
pub mod turbulence;

pub use error::{Error, ErrorKind, Result};
