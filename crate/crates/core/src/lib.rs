//! Construction, verification and decoding of de Bruijn rings and almost
//! perfect maps over composite alphabets.
//!
//! A de Bruijn ring is a cyclic map of height exactly `m` and maximal
//! width `M(k^n, m)` in which every row-aperiodic `(m, n)` pattern over
//! `k` letters occurs exactly once. Rings are built from Euler cycles of
//! a ring graph ([`ring_graph`], [`ring_builder`]); stacking two trimmed
//! rings over factor alphabets yields large, almost perfect maps over the
//! product alphabet ([`composer`]) whose windows decode to absolute
//! positions in O(mn) time ([`decoder`]). [`verifier`] checks
//! sub-perfectness exhaustively and [`stats`] reproduces the counting
//! tables with exact arithmetic.
//!
//! ```
//! use debruijn_rings::{Budget, ring_builder::build_ring, verifier::verify};
//!
//! let ring = build_ring(2, 2, 2, &Budget::default())?;
//! assert_eq!((ring.height(), ring.width()), (2, 6));
//! let report = verify(&ring, 2, 2, &Budget::default())?;
//! assert!(report.is_de_bruijn_ring);
//! # Ok::<(), debruijn_rings::Error>(())
//! ```

pub mod composer;
pub mod cyclic_map;
pub mod decoder;
pub mod error;
mod euler;
pub mod patterns2d;
pub mod ring_builder;
pub mod ring_graph;
pub mod stats;
pub mod verifier;
pub mod words;

pub use cyclic_map::CyclicMap;
pub use error::{Budget, Error, Result};
pub use patterns2d::Pattern;
pub use words::Alphabet;
