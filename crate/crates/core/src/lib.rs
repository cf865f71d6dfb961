//! Dörfler marking for adaptive refinement.
//!
//! Given nonnegative indicators `x` and `0 < θ ≤ 1`, a marked set `M`
//! satisfies the Dörfler criterion when `θ·Σ_all x ≤ Σ_M x`. This crate
//! provides
//!
//! * [`quickmark`]: sets of minimal cardinality in worst-case linear time,
//!   plus the in-place threshold kernel [`quickmark::xstar_kernel`];
//! * [`sort_mark`]: the O(N log N) sort-based reference;
//! * [`binning`] and [`decrement`]: the classical linear-cost strategies;
//! * [`oracle`]: brute-force and exact-arithmetic verification helpers;
//! * [`bench`] and [`io`]: the machinery behind the `doerfler-bench` binary.
//!
//! Indices are 0-based everywhere.
//!
//! ```
//! use doerfler::{mark, Algorithm, IndicatorVector};
//!
//! let x = IndicatorVector::new(vec![4.0, 1.0, 2.0, 3.0]).unwrap();
//! let m = mark(Algorithm::QuickMark, &x, 0.5, 0.5).unwrap();
//! assert_eq!(m.outcome.marked, vec![0, 3]);
//! assert_eq!(m.x_star, Some(3.0));
//! ```

mod algorithm;
pub mod bench;
pub mod binning;
pub mod decrement;
pub mod error;
pub mod indicator;
pub mod instrument;
pub mod io;
pub mod oracle;
pub mod quickmark;
pub mod sort_mark;
pub mod sum;

pub use algorithm::{mark, mark_with, Algorithm, Marked, UnknownAlgorithm};
pub use error::{MarkError, Result};
pub use indicator::{goal_value, mark_theta_one, satisfies_doerfler, IndicatorVector, MarkingOutcome, MarkingParams};
pub use instrument::{Audited, Counting, Instrument, Silent};
