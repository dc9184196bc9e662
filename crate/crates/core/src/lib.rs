//! Random walks, loop-erased walks and wired spanning forests on Cayley
//! graphs of finitely generated groups.
//!
//! Groups are named by descriptors (`Z^3`, `H3`, `LL`, `F2`, `Z^2xF2`) and
//! act by right multiplication by a symmetric generating set. The crate
//! estimates occupation and exit times of balls, samples loop-erased walks
//! and Wilson forests on wired balls, and evaluates the analytic bounds that
//! these quantities are compared with.
//!
//! ```
//! use cayley_walks::harness::{run_experiment, ExperimentConfig, Observable};
//!
//! let cfg = ExperimentConfig::new("Z^3".parse()?, Observable::ExitTime, vec![2, 4], 100, 1);
//! let records = run_experiment(&cfg)?;
//! assert!(records[1].mean > records[0].mean);
//! # Ok::<(), cayley_walks::Error>(())
//! ```

pub mod bounds;
pub mod error;
pub mod groups;
pub mod harness;
pub mod lerw;
pub mod metric;
pub mod report;
pub mod rng;
pub mod stats;
pub mod validate;
pub mod walk;
pub mod wsf;

pub use error::{Error, Result};
