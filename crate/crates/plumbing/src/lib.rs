//! Staircase polyomino pipe cities.
//!
//! A city is a staircase polyomino of diamond cells between two step paths;
//! water enters through the `m` faucets of the top path and leaves through
//! the `m` customers of the bottom path. Assigning an elbow or a crossing to
//! every cell yields a pipe configuration whose tracing realizes a
//! permutation. This crate models the combinatorics around that picture:
//!
//! - [`perm`]: permutations, strong Bruhat order, Demazure (0-Hecke)
//!   products, and constrained enumerators, including the Yoshi permutation
//!   families counted by the median Genocchi numbers 1, 2, 8, 56, 608, 9440,
//!   198272, …
//! - [`city`]: cities, their flow-order word, the grid permutation of the
//!   all-crossings configuration, reachability bounds, and diamonds.
//! - [`config`]: configurations, wire tracing, facet recognition, and the
//!   diamond-closure / elbow-brushing predicates.
//! - [`biject`]: the greedy and antigreedy facet constructions realizing
//!   the bijections between bottom-closed configurations, top-closed
//!   configurations, and Bruhat lower intervals, plus the exhaustive
//!   verification and counting harness.
//! - [`render`]: deterministic ASCII and SVG drawings.

pub mod biject;
pub mod city;
pub mod config;
pub mod error;
pub mod perm;
pub mod render;

pub use biject::{
    antigreedy_facet, config_to_permutation, count_box, count_closed_graphs,
    count_closed_graphs_threaded, count_dumont_type, count_interval_collections,
    count_interval_collections_threaded, greedy_facet, mu_nu_box_report, verify_bijection,
    yoshi_count, yoshi_count_threaded, BoxReport, Closure, Family, GraphEdgeSet,
    IntervalCollection, SizePolynomial, VerifyCounts, VerifyReport,
};
pub use city::{CellId, City, Diamond, Step, StepPath};
pub use config::{
    enumerate_configs, enumerate_configs_with_guard, ConfigFilter, Meeting, MeetingKind,
    PipeConfig, TraceResult,
};
pub use error::{Error, Result};
pub use perm::{
    enumerate_lower_interval, enumerate_yoshi_permutations, BoundsProfile, Permutation, Word,
};
pub use render::{render_city, render_config, RenderFormat, RenderOptions};
