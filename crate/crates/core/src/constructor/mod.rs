//! The odd-cycle construction: given a non-bipartite graph, build a cycle of a
//! prescribed odd length through an edge that a maximum cut leaves inside one side,
//! or report the step that fell short. Also the low-degree peeling report.

mod config;
mod peel;
mod pipeline;
mod steps;
mod witness;

pub use config::{ConstructorConfig, Knobs, Mode, Thresholds};
pub use peel::{peel_bipartize, PeelReport};
pub use pipeline::{find_odd_cycle, OddCycleOutcome, PipelineTrace};
pub use steps::{
    balanced_split, good_coloring_filter, good_coloring_filter_with, good_threshold, greedy_even_path, GoodPaths, Split,
};
pub use witness::{BipartiteCert, CycleWitness, Segment, SEGMENT_LABELS};
