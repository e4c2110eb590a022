//! Classical extremal graphs and seeded random constructions.

mod gf;
mod projective;
mod random;

pub use gf::{GaloisField, PrimePower, MAX_FIELD_ORDER};
pub use projective::{absolute_points, incidence_graph, polarity_graph, projective_points};
pub use random::{
    connect_components, random_bipartite, random_connected_mindeg, random_gnp, random_mindeg_graph,
    random_theta_free, repair_min_degree, theta_free_probability, MinDegreeModel, ProbabilityRule,
    ThetaFreeReport, THETA_HOST_CAP,
};
