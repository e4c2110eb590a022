//! Certificate-producing versions of the expansion, reachability, bipartization and
//! diameter arguments, and the constants they depend on.

mod bipartize;
mod c2l;
mod constants;
mod diameter;
mod expansion;
mod reach;

pub use bipartize::{bipartize, check_bipartization, Bipartization};
pub use c2l::{ball_lower_bound, c2l_ball, c2l_reach, BallReport, C2lOptions, C2lReach, SplitScope};
pub use constants::{derive_constants, derive_constants_c2l, ell0, gamma, mu, DerivedConstants, Provenance};
pub use diameter::{ball_diameter_check, diameter_check, BallDiameterReport, DiameterReport};
pub use expansion::{expansion_cert, ExpansionCert};
pub(crate) use expansion::consecutive_layers;
pub use reach::{confirm_maximal, default_cap, robust_reach, PathFamily, ReachMode, ReachOptions};
