//! Secrecy performance of an underlay cognitive small-cell network with
//! unreliable backhaul.
//!
//! Four transmitter selection rules are modelled: sub-optimal transmitter
//! selection (STS), minimal interference selection (MIS), minimal
//! eavesdropping selection (MES) and optimal selection (OS). Each metric is
//! available in closed form (or by quadrature for OS), as a high-SNR limit
//! and by Monte Carlo simulation.

pub mod analytics;
pub mod error;
pub mod model;
pub mod montecarlo;
pub mod os_numeric;
pub mod specfun;
pub mod summation;
pub mod sweep;

pub use analytics::{
    asym_ergodic, asym_prob_nonzero, asym_sop, ergodic_secrecy_capacity, prob_nonzero_secrecy, secrecy_metrics,
    secrecy_outage_prob, SecrecyMetrics,
};
pub use error::{Error, Result};
pub use model::{FadingDb, FadingParams, PowerBudget, Scheme, SystemConfig};
pub use montecarlo::{estimate, estimate_schemes, McConfig, McEstimate, McStat};
pub use os_numeric::quad::QuadSpec;
pub use sweep::{run_sweep, CurvePoint, Metric, SweepCase, SweepSpec};
