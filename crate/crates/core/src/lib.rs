//! Secrecy rates of MIMO wiretap channels where the transmitter hides the
//! signal under artificial noise and the eavesdropper projects it away.
//!
//! Every average rate is available three ways: exact finite-antenna
//! expressions ([`closed_form`]), large-system laws ([`asymptotics`]) and a
//! deterministic parallel simulator ([`montecarlo`]) that checks both.

pub mod asymptotics;
pub mod capacity;
pub mod closed_form;
pub mod error;
pub mod models;
pub mod montecarlo;
pub mod quadrature;
pub mod randmat;
pub mod specfun;
pub mod sweep;
pub mod wiretap;

pub use error::{Error, Result};
pub use models::{ModelRegistry, ModelSettings, RateEvaluation, RateModel};
pub use montecarlo::{MonteCarloEstimate, SimulationMode};
pub use quadrature::QuadratureSpec;
pub use wiretap::{NoAnModel, Regime, SystemConfig};
