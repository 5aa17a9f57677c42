//! Compilation, simulation and verification of qudit graph-state
//! networks.
//!
//! A weighted graph over `Z_d` levels determines a cluster state and,
//! once input vertices are chosen, a graph-code encoding map. This crate
//! compiles such graphs into logical networks of local Fourier,
//! controlled-shift and controlled-phase gates, simulates the networks on
//! dense state vectors, and checks every compiled network against
//! closed-form references built directly from the defining amplitudes.
//!
//! Modules:
//! - [`group`]: `Z_d` arithmetic, the bicharacter phase, basis enumeration
//! - [`graph`]: the weighted-graph model and its JSON file format
//! - [`circuit`]: the gate-sequence IR and its netlist format
//! - [`synth`]: graph-to-network compilation
//! - [`sim`]: dense state-vector simulation and the cluster-state oracle
//! - [`linmap`]: dense operator assembly from closed-form definitions
//! - [`code`]: graph-code encoders, coding channels and identity checks
//! - [`report`]: structured pass/fail verification reports

pub mod circuit;
pub mod code;
pub mod graph;
pub mod group;
pub mod linmap;
pub mod report;
pub mod sim;
pub mod synth;

pub use circuit::{Circuit, Gate, GateCounts, NetlistError};
pub use code::{
    ChannelBranches, CodeError, EncodingMode, EncodingOutcome, IsometryCheck,
};
pub use graph::{CanonReport, GraphError, WeightedGraph};
pub use group::{Digit, GroupError, MultiIndex};
pub use linmap::LinearMap;
pub use report::{CheckResult, CheckStatus, Report, TOLERANCE};
pub use sim::{SimError, StateVector};
pub use synth::{DirectEncoder, EncoderNetwork, SynthError};
