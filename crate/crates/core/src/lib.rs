//! Online forecasting of regular-expression pattern completion over
//! symbolic event streams.
//!
//! A pattern given as a regular expression over a finite alphabet of event
//! types is compiled into the recognition automaton for `Σ*·R`, optionally
//! disambiguated so that every state determines the last `m` symbols read,
//! and then turned into a Pattern Markov Chain whose transition matrix is
//! learned from a warm-up prefix of the stream. Treating final states as
//! absorbing yields, for every state, the distribution of the number of
//! future events until the pattern next completes. From those waiting-time
//! distributions the engine derives, per state, the shortest future interval
//! that carries at least a user-set probability mass, and emits that interval
//! as a forecast at every event arrival.
//!
//! The crate is organized along the pipeline:
//!
//! * [`pattern`] — the pattern definition language and its AST
//! * [`automata`] — NFA construction, subset construction, m-disambiguation
//! * [`pmc`] — transition-count learning and waiting-time distributions
//! * [`model`] — the on-disk model file
//! * [`forecast`] — best-interval selection and the per-state forecast table
//! * [`engine`] — the online loop: runs, matches, forecast emission
//! * [`metrics`] — precision / spread / distance scoring
//! * [`synthgen`] — reproducible synthetic stream generation
//! * [`stream`] — event file ingestion and record output
//! * [`config`], [`cli`] — run configuration and the command-line front end

pub mod automata;
pub mod cli;
pub mod config;
pub mod engine;
pub mod error;
pub mod forecast;
pub mod metrics;
pub mod model;
pub mod pattern;
pub mod pmc;
pub mod stream;
pub mod synthgen;

pub use automata::{compile, Compiled, Dfa, Nfa, StateId};
pub use engine::{Engine, EngineConfig, EngineOutput, Event};
pub use error::{Error, Result};
pub use forecast::{ForecastInterval, ForecastTable};
pub use pattern::{Alphabet, PatternAst, SymbolId};
pub use pmc::{CountMatrix, Pmc, WaitingTimeDistribution};
