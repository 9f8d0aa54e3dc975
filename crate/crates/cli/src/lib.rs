//! Experiment harness for the stabilized Helmholtz Cauchy solver: run
//! configuration, the reconstruction pipeline, file output and the oracle
//! self-check behind the `helmstab` binary.

pub mod config;
pub mod harness;
pub mod io;
pub mod oracle_check;
