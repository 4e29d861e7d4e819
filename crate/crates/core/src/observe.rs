//! Hooks for tracing and for tests that inspect intermediate solver state.
//! Every method has an empty default, so observers implement only what they
//! need.

use crate::arith::ExactInt;
use crate::centering::RefreshRecord;
use crate::crossover::{OptimalBasis, PerturbedData};
use crate::graph::MinorView;
use crate::instance::{
    AuxiliaryInstance, Component, Downscaled, InitialPoint, Normalized, ScalingCertificate,
};
use crate::ipm::{IterateState, IterationRecord, ProxyResult};

/// Everything known about one weakly connected component before the
/// interior point method starts.
pub struct ComponentContext<'a> {
    pub index: usize,
    pub component: &'a Component,
    pub normalized: &'a Normalized,
    pub downscaled: &'a Downscaled,
    pub cert: &'a ScalingCertificate,
}

#[allow(unused_variables)]
pub trait Observer {
    fn on_component(&mut self, ctx: &ComponentContext<'_>) {}

    fn on_initial_point(&mut self, aux: &AuxiliaryInstance, init: &InitialPoint) {}

    /// Called before each centering step with the minor iterate and the
    /// decremented `μ'`.
    fn on_centering_start(&mut self, iter: u64, minor: &MinorView, x: &[ExactInt], s: &[ExactInt], mu: &ExactInt) {}

    fn on_refresh(&mut self, iter: u64, record: &RefreshRecord) {}

    /// Called after every outer iteration with the minor used by its
    /// centering step.
    fn on_iteration(&mut self, record: &IterationRecord, state: &IterateState, minor: &MinorView) {}

    fn on_proxy(&mut self, proxy: &ProxyResult, perturbed: &PerturbedData) {}

    /// `b̂ᵀy` after each nested-cut step; step 0 is the starting value.
    fn on_crossover_step(&mut self, step: usize, objective: &ExactInt) {}

    fn on_basis(&mut self, basis: &OptimalBasis) {}
}

/// Observer that ignores everything.
pub struct NoObserver;

impl Observer for NoObserver {}
