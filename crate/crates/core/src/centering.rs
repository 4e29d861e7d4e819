//! Integer electrical-flow centering step.
//!
//! Given a minor whose iterate is central for `μ`, restore
//! `8·Σ|x'_a s'_a - μ'| < μ'` for the decremented `μ'` by driving the currents
//! `φ` toward the electrical flow with resistances `r_a = ceil(s_a / x_a)` and
//! sources `A φ⁰`, `φ⁰_a = x_a - round(μ' / s_a)`, using randomized
//! fundamental-cycle updates with integer step sizes.

use rand::Rng;

use crate::arith::{ceil_div, round_nearest, BoundMonitor, ExactInt};
use crate::error::SolveError;
use crate::graph::MinorView;
use crate::tree::{
    sampling_weights, tree_condition_number, Fraction, FundamentalCycle, TreeIndex,
    WeightedSampler,
};

#[derive(Clone, Debug, Default)]
pub struct CenteringLimits {
    /// Cycle updates between two refreshes; `None` means one per minor arc.
    pub refresh_interval: Option<u64>,
    /// Overrides the default stall ceiling when set.
    pub max_updates: Option<u64>,
    /// Bit length of `μ₀`, a factor of the default stall ceiling.
    pub mu0_bits: u64,
}

/// Emitted at every refresh.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefreshRecord {
    pub updates: u64,
    pub deviation_sum: ExactInt,
    pub max_abs: ExactInt,
}

#[derive(Clone, Debug)]
pub struct CenteringState<'a> {
    minor: &'a MinorView,
    mu: ExactInt,
    s: Vec<ExactInt>,
    r: Vec<ExactInt>,
    base: Vec<ExactInt>,
    phi: Vec<ExactInt>,
    tree: TreeIndex,
    cycles: Vec<FundamentalCycle>,
    sampler: WeightedSampler,
    tau: Fraction,
    pi: Vec<ExactInt>,
    s_prime: Vec<ExactInt>,
    updates: u64,
}

impl<'a> CenteringState<'a> {
    /// `x`, `s` are indexed by minor arc.
    pub fn init(
        minor: &'a MinorView,
        x: &[ExactInt],
        s: &[ExactInt],
        mu: &ExactInt,
    ) -> Result<Self, SolveError> {
        let m = minor.arc_count();
        if x.len() != m || s.len() != m {
            return Err(SolveError::Precondition("iterate length differs from minor".into()));
        }
        if let Some(i) = (0..m).find(|&i| !x[i].is_positive() || !s[i].is_positive()) {
            return Err(SolveError::Invariant(format!(
                "nonpositive iterate on minor arc {i} (original arc {})",
                minor.arcs[i]
            )));
        }
        let mut r = Vec::with_capacity(m);
        let mut base = Vec::with_capacity(m);
        let mut phi = Vec::with_capacity(m);
        for i in 0..m {
            r.push(ceil_div(&s[i], &x[i])?);
            let b = round_nearest(mu, &s[i])?;
            phi.push(&x[i] - &b);
            base.push(b);
        }
        let tree = TreeIndex::build(minor, &r);
        let cycles = tree
            .off_tree_arcs()
            .map(|i| tree.fundamental_cycle(minor, i, &r))
            .collect::<Result<Vec<_>, _>>()?;
        let tau = tree_condition_number(&cycles, &r);
        let sampler = WeightedSampler::new(&sampling_weights(&cycles, &r));
        Ok(CenteringState {
            minor,
            mu: mu.clone(),
            s: s.to_vec(),
            r,
            base,
            phi,
            tree,
            cycles,
            sampler,
            tau,
            pi: vec![ExactInt::zero(); minor.class_count],
            s_prime: s.to_vec(),
            updates: 0,
        })
    }

    pub fn mu(&self) -> &ExactInt {
        &self.mu
    }

    pub fn resistances(&self) -> &[ExactInt] {
        &self.r
    }

    pub fn base(&self) -> &[ExactInt] {
        &self.base
    }

    pub fn currents(&self) -> &[ExactInt] {
        &self.phi
    }

    pub fn tree(&self) -> &TreeIndex {
        &self.tree
    }

    pub fn cycles(&self) -> &[FundamentalCycle] {
        &self.cycles
    }

    /// Exact tree condition number.
    pub fn condition_number(&self) -> &Fraction {
        &self.tau
    }

    pub fn updates(&self) -> u64 {
        self.updates
    }

    /// `x'_a = φ_a + round(μ'/s_a)`.
    pub fn x_prime(&self) -> Vec<ExactInt> {
        self.phi.iter().zip(&self.base).map(|(p, b)| p + b).collect()
    }

    pub fn s_prime(&self) -> &[ExactInt] {
        &self.s_prime
    }

    pub fn voltages(&self) -> &[ExactInt] {
        &self.pi
    }

    /// Primal energy `Σ r_a φ_a²`.
    pub fn energy(&self) -> ExactInt {
        self.phi.iter().zip(&self.r).map(|(p, r)| r * &(p * p)).sum()
    }

    /// `Δ = Σ_{a' ∈ C} ±r_{a'} φ_{a'}` for the `k`-th off-tree cycle.
    pub fn cycle_sum(&self, k: usize) -> ExactInt {
        let mut acc = ExactInt::zero();
        for &(j, sign) in &self.cycles[k].arcs {
            let p = &self.r[j] * &self.phi[j];
            if sign > 0 {
                acc += p;
            } else {
                acc -= p;
            }
        }
        acc
    }

    /// Step size `α = round(Δ / r(C))` and the resulting exact energy
    /// decrease `2αΔ - α² r(C)` for cycle `k`, without applying it.
    pub fn step(&self, k: usize) -> Result<(ExactInt, ExactInt, ExactInt), SolveError> {
        let delta = self.cycle_sum(k);
        let rc = &self.cycles[k].resistance;
        let alpha = round_nearest(&delta, rc)?;
        let decrease = &alpha * &delta * 2 - &(&alpha * &alpha) * rc;
        Ok((alpha, delta, decrease))
    }

    pub fn sample_cycle<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<usize> {
        if self.sampler.is_empty() {
            None
        } else {
            Some(self.sampler.sample(rng))
        }
    }

    /// `φ ← φ - α·θ_C`.
    pub fn apply(&mut self, k: usize, alpha: &ExactInt) {
        if alpha.is_zero() {
            return;
        }
        for &(j, sign) in &self.cycles[k].arcs {
            if sign > 0 {
                self.phi[j] -= alpha;
            } else {
                self.phi[j] += alpha;
            }
        }
    }

    /// One sampled cycle update. Returns the sampled cycle index, or `None`
    /// when the forest has no off-tree arcs.
    pub fn cycle_update<R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
        monitor: &mut BoundMonitor,
    ) -> Result<Option<usize>, SolveError> {
        let Some(k) = self.sample_cycle(rng) else {
            return Ok(None);
        };
        let (alpha, delta, _) = self.step(k)?;
        monitor.record(&delta)?;
        monitor.record(&alpha)?;
        self.apply(k, &alpha);
        self.updates += 1;
        Ok(Some(k))
    }

    /// Recompute voltages and `s'`; returns `(exit, Σ|x'_a s'_a - μ'|)`.
    /// Exit requires `x' > 0`, `s' > 0` and `8·Σ|x' s' - μ'| < μ'`.
    pub fn refresh_and_check(
        &mut self,
        monitor: &mut BoundMonitor,
    ) -> Result<(bool, ExactInt), SolveError> {
        self.pi = self.tree.voltages(self.minor, &self.phi, &self.r);
        let drop = self.minor.apply_incidence_transpose(&self.pi);
        let mut sum = ExactInt::zero();
        let mut positive = true;
        for i in 0..self.minor.arc_count() {
            let xp = &self.phi[i] + &self.base[i];
            let sp = &self.s[i] - &drop[i];
            monitor.record(&xp)?;
            monitor.record(&sp)?;
            monitor.record(&self.phi[i])?;
            positive &= xp.is_positive() && sp.is_positive();
            sum += (&xp * &sp - &self.mu).abs();
            self.s_prime[i] = sp;
        }
        monitor.record_all(&self.pi)?;
        let exit = positive && sum.clone() * 8 < self.mu;
        Ok((exit, sum))
    }

    /// Default stall ceiling `2^6 · m_H · ceil(τ(T)) · bits(μ₀)`.
    pub fn stall_ceiling(&self, mu0_bits: u64) -> u64 {
        let tau = self.tau.ceil().to_i64().map(|t| t.max(0) as u64).unwrap_or(u64::MAX);
        64u64
            .saturating_mul(self.minor.arc_count() as u64)
            .saturating_mul(tau)
            .saturating_mul(mu0_bits.max(1))
    }
}

/// Result of one centering step, indexed by minor arc / minor class.
#[derive(Clone, Debug)]
pub struct CenteringOutcome {
    pub x: Vec<ExactInt>,
    pub s: Vec<ExactInt>,
    /// Class potentials; the dual update is `Δy = π` per class.
    pub pi: Vec<ExactInt>,
    pub updates: u64,
    pub deviation_sum: ExactInt,
}

/// Run cycle updates until the exact centrality check for `mu` passes.
pub fn centering_step<R: Rng + ?Sized>(
    minor: &MinorView,
    x: &[ExactInt],
    s: &[ExactInt],
    mu: &ExactInt,
    rng: &mut R,
    limits: &CenteringLimits,
    monitor: &mut BoundMonitor,
    on_refresh: &mut dyn FnMut(&RefreshRecord),
) -> Result<CenteringOutcome, SolveError> {
    let mut state = CenteringState::init(minor, x, s, mu)?;
    monitor.record_all(&state.r)?;
    monitor.record_all(&state.base)?;
    let ceiling = limits
        .max_updates
        .unwrap_or_else(|| state.stall_ceiling(limits.mu0_bits));
    let interval = limits
        .refresh_interval
        .unwrap_or(minor.arc_count() as u64)
        .max(1);
    loop {
        let (exit, sum) = state.refresh_and_check(monitor)?;
        on_refresh(&RefreshRecord {
            updates: state.updates,
            deviation_sum: sum.clone(),
            max_abs: monitor.max_seen().clone(),
        });
        if exit {
            return Ok(CenteringOutcome {
                x: state.x_prime(),
                s: state.s_prime.clone(),
                pi: state.pi.clone(),
                updates: state.updates,
                deviation_sum: sum,
            });
        }
        for _ in 0..interval {
            if state.updates >= ceiling || state.sampler.is_empty() {
                return Err(SolveError::CenteringStalled {
                    updates: state.updates,
                    ceiling,
                });
            }
            state.cycle_update(rng, monitor)?;
        }
    }
}
