//! Measurement sampling over classical register layouts.
//!
//! Sampling is fully deterministic for a fixed seed: shots are drawn in
//! fixed-size chunks, each chunk from its own ChaCha stream, so the result
//! never depends on threading or iteration order.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::qsim::circuit::ClassicalLayout;
use crate::qsim::state::QuantumState;

const CHUNK_SHOTS: u64 = 1 << 16;

/// Aggregated measurement counts keyed by decoded register values.
///
/// Keys follow the register declaration order of the layout that produced
/// them; `register_names` records that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShotResult {
    register_names: Vec<String>,
    counts: BTreeMap<Vec<u64>, u64>,
    total_shots: u64,
}

impl ShotResult {
    pub fn register_names(&self) -> &[String] {
        &self.register_names
    }

    pub fn counts(&self) -> &BTreeMap<Vec<u64>, u64> {
        &self.counts
    }

    pub fn total_shots(&self) -> u64 {
        self.total_shots
    }

    pub fn count(&self, values: &[u64]) -> u64 {
        self.counts.get(values).copied().unwrap_or(0)
    }

    pub fn frequency(&self, values: &[u64]) -> f64 {
        self.count(values) as f64 / self.total_shots as f64
    }
}

/// Converts a uniform u64 to a double in [0, 1) keeping 53 bits.
fn unit_f64(raw: u64) -> f64 {
    (raw >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

impl QuantumState {
    /// Draws `shots` measurement outcomes and tallies them by the decoded
    /// values of `layout`'s registers.
    ///
    /// The support is measured once, so the cost is the support size plus
    /// `O(shots log support)` for the draws.
    pub fn sample(&self, layout: &ClassicalLayout, shots: u64, seed: u64) -> Result<ShotResult> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        let support = self.support(0.0);
        // Cumulative probabilities over the support, renormalized so the
        // final entry is exactly 1 and every draw lands in range.
        let mut cumulative = Vec::with_capacity(support.len());
        let mut acc = 0.0f64;
        for (_, amp) in &support {
            acc += amp.norm_sqr();
            cumulative.push(acc);
        }
        let total = acc;
        for c in &mut cumulative {
            *c /= total;
        }
        if let Some(last) = cumulative.last_mut() {
            *last = 1.0;
        }

        let mut per_state = alloc::vec![0u64; support.len()];
        let chunks = shots.div_ceil(CHUNK_SHOTS);
        for chunk in 0..chunks {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let in_chunk = (shots - chunk * CHUNK_SHOTS).min(CHUNK_SHOTS);
            for _ in 0..in_chunk {
                let u = unit_f64(rng.next_u64());
                let idx = cumulative.partition_point(|&c| c <= u);
                per_state[idx.min(support.len() - 1)] += 1;
            }
        }

        let mut counts: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
        for (slot, &n) in per_state.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let values = layout.decode(support[slot].0);
            *counts.entry(values).or_insert(0) += n;
        }
        Ok(ShotResult {
            register_names: layout.names().map(String::from).collect(),
            counts,
            total_shots: shots,
        })
    }
}
