//! Seeded Monte Carlo surveys of `N[G(n, p)]`.
//!
//! Every trial draws its graph from a seed derived from the master seed and
//! the trial's coordinates, so results never depend on the worker schedule.

mod io;
mod summary;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use io::{
    parse_records, read_records, records_to_csv, records_to_jsonl, summary_to_csv, write_records,
    write_summary, RecordFormat,
};
pub use summary::{aggregate, betti_sweep, count_local_maxima, PointSummary, SurveySummary};

use crate::caps::Caps;
use crate::certificates::find_sphere_certificates;
use crate::complex::neighborliness;
use crate::error::{Error, Result};
use crate::graph::{clique_number, gnp_sample, Graph, GnpParams};
use crate::homology::{betti0_from_skeleton, graph_homology_auto, Coefficients, HomologyRoute};

/// Which per-trial statistics to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Features {
    pub homology: bool,
    pub neighborliness: bool,
    pub certificates: bool,
    pub clique_stats: bool,
}

impl Default for Features {
    fn default() -> Self {
        Features {
            homology: true,
            neighborliness: true,
            certificates: true,
            clique_stats: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub p_grid: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    pub max_dim: usize,
    #[serde(default)]
    pub features: Features,
    #[serde(default)]
    pub caps: Caps,
    /// Largest `n` for which homology is computed through `max_dim` without
    /// a further dimension cap.
    #[serde(default = "default_full_homology_vertices")]
    pub full_homology_vertices: usize,
    /// Largest `n` for which capped homology (at most dimension 4) runs.
    /// Above it only `β̃_0` from the 1-skeleton is recorded.
    #[serde(default = "default_capped_homology_vertices")]
    pub capped_homology_vertices: usize,
    /// Records per-trial wall time. Off by default, since timings make the
    /// output irreproducible.
    #[serde(default)]
    pub record_timing: bool,
}

fn default_full_homology_vertices() -> usize {
    12
}

fn default_capped_homology_vertices() -> usize {
    30
}

/// Dimension cap for homology when `n` lies between the two limits.
pub const CAPPED_MAX_DIM: usize = 4;

impl ExperimentConfig {
    pub fn new(n: usize, p_grid: Vec<f64>, trials: usize, master_seed: u64, max_dim: usize) -> Self {
        ExperimentConfig {
            n,
            p_grid,
            trials,
            master_seed,
            max_dim,
            features: Features::default(),
            caps: Caps::default(),
            full_homology_vertices: default_full_homology_vertices(),
            capped_homology_vertices: default_capped_homology_vertices(),
            record_timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::argument("trials must be at least 1"));
        }
        if self.p_grid.is_empty() {
            return Err(Error::argument("the p grid is empty"));
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::argument(format!("edge probability {p} outside [0, 1]")));
        }
        if self.n == 0 {
            return Err(Error::argument("n must be positive"));
        }
        Ok(())
    }

    /// How homology is computed for this configuration's `n`.
    pub fn homology_mode(&self) -> HomologyMode {
        if !self.features.homology {
            HomologyMode::Off
        } else if self.n <= self.full_homology_vertices {
            HomologyMode::Full
        } else if self.n <= self.capped_homology_vertices {
            HomologyMode::Capped
        } else {
            HomologyMode::Skeleton
        }
    }

    /// Highest dimension reported in the Betti vectors.
    pub fn reported_max_dim(&self) -> usize {
        match self.homology_mode() {
            HomologyMode::Full => self.max_dim,
            HomologyMode::Capped => self.max_dim.min(CAPPED_MAX_DIM),
            HomologyMode::Skeleton | HomologyMode::Off => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomologyMode {
    /// Exact homology through `max_dim`.
    Full,
    /// Homology through `min(max_dim, 4)`.
    Capped,
    /// Only `β̃_0`, from the 1-skeleton.
    Skeleton,
    Off,
}

/// One sampled graph and what was measured on it. Optional fields are
/// `None` when the feature is off or the computation failed; failures are
/// listed in `failures`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub p_index: usize,
    pub p: f64,
    pub trial_index: usize,
    pub derived_seed: u64,
    pub edge_count: usize,
    pub clique_number: Option<usize>,
    pub neighborliness: Option<usize>,
    pub closed_set_count: Option<usize>,
    pub retract_dimension: Option<i64>,
    pub route: Option<HomologyRoute>,
    /// Reduced Betti numbers through the reported dimension; empty when
    /// homology was not computed.
    pub betti: Vec<u64>,
    pub truncated: bool,
    pub torsion_seen: bool,
    pub empty_complex: bool,
    /// Sphere dimensions of the validated certificates.
    pub certificates: Vec<usize>,
    pub failures: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `trial_index` at grid point `p_index`.
pub fn derive_seed(master_seed: u64, p_index: usize, trial_index: usize) -> u64 {
    let h = splitmix64(master_seed);
    let h = splitmix64(h ^ p_index as u64);
    splitmix64(h ^ (trial_index as u64).rotate_left(32))
}

/// The graph a record was measured on.
pub fn regenerate_graph(cfg: &ExperimentConfig, record: &TrialRecord) -> Result<Graph> {
    gnp_sample(&GnpParams::new(cfg.n, record.p, record.derived_seed)?)
}

/// Runs every `(p, trial)` pair, on at most `jobs` worker threads when
/// given, and returns the records sorted by `(p_index, trial_index)`.
pub fn run_survey(cfg: &ExperimentConfig, jobs: Option<usize>) -> Result<Vec<TrialRecord>> {
    cfg.validate()?;
    let tasks: Vec<(usize, usize)> = (0..cfg.p_grid.len())
        .flat_map(|pi| (0..cfg.trials).map(move |t| (pi, t)))
        .collect();
    let run = || -> Vec<TrialRecord> {
        tasks
            .par_iter()
            .map(|&(pi, t)| run_trial(cfg, pi, t))
            .collect()
    };
    let mut records = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::argument(format!("cannot start worker pool: {e}")))?
            .install(run),
        None => run(),
    };
    records.sort_by_key(|r| (r.p_index, r.trial_index));
    Ok(records)
}

/// Runs a single trial. Errors are recorded in the record, never returned.
pub fn run_trial(cfg: &ExperimentConfig, p_index: usize, trial_index: usize) -> TrialRecord {
    let start = Instant::now();
    let p = cfg.p_grid[p_index];
    let seed = derive_seed(cfg.master_seed, p_index, trial_index);
    let mut rec = TrialRecord {
        p_index,
        p,
        trial_index,
        derived_seed: seed,
        edge_count: 0,
        clique_number: None,
        neighborliness: None,
        closed_set_count: None,
        retract_dimension: None,
        route: None,
        betti: Vec::new(),
        truncated: false,
        torsion_seen: false,
        empty_complex: false,
        certificates: Vec::new(),
        failures: Vec::new(),
        wall_time_ms: None,
    };
    let g = match GnpParams::new(cfg.n, p, seed).and_then(|params| gnp_sample(&params)) {
        Ok(g) => g,
        Err(e) => {
            rec.failures.push(format!("sampling: {e}"));
            return rec;
        }
    };
    rec.edge_count = g.edge_count();
    rec.empty_complex = g.edge_count() == 0;
    let caps = &cfg.caps;

    if cfg.features.clique_stats {
        match clique_number(&g, caps) {
            Ok(w) => rec.clique_number = Some(w),
            Err(e) => rec.failures.push(format!("clique_number: {e}")),
        }
    }
    if cfg.features.neighborliness {
        match neighborliness(&g, caps) {
            Ok(i) => rec.neighborliness = Some(i),
            Err(e) => rec.failures.push(format!("neighborliness: {e}")),
        }
    }
    match cfg.homology_mode() {
        HomologyMode::Full | HomologyMode::Capped => {
            let dim = cfg.reported_max_dim();
            match graph_homology_auto(&g, Some(dim), Coefficients::Z, caps) {
                Ok(h) => {
                    rec.closed_set_count = h.closed_sets;
                    rec.retract_dimension = h.retract_dimension;
                    rec.route = Some(h.route);
                    rec.torsion_seen = h.result.has_torsion();
                    rec.truncated = h.result.truncated;
                    rec.betti = h.result.betti;
                }
                Err(e) => rec.failures.push(format!("homology: {e}")),
            }
        }
        HomologyMode::Skeleton => rec.betti = vec![betti0_from_skeleton(&g)],
        HomologyMode::Off => {}
    }
    if cfg.features.certificates {
        match find_sphere_certificates(&g, caps) {
            Ok(certs) => rec.certificates = certs.iter().map(|c| c.sphere_dim).collect(),
            Err(e) => rec.failures.push(format!("certificates: {e}")),
        }
    }
    if cfg.record_timing {
        rec.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    rec
}
