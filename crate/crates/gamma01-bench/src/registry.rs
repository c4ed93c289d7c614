//! Sampler registry: the four built-in generators plus a plugin point for
//! externally supplied baselines.
//!
//! No external baseline ships with the harness; registering one makes it
//! appear in the same benchmark CSV alongside the built-ins.

use std::collections::BTreeMap;
use std::sync::Arc;

use gamma01::sampler::SampleStats;
use gamma01::uniform::SeededSource;
use gamma01::Algorithm;

/// A per-parameter prepared sampler: everything that depends on the shape
/// has been computed, only drawing remains.
pub trait PreparedSampler {
    /// Draw one unit-scale variate.
    fn draw(&self, src: &mut SeededSource<f64>, stats: &mut SampleStats) -> f64;
}

/// An externally supplied baseline generator.
///
/// `prepare` performs per-shape setup. The single-draw benchmark setting
/// calls it before every draw; the bulk setting calls it once. Note that
/// boxing in `prepare` adds an allocation to the external sampler's
/// single-draw cost that the built-ins do not pay.
pub trait ExternalSampler: Send + Sync {
    /// Identifier used on the command line and in result files.
    fn id(&self) -> &str;

    /// Build the per-shape state.
    fn prepare(&self, alpha: f64) -> Box<dyn PreparedSampler + '_>;
}

/// A benchmarkable generator: built-in or registered baseline.
#[derive(Clone)]
pub enum BenchTarget {
    /// One of the four built-in generators.
    Builtin(Algorithm),
    /// A registered external baseline.
    External(Arc<dyn ExternalSampler>),
}

impl BenchTarget {
    /// Identifier for result files.
    pub fn id(&self) -> String {
        match self {
            BenchTarget::Builtin(a) => a.id().to_string(),
            BenchTarget::External(e) => e.id().to_string(),
        }
    }
}

/// Name-to-generator resolution for the CLI.
pub struct Registry {
    external: BTreeMap<String, Arc<dyn ExternalSampler>>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::new()
    }
}

impl Registry {
    /// Registry with only the built-in generators.
    pub fn new() -> Self {
        Self {
            external: BTreeMap::new(),
        }
    }

    /// Register an external baseline under its id.
    ///
    /// Returns `false` (and leaves the registry unchanged) if the id clashes
    /// with a built-in or an already registered baseline.
    pub fn register(&mut self, sampler: Arc<dyn ExternalSampler>) -> bool {
        let id = sampler.id().to_string();
        if Algorithm::from_id(&id).is_some() || self.external.contains_key(&id) {
            return false;
        }
        self.external.insert(id, sampler);
        true
    }

    /// Resolve a `--algo` value: a built-in id, a registered baseline id, or
    /// `all` for the four built-ins followed by every registered baseline.
    pub fn resolve(&self, name: &str) -> Option<Vec<BenchTarget>> {
        if name == "all" {
            let mut targets: Vec<BenchTarget> = Algorithm::ALL
                .iter()
                .map(|&a| BenchTarget::Builtin(a))
                .collect();
            targets.extend(self.external.values().cloned().map(BenchTarget::External));
            return Some(targets);
        }
        if let Some(algorithm) = Algorithm::from_id(name) {
            return Some(vec![BenchTarget::Builtin(algorithm)]);
        }
        self.external
            .get(name)
            .map(|e| vec![BenchTarget::External(e.clone())])
    }

    /// Ids of all registered external baselines.
    pub fn external_ids(&self) -> Vec<String> {
        self.external.keys().cloned().collect()
    }
}
