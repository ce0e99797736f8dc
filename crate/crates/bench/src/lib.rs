//! Shared fixtures for the criterion benches.

use pragpal_core::{init_path, PathConfig, PathWindow, SeededRandomSource, SimOptions, StopCondition};

/// The 24 x 17 room with prototype parameters.
pub fn prototype(seed: u64) -> PathConfig {
    PathConfig::prototype(seed)
}

/// A freshly initialized window and the rng positioned right after it.
pub fn warm_window(seed: u64) -> (PathConfig, PathWindow, SeededRandomSource) {
    let config = prototype(seed);
    let mut rng = SeededRandomSource::new(seed);
    let (window, _) = init_path(&config, &mut rng).expect("prototype config is valid");
    (config, window, rng)
}

pub fn advances(count: u64) -> SimOptions {
    SimOptions {
        stop: StopCondition::Advances { count },
        sample_every: 10,
        ..SimOptions::default()
    }
}
