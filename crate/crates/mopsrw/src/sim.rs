//! Monte Carlo walks on the truncated stochastic systems, checked against
//! the exactly computed r-step transition probabilities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{rat_to_f64, Rat};
use crate::stochastic::{Kind, RowBalance, StochasticSystem};
use num::traits::{One, Zero};

/// Largest upward jump of a single step: type II rows reach one state up,
/// type I rows reach two.
pub fn up_span(kind: Kind) -> usize {
    match kind {
        Kind::TypeII => 1,
        Kind::TypeI => 2,
    }
}

/// A walk specification. The truncation must hold start + up*steps + 1
/// states (up = 1 or 2 by kind) so that no sampled row is clipped and the
/// boundary stays unreachable; row deficits then only ever come from genuine
/// sink states.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub system: StochasticSystem,
    pub start: usize,
    pub steps: usize,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub start: usize,
    pub steps: usize,
    pub samples: u64,
    /// end-state visit counts
    pub counts: Vec<u64>,
    /// walks absorbed by a row deficit before completing all steps
    pub destroyed: u64,
    /// exact r-step row of the truncated matrix power
    pub exact: Vec<Rat>,
    pub exact_destroyed: Rat,
    /// (freq - p) / sqrt(p(1-p)/samples) per end state
    pub z: Vec<f64>,
    pub z_destroyed: f64,
}

impl SimReport {
    pub fn frequency(&self, m: usize) -> f64 {
        self.counts[m] as f64 / self.samples as f64
    }

    pub fn destroyed_fraction(&self) -> f64 {
        self.destroyed as f64 / self.samples as f64
    }

    /// counts plus destroyed walks account for every sample
    pub fn conservation_ok(&self) -> bool {
        self.counts.iter().sum::<u64>() + self.destroyed == self.samples
    }

    /// share of end states whose z-score is within the given band
    pub fn within_sigma(&self, band: f64) -> f64 {
        if self.z.is_empty() {
            return 1.0;
        }
        let ok = self.z.iter().filter(|z| z.abs() <= band).count();
        ok as f64 / self.z.len() as f64
    }

    pub fn max_abs_z(&self) -> f64 {
        self.z.iter().fold(0.0_f64, |m, z| m.max(z.abs()))
    }
}

fn z_score(count: u64, p: f64, samples: u64) -> f64 {
    let k = samples as f64;
    let freq = count as f64 / k;
    let var = p * (1.0 - p) / k;
    if var > 0.0 {
        (freq - p) / var.sqrt()
    } else if freq == p {
        0.0
    } else {
        f64::INFINITY * (freq - p).signum()
    }
}

/// Runs the walks. Samples are independent ChaCha streams keyed by the
/// sample index, so the report does not depend on thread scheduling.
pub fn simulate(cfg: &SimConfig) -> Result<SimReport> {
    let sys = &cfg.system;
    let n_states = sys.p.n;
    let up = up_span(sys.kind);
    let need = cfg.start + up * cfg.steps + 1;
    if n_states < need {
        return Err(Error::Window(format!(
            "truncation holds {n_states} states, the walk needs {need}"
        )));
    }
    if cfg.samples == 0 {
        return Err(Error::Domain("sample count must be positive".into()));
    }
    for (i, balance) in sys.row_balance.iter().enumerate() {
        if let RowBalance::Source(e) = balance {
            return Err(Error::Domain(format!(
                "row {i} exceeds unit sum by {e}; the system is not simulable",
                e = crate::rational::fmt_rat(e)
            )));
        }
    }

    // cumulative outcome thresholds per row; stochastic rows are capped at
    // exactly 1 so float rounding cannot fake an absorption
    let table: Vec<Vec<(f64, usize)>> = (0..n_states)
        .map(|i| {
            let mut cum = 0.0_f64;
            let mut row: Vec<(f64, usize)> = sys
                .p
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| {
                    cum += rat_to_f64(v);
                    (cum, j)
                })
                .collect();
            if sys.row_balance[i] == RowBalance::Stochastic {
                if let Some(last) = row.last_mut() {
                    last.0 = 1.0;
                }
            }
            row
        })
        .collect();

    let (counts, destroyed) = (0..cfg.samples)
        .into_par_iter()
        .fold(
            || (vec![0u64; n_states], 0u64),
            |(mut counts, mut destroyed), sample| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(sample);
                let mut state = cfg.start;
                let mut alive = true;
                for _ in 0..cfg.steps {
                    let u: f64 = rng.gen();
                    match table[state].iter().find(|(c, _)| u < *c) {
                        Some(&(_, next)) => state = next,
                        None => {
                            alive = false;
                            break;
                        }
                    }
                }
                if alive {
                    counts[state] += 1;
                } else {
                    destroyed += 1;
                }
                (counts, destroyed)
            },
        )
        .reduce(
            || (vec![0u64; n_states], 0u64),
            |(mut ca, da), (cb, db)| {
                for (a, b) in ca.iter_mut().zip(cb) {
                    *a += b;
                }
                (ca, da + db)
            },
        );

    let mut exact = vec![Rat::zero(); n_states];
    exact[cfg.start] = Rat::one();
    for _ in 0..cfg.steps {
        exact = sys.p.apply_left(&exact);
    }
    let exact_destroyed = Rat::one() - exact.iter().sum::<Rat>();
    let z = exact
        .iter()
        .enumerate()
        .map(|(m, p)| z_score(counts[m], rat_to_f64(p), cfg.samples))
        .collect();
    let z_destroyed = z_score(destroyed, rat_to_f64(&exact_destroyed), cfg.samples);

    Ok(SimReport {
        start: cfg.start,
        steps: cfg.steps,
        samples: cfg.samples,
        counts,
        destroyed,
        exact,
        exact_destroyed,
        z,
        z_destroyed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stochastic::{normalized_system, stochastic_normalize, SigmaKind};
    use crate::tuple::Tuple;
    use num::Signed;

    fn recurrent_system(n: usize) -> StochasticSystem {
        let t = Tuple::parse("1/3,2/3,1/2,1").unwrap();
        stochastic_normalize(&t, n, Kind::TypeI).unwrap()
    }

    #[test]
    fn no_steps_leaves_all_mass_at_the_start() {
        let cfg = SimConfig {
            system: recurrent_system(6),
            start: 3,
            steps: 0,
            samples: 10_000,
            seed: 7,
        };
        let rep = simulate(&cfg).unwrap();
        assert_eq!(rep.counts[3], 10_000);
        assert_eq!(rep.destroyed, 0);
        assert_eq!(rep.exact[3], Rat::one());
        assert!(rep.conservation_ok());
        assert_eq!(rep.max_abs_z(), 0.0);
    }

    #[test]
    fn identical_seeds_reproduce_the_report() {
        let cfg = SimConfig {
            system: recurrent_system(10),
            start: 2,
            steps: 3,
            samples: 50_000,
            seed: 42,
        };
        let a = simulate(&cfg).unwrap();
        let b = simulate(&cfg).unwrap();
        assert_eq!(a, b);
        let other = simulate(&SimConfig { seed: 43, ..cfg }).unwrap();
        assert_ne!(a.counts, other.counts);
    }

    #[test]
    fn recurrent_walk_tracks_the_exact_distribution() {
        let cfg = SimConfig {
            system: recurrent_system(16),
            start: 3,
            steps: 6,
            samples: 1_000_000,
            seed: 20260814,
        };
        let rep = simulate(&cfg).unwrap();
        assert!(rep.conservation_ok());
        assert_eq!(rep.destroyed, 0);
        assert_eq!(rep.exact_destroyed, Rat::zero());
        assert!(rep.within_sigma(4.0) >= 0.95, "z = {:?}", rep.z);
    }

    #[test]
    fn sink_chain_destroys_the_predicted_mass() {
        let t = Tuple::parse("4/3,5/3,2,5/2").unwrap();
        let sys = normalized_system(&t, 12, Kind::TypeI, SigmaKind::Geometric).unwrap();
        let cfg = SimConfig {
            system: sys,
            start: 0,
            steps: 5,
            samples: 400_000,
            seed: 11,
        };
        let rep = simulate(&cfg).unwrap();
        assert!(rep.conservation_ok());
        assert!(rep.exact_destroyed.is_positive());
        assert!(rep.z_destroyed.abs() <= 4.0, "z = {}", rep.z_destroyed);
        assert!(rep.within_sigma(4.0) >= 0.95, "z = {:?}", rep.z);
    }

    #[test]
    fn source_rows_are_not_simulable() {
        let t = Tuple::parse("1/3,2/3,1/2,1").unwrap();
        let sys = normalized_system(&t, 8, Kind::TypeII, SigmaKind::Geometric).unwrap();
        let cfg = SimConfig {
            system: sys,
            start: 0,
            steps: 2,
            samples: 100,
            seed: 1,
        };
        assert!(matches!(simulate(&cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn window_checks_respect_the_upward_reach() {
        let cfg = SimConfig {
            system: recurrent_system(15),
            start: 3,
            steps: 6,
            samples: 10,
            seed: 1,
        };
        assert!(matches!(simulate(&cfg), Err(Error::Window(_))));
        let t = Tuple::parse("1/3,2/3,1/2,1").unwrap();
        let ii = stochastic_normalize(&t, 10, Kind::TypeII).unwrap();
        let cfg = SimConfig {
            system: ii,
            start: 3,
            steps: 6,
            samples: 1_000,
            seed: 1,
        };
        let rep = simulate(&cfg).unwrap();
        assert!(rep.conservation_ok());
        assert_eq!(rep.destroyed, 0);
    }
}
