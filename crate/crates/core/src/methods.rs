//! Uniform front end over the clustering methods.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines::{cnm_greedy, eig_bisect, louvain, LouvainConfig};
use crate::error::{Error, Result};
use crate::graph::{modularity, Clustering, Graph};
use crate::sdp::{sdpm, SdpmConfig, SdpmReport, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Cnm,
    Eig,
    Louvain,
    Sdpm,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Cnm, Method::Eig, Method::Louvain, Method::Sdpm];

    pub fn name(self) -> &'static str {
        match self {
            Method::Cnm => "cnm",
            Method::Eig => "eig",
            Method::Louvain => "louvain",
            Method::Sdpm => "sdpm",
        }
    }

    pub fn run(self, g: &Graph, opts: &MethodOptions) -> Result<MethodOutcome> {
        let (clustering, report) = match self {
            Method::Cnm => (cnm_greedy(g)?, None),
            Method::Eig => (eig_bisect(g)?, None),
            Method::Louvain => (
                louvain(
                    g,
                    &LouvainConfig {
                        repeats: opts.repeats,
                        seed: opts.seed,
                    },
                )?,
                None,
            ),
            Method::Sdpm => {
                let cfg = SdpmConfig {
                    solver: SolverConfig {
                        seed: opts.seed,
                        ..opts.solver.clone()
                    },
                    trials: opts.trials,
                    seed: opts.seed,
                };
                let r = sdpm(g, &cfg)?;
                (r.clustering.clone(), Some(r))
            }
        };
        let q = modularity(g, &clustering)?;
        Ok(MethodOutcome {
            method: self,
            clustering,
            q,
            sdpm: report,
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?} (expected cnm, eig, louvain or sdpm)")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MethodOptions {
    pub seed: u64,
    /// Rounding trials per hyperplane count (SDPM).
    pub trials: usize,
    /// Independent runs (Louvain).
    pub repeats: usize,
    /// Solver settings (SDPM); its seed is replaced by `seed`.
    pub solver: SolverConfig,
}

impl Default for MethodOptions {
    fn default() -> Self {
        MethodOptions {
            seed: 0,
            trials: 1000,
            repeats: 20,
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MethodOutcome {
    pub method: Method,
    pub clustering: Clustering,
    pub q: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sdpm: Option<SdpmReport>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("kmeans".parse::<Method>().is_err());
        assert_eq!("SDPM".parse::<Method>().unwrap(), Method::Sdpm);
    }

    #[test]
    fn every_method_on_two_edges() {
        let g = Graph::from_unweighted(4, [(0, 1), (2, 3)]).unwrap();
        for m in Method::ALL {
            let out = m.run(&g, &MethodOptions::default()).unwrap();
            assert!((out.q - 0.5).abs() < 1e-12, "{m}: {}", out.q);
        }
    }
}
