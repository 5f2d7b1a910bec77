//! The example rings: exterior E and E(n), cube C with its truncations,
//! the Rado algebra Q, and the epsilon_0-algebra A.

pub mod cube;
pub mod epsilon;
pub mod exterior;
pub mod rado;

use crate::engine::RingEngine;
use crate::error::Error;
use crate::Result;
use std::sync::Arc;

/// Resolve a ring spec string (`exterior`, `exterior(n)`, `cube`,
/// `cube(n,m)`, `cube-bar(n,m)`, `rado`, `epsilon`) into an engine.
pub fn resolve(spec: &str, dmax: i64) -> Result<Arc<dyn RingEngine>> {
    let spec = spec.trim();
    let (name, args) = match spec.find('(') {
        Some(p) => {
            let inner = spec[p..]
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::parse(format!("bad ring spec `{spec}`")))?;
            let args: Vec<i64> = inner
                .split(',')
                .map(|a| {
                    a.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::parse(format!("bad ring parameter `{a}`: {e}")))
                })
                .collect::<Result<_>>()?;
            (&spec[..p], args)
        }
        None => (spec, Vec::new()),
    };
    match (name, args.as_slice()) {
        ("exterior", []) => Ok(exterior::ExteriorEngine::full(dmax) as Arc<dyn RingEngine>),
        ("exterior", [n]) => Ok(exterior::ExteriorEngine::truncated(*n as u32, dmax)?),
        ("cube", []) => Ok(cube::CubeEngine::full(0, dmax)?),
        ("cube", [n, m]) => Ok(cube::CubeEngine::truncated(*n as u32, *m as u32, dmax)?),
        ("cube-bar", [n, m]) => Ok(cube::CubeEngine::bar(*n as u32, *m as u32, dmax)?),
        ("rado", []) => Ok(rado::RadoEngine::new(dmax)),
        ("epsilon", []) => Ok(epsilon::EpsilonEngine::new(dmax)),
        _ => Err(Error::parse(format!("unknown ring spec `{spec}`"))),
    }
}
