//! Loading algebras and running explorations, shared by the CLI and the
//! verification checks.

use std::fs;
use std::path::{Path, PathBuf};

use silt_core::algebra::{Algebra, Presentation};
use silt_core::exactmat::{PrimeField, DEFAULT_PRIME};
use silt_core::explorer::{self, ExchangeQuiver, Limits, WaveExecutor};
use silt_core::orders::Family;

use crate::cache::{cache_key, Cache, CachedRun};
use crate::formats::{AlgebraFile, InputError, PosetJson};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Builtin(Family),
    File(PathBuf),
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: String, source: InputError },
    #[error(transparent)]
    Core(#[from] silt_core::Error),
}

pub struct Loaded {
    pub algebra: Algebra,
    /// Normalized echo of the presentation.
    pub echo: AlgebraFile,
    pub family: Option<Family>,
}

pub fn load(source: &Source, prime: Option<u32>) -> Result<Loaded, LoadError> {
    match source {
        Source::Builtin(f) => {
            let field = PrimeField::new(prime.unwrap_or(DEFAULT_PRIME))?;
            let algebra = f.build(field)?;
            Ok(Loaded {
                echo: AlgebraFile::from_presentation(algebra.presentation()),
                algebra,
                family: Some(*f),
            })
        }
        Source::File(path) => {
            let pres = read_presentation(path, prime)?;
            let algebra = Algebra::build(pres)?;
            Ok(Loaded {
                echo: AlgebraFile::from_presentation(algebra.presentation()),
                algebra,
                family: None,
            })
        }
    }
}

fn read_presentation(path: &Path, prime: Option<u32>) -> Result<Presentation, LoadError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: name.clone(),
        source,
    })?;
    AlgebraFile::parse(&text)
        .and_then(|f| f.presentation(prime))
        .map_err(|source| LoadError::Input { path: name, source })
}

pub struct Exploration {
    pub poset: PosetJson,
    /// `None` when the run hit a limit.
    pub hasse_check: Option<bool>,
    pub from_cache: bool,
}

pub fn explore_checked<E: WaveExecutor>(
    alg: &Algebra,
    limits: Limits,
    exec: &E,
) -> silt_core::Result<(ExchangeQuiver, Option<bool>)> {
    let eq = explorer::explore_with(alg, limits, exec)?;
    let check = if eq.complete { Some(explorer::hasse_check(alg, &eq)?) } else { None };
    Ok((eq, check))
}

/// Explores, consulting and filling the cache when one is given.
pub fn explore_cached<E: WaveExecutor>(
    loaded: &Loaded,
    limits: Limits,
    exec: &E,
    cache: Option<&Cache>,
) -> Result<Exploration, Box<dyn std::error::Error>> {
    let key = cache_key(&loaded.echo, limits);
    if let Some(hit) = cache.and_then(|c| c.load(&key)) {
        if hit.poset.algebra == loaded.echo {
            return Ok(Exploration {
                poset: hit.poset,
                hasse_check: hit.hasse_check,
                from_cache: true,
            });
        }
    }
    let (eq, hasse_check) = explore_checked(&loaded.algebra, limits, exec)?;
    let poset = PosetJson::new(loaded.echo.clone(), &eq);
    if let Some(c) = cache {
        let run = CachedRun {
            hasse_check,
            poset: poset.clone(),
        };
        c.store(&key, &run)?;
    }
    Ok(Exploration {
        poset,
        hasse_check,
        from_cache: false,
    })
}
