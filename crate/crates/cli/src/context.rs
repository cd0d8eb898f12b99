use std::io::Write;
use std::path::PathBuf;

use parahoric_core::affine_weyl::{AffineWeylGroup, Facet};
use parahoric_core::notation::parse_index_list;
use parahoric_core::{CartanDatum, RootDatum};
use serde::Serialize;

use crate::cache::DiskCache;
use crate::cli::GlobalArgs;
use crate::config::SessionConfig;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Flags merged over the session file.
pub struct Context {
    pub global: GlobalArgs,
    pub config: SessionConfig,
}

impl Context {
    pub fn new(global: GlobalArgs) -> CliResult<Self> {
        let config = match &global.config {
            Some(path) => SessionConfig::load(path)?,
            None => SessionConfig::default(),
        };
        Ok(Context { global, config })
    }

    pub fn format(&self, default: Format) -> Format {
        if self.global.json {
            Format::Json
        } else if self.global.text {
            Format::Text
        } else {
            default
        }
    }

    pub fn datum(&self, arg: Option<&str>) -> CliResult<RootDatum> {
        let spec = arg
            .or(self.config.datum.as_deref())
            .ok_or_else(|| CliError::Usage("no root datum given".into()))?;
        Ok(RootDatum::build(CartanDatum::parse(spec)?)?)
    }

    pub fn group(&self, arg: Option<&str>) -> CliResult<AffineWeylGroup> {
        let mut g = AffineWeylGroup::new(self.datum(arg)?);
        if let Some(cap) = self.global.interval_cap.or(self.config.interval_cap) {
            if cap == 0 {
                return Err(CliError::Usage("interval cap must be positive".into()));
            }
            g = g.with_interval_cap(cap);
        }
        Ok(g)
    }

    /// The facet from the flag, else the session file, else the Iwahori level.
    pub fn facet(&self, g: &AffineWeylGroup, arg: Option<&str>) -> CliResult<Facet> {
        let indices = match (arg, &self.config.facet) {
            (Some(s), _) => parse_index_list(s)?,
            (None, Some(list)) => list.resolve()?,
            (None, None) => Vec::new(),
        };
        Ok(g.facet(&indices)?)
    }

    pub fn levi(&self, arg: Option<&str>) -> CliResult<Vec<usize>> {
        match (arg, &self.config.levi) {
            (Some(s), _) => Ok(parse_index_list(s)?),
            (None, Some(list)) => list.resolve(),
            (None, None) => Ok(Vec::new()),
        }
    }

    pub fn prime(&self, arg: Option<u64>) -> CliResult<u64> {
        arg.or(self.config.prime)
            .ok_or_else(|| CliError::Usage("no prime given (--p)".into()))
    }

    pub fn length_cap(&self, arg: Option<usize>, what: &str) -> CliResult<usize> {
        arg.or(self.config.length_cap)
            .ok_or_else(|| CliError::Usage(format!("no length bound given ({what})")))
    }

    pub fn chain_cap(&self, arg: Option<usize>) -> Option<usize> {
        arg.or(self.config.chain_cap)
    }

    pub fn cache_dir(&self) -> Option<PathBuf> {
        if self.global.no_cache || self.config.no_cache == Some(true) {
            return None;
        }
        self.global.cache_dir.clone().or_else(|| self.config.cache_dir.clone())
    }

    pub fn require_cache(&self) -> CliResult<DiskCache> {
        let dir = self
            .cache_dir()
            .ok_or_else(|| CliError::Precondition("no cache directory configured".into()))?;
        DiskCache::open(&dir)
    }

    /// Runs `f` with the group's interval memo backed by the disk cache, if any.
    pub fn cached<T>(
        &self,
        g: &AffineWeylGroup,
        f: impl FnOnce(&AffineWeylGroup) -> CliResult<T>,
    ) -> CliResult<T> {
        match self.cache_dir() {
            None => f(g),
            Some(dir) => {
                let cache = DiskCache::open(&dir)?;
                let session = cache.load(g)?;
                let out = f(g);
                cache.store(g, &session)?;
                out
            }
        }
    }
}

/// Writes one line to stdout. A closed pipe ends the process quietly.
pub fn write_line(args: std::fmt::Arguments<'_>) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{args}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(5);
    }
}

macro_rules! outln {
    ($($arg:tt)*) => {
        $crate::context::write_line(format_args!($($arg)*))
    };
}
pub(crate) use outln;

pub fn print_json<T: Serialize>(value: &T) {
    outln!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
}
