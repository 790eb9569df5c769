//! Size limits shared by the expensive operations.

use crate::error::{Error, Result};

pub const CAPS_ENV: &str = "CYCLESPACE_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Vertex limit for automorphism search and family constructors.
    pub max_vertices: usize,
    /// Group closure limit.
    pub max_group: usize,
    /// Largest group the averaging strategies will enumerate.
    pub max_averaging_group: usize,
    /// Edge limit for dense |E|x|E| projection matrices.
    pub max_dense_edges: usize,
    /// Largest torus side accepted by the table commands.
    pub max_torus_n: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_vertices: 256,
            max_group: 1_000_000,
            max_averaging_group: 10_000,
            max_dense_edges: 400,
            max_torus_n: 7,
        }
    }
}

impl Caps {
    /// Parses `key=value` pairs separated by commas, e.g. `vertices=512,group=2000000`.
    /// Unmentioned keys keep their defaults.
    pub fn parse(spec: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap {part:?} is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("cap value {value:?} is not an integer")))?;
            match key.trim() {
                "vertices" => caps.max_vertices = value,
                "group" => caps.max_group = value,
                "averaging" => caps.max_averaging_group = value,
                "edges" => caps.max_dense_edges = value,
                "torus" => caps.max_torus_n = value,
                other => return Err(Error::Parse(format!("unknown cap {other:?}"))),
            }
        }
        Ok(caps)
    }

    /// Defaults overridden by `CYCLESPACE_CAPS` when it is set.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAPS_ENV) {
            Ok(spec) => Caps::parse(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }

    pub(crate) fn check(what: &'static str, requested: usize, limit: usize) -> Result<()> {
        if requested > limit {
            Err(Error::SizeCapExceeded {
                what,
                requested,
                limit,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_overrides() {
        let caps = Caps::parse("vertices=10, group=99").unwrap();
        assert_eq!(caps.max_vertices, 10);
        assert_eq!(caps.max_group, 99);
        assert_eq!(caps.max_dense_edges, Caps::default().max_dense_edges);
        assert!(Caps::parse("bogus=1").is_err());
        assert!(Caps::parse("vertices").is_err());
        assert_eq!(Caps::parse("").unwrap(), Caps::default());
    }
}
