use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ntangle::qstate::{QState, StateSpec};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// `ghz:N`, `w:N` or `dicke:L,N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedState {
    Ghz(usize),
    W(usize),
    Dicke(usize, usize),
}

impl FromStr for NamedState {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("expected ghz:N, w:N or dicke:L,N, got {s:?}");
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let nums = args
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        match (kind.trim().to_ascii_lowercase().as_str(), nums.as_slice()) {
            ("ghz", [n]) => Ok(NamedState::Ghz(*n)),
            ("w", [n]) => Ok(NamedState::W(*n)),
            ("dicke", [l, n]) => Ok(NamedState::Dicke(*l, *n)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for NamedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedState::Ghz(n) => write!(f, "ghz:{n}"),
            NamedState::W(n) => write!(f, "w:{n}"),
            NamedState::Dicke(l, n) => write!(f, "dicke:{l},{n}"),
        }
    }
}

impl NamedState {
    pub fn build(&self) -> ntangle::Result<QState> {
        match *self {
            NamedState::Ghz(n) => QState::ghz(n),
            NamedState::W(n) => QState::w(n),
            NamedState::Dicke(l, n) => QState::dicke(l, n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Descriptor {
    Named { name: String },
    File { path: String, sha256: String },
}

pub struct Loaded {
    pub state: QState,
    pub descriptor: Descriptor,
}

/// How strictly a file's normalization is enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    /// Honor the file's `normalize` flag, otherwise require unit norm.
    Checked,
    /// Take the amplitudes exactly as written.
    Raw,
}

pub fn load_file(path: &Path, norm: Norm) -> Result<Loaded, String> {
    let bytes =
        std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let spec: StateSpec = serde_json::from_slice(&bytes)
        .map_err(|e| format!("{}: not a state spec: {e}", path.display()))?;
    let state = match norm {
        Norm::Checked => spec.to_state(),
        Norm::Raw => spec.to_state_raw(),
    }
    .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Loaded {
        state,
        descriptor: Descriptor::File {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        },
    })
}

pub fn load(named: Option<NamedState>, file: Option<&PathBuf>, norm: Norm) -> Result<Loaded, String> {
    match (named, file) {
        (Some(named), None) => Ok(Loaded {
            state: named.build().map_err(|e| format!("{named}: {e}"))?,
            descriptor: Descriptor::Named {
                name: named.to_string(),
            },
        }),
        (None, Some(path)) => load_file(path, norm),
        _ => Err("exactly one of --named or --file is required".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_grammar() {
        assert_eq!("ghz:4".parse(), Ok(NamedState::Ghz(4)));
        assert_eq!("w:5".parse(), Ok(NamedState::W(5)));
        assert_eq!("dicke:2,4".parse(), Ok(NamedState::Dicke(2, 4)));
        assert_eq!(NamedState::Dicke(3, 6).to_string(), "dicke:3,6");
        for bad in ["ghz", "ghz:x", "w:3,4", "dicke:2", "bell:2", ""] {
            assert!(bad.parse::<NamedState>().is_err(), "{bad}");
        }
    }
}
