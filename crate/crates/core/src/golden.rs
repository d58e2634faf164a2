//! Reference tables shipped with the crate: the genus 2 pair series on
//! `K3 x K3` and the `T*P^2` invariants in degrees `d <= 3`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

const BUILTIN: &str = include_str!("../data/golden.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub d: u64,
    #[serde(with = "rational::as_str")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsEntry {
    pub n: i64,
    pub d: u64,
    pub insertion: String,
    #[serde(with = "rational::as_str")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GvEntry {
    pub g: u8,
    pub d: u64,
    pub insertion: String,
    #[serde(with = "rational::as_str")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tp2Golden {
    pub pairs: Vec<PairsEntry>,
    pub gv: Vec<GvEntry>,
}

impl Tp2Golden {
    pub fn pairs_value(&self, n: i64, d: u64) -> Option<&PairsEntry> {
        self.pairs.iter().find(|e| e.n == n && e.d == d)
    }

    pub fn gv_value(&self, g: u8, d: u64) -> Option<&GvEntry> {
        self.gv.iter().find(|e| e.g == g && e.d == d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Golden {
    pub genus2_series: Vec<SeriesEntry>,
    pub tp2: Tp2Golden,
}

impl Golden {
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("bundled golden data parses")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Invalid(format!("golden file: {e}")))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn builtin_parses() {
        let g = Golden::builtin();
        assert_eq!(g.genus2_series.len(), 6);
        assert_eq!(g.genus2_series[0], SeriesEntry { d: 2, value: q(72) });
        assert_eq!(g.tp2.pairs_value(1, 2).unwrap().value, q(-1));
        assert_eq!(g.tp2.gv_value(2, 1).unwrap().value, q(0));
        assert!(g.tp2.gv_value(1, 2).is_none());
    }

    #[test]
    fn rejects_float_values() {
        let bad = BUILTIN.replacen("\"72\"", "\"72.0\"", 1);
        assert!(Golden::from_json(&bad).is_err());
    }
}
