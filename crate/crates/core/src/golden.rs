//! Golden snapshots: a normalized JSON payload stored with the hash of the
//! parameters that produced it. The first run writes the file; later runs
//! compare field by field within the tolerances stored alongside.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::format::normalize;

pub const GOLDEN_ENV: &str = "LIOUVILLE_LAB_GOLDEN";

/// |a − b| ≤ abs + rel·|b|
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const EXACT: Tolerance = Tolerance { abs: 0.0, rel: 0.0 };

    pub fn rel(rel: f64) -> Self {
        Self { abs: 0.0, rel }
    }

    fn accepts(&self, got: f64, want: f64) -> bool {
        (got - want).abs() <= self.abs + self.rel * want.abs()
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-12, rel: 1e-9 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub name: String,
    pub params_hash: String,
    pub params: Value,
    pub payload: Value,
    /// Keyed by top-level payload field; `"*"` applies to all other fields.
    pub tolerances: BTreeMap<String, Tolerance>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoldenOutcome {
    Written(PathBuf),
    Matched(PathBuf),
}

/// Hex SHA-256 of the canonical (sorted-key, compact) JSON of `params`.
pub fn params_hash(params: &Value) -> String {
    let digest = Sha256::digest(serde_json::to_string(params).expect("JSON values serialize").as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// `LIOUVILLE_LAB_GOLDEN` when set and non-empty, else `flag`.
pub fn golden_dir(flag: Option<&Path>) -> Option<PathBuf> {
    match std::env::var_os(GOLDEN_ENV) {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => flag.map(Path::to_path_buf),
    }
}

pub fn snapshot_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.json"))
}

pub fn golden_record(
    dir: &Path,
    name: &str,
    params: &Value,
    payload: &Value,
    tolerances: &BTreeMap<String, Tolerance>,
) -> Result<GoldenOutcome> {
    let fail = |detail: String| Error::Golden {
        name: name.to_string(),
        detail,
    };
    if name.is_empty() || name.contains(['/', '\\']) || name.starts_with('.') {
        return Err(fail("snapshot names must be plain file stems".into()));
    }
    let mut payload = payload.clone();
    normalize(&mut payload);
    let hash = params_hash(params);
    let path = snapshot_path(dir, name);
    if !path.exists() {
        std::fs::create_dir_all(dir)?;
        let snap = Snapshot {
            name: name.to_string(),
            params_hash: hash,
            params: params.clone(),
            payload,
            tolerances: tolerances.clone(),
        };
        std::fs::write(&path, serde_json::to_string_pretty(&snap)? + "\n")?;
        return Ok(GoldenOutcome::Written(path));
    }
    let stored: Snapshot = serde_json::from_str(&std::fs::read_to_string(&path)?)
        .map_err(|e| fail(format!("unreadable snapshot {}: {e}", path.display())))?;
    if stored.params_hash != hash {
        return Err(fail(format!(
            "parameter hash mismatch (stored {}, current {}); comparison refused",
            &stored.params_hash[..12],
            &hash[..12]
        )));
    }
    let mut diffs = Vec::new();
    compare(&payload, &stored.payload, "", &stored.tolerances, None, &mut diffs);
    if diffs.is_empty() {
        Ok(GoldenOutcome::Matched(path))
    } else {
        Err(fail(format!("{} field(s) differ:\n  {}", diffs.len(), diffs.join("\n  "))))
    }
}

fn compare(
    got: &Value,
    want: &Value,
    path: &str,
    tols: &BTreeMap<String, Tolerance>,
    tol: Option<Tolerance>,
    diffs: &mut Vec<String>,
) {
    let tol_for = |key: &str| {
        tol.or_else(|| tols.get(key).copied())
            .or_else(|| tols.get("*").copied())
            .unwrap_or(Tolerance::EXACT)
    };
    match (got, want) {
        (Value::Object(g), Value::Object(w)) => {
            for (k, wv) in w {
                let p = format!("{path}/{k}");
                let t = if path.is_empty() { Some(tol_for(k)) } else { tol };
                match g.get(k) {
                    Some(gv) => compare(gv, wv, &p, tols, t, diffs),
                    None => diffs.push(format!("{p}: missing")),
                }
            }
            for k in g.keys().filter(|k| !w.contains_key(*k)) {
                diffs.push(format!("{path}/{k}: not in snapshot"));
            }
        }
        (Value::Array(g), Value::Array(w)) => {
            if g.len() != w.len() {
                diffs.push(format!("{path}: length {} vs stored {}", g.len(), w.len()));
                return;
            }
            for (i, (gv, wv)) in g.iter().zip(w).enumerate() {
                compare(gv, wv, &format!("{path}/{i}"), tols, tol, diffs);
            }
        }
        (Value::Number(g), Value::Number(w)) => {
            let t = tol.unwrap_or_else(|| tol_for(""));
            let same = g == w || t.accepts(g.as_f64().unwrap(), w.as_f64().unwrap());
            if !same {
                diffs.push(format!("{path}: {g} vs stored {w}"));
            }
        }
        _ => {
            if got != want {
                diffs.push(format!("{path}: {got} vs stored {want}"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn tols() -> BTreeMap<String, Tolerance> {
        BTreeMap::from([("*".to_string(), Tolerance::default()), ("loose".to_string(), Tolerance::rel(0.1))])
    }

    #[test]
    fn write_then_match_then_refuse() {
        let dir = tempfile::tempdir().unwrap();
        let params = json!({"n": 10, "k": 2});
        let payload = json!({"freq": [0.25, 0.75], "loose": 1.0, "count": 3});
        let first = golden_record(dir.path(), "demo", &params, &payload, &tols()).unwrap();
        assert!(matches!(first, GoldenOutcome::Written(_)));
        let again = golden_record(dir.path(), "demo", &params, &payload, &tols()).unwrap();
        assert!(matches!(again, GoldenOutcome::Matched(_)));

        let close = json!({"freq": [0.25, 0.75], "loose": 1.05, "count": 3});
        assert!(golden_record(dir.path(), "demo", &params, &close, &tols()).is_ok());
        let off = json!({"freq": [0.25, 0.76], "loose": 1.0, "count": 3});
        let err = golden_record(dir.path(), "demo", &params, &off, &tols()).unwrap_err();
        assert!(err.to_string().contains("/freq/1"), "{err}");

        let changed = json!({"n": 10, "k": 3});
        let err = golden_record(dir.path(), "demo", &changed, &payload, &tols()).unwrap_err();
        assert!(err.to_string().contains("hash mismatch"));
    }

    #[test]
    fn hash_is_key_order_independent() {
        let a: Value = serde_json::from_str(r#"{"a":1,"b":2}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"b":2,"a":1}"#).unwrap();
        assert_eq!(params_hash(&a), params_hash(&b));
        assert_eq!(params_hash(&a).len(), 64);
    }

    #[test]
    fn bad_names_rejected() {
        let dir = tempfile::tempdir().unwrap();
        assert!(golden_record(dir.path(), "../x", &json!({}), &json!({}), &tols()).is_err());
    }
}
