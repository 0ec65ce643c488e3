//! Flat-file cache of generated matrices and their Smith normal forms,
//! keyed by the SHA-256 of the canonical spec text.
//!
//! Each entry is `<hash>.json` plus `<hash>.mat`. Files are written to a
//! temporary name in the cache directory and renamed into place, so
//! concurrent writers of one key leave a single complete entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use snflab_core::{IncidenceSpec, IntegerMatrix, SmithDecomposition};

use crate::error::{LabError, LabResult};
use crate::matrix_io::{format_matrix, parse_matrix};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub spec_hash: String,
    pub spec: String,
    pub tool_version: String,
    pub matrix_file: String,
    pub shape: [usize; 2],
    pub invariant_factors: Vec<String>,
}

#[derive(Debug)]
pub enum Lookup {
    Hit { entry: CacheEntry, matrix: IntegerMatrix, decomposition: SmithDecomposition },
    Miss,
    /// Unreadable or inconsistent entry; the caller recomputes.
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    version: String,
}

pub fn spec_hash(spec: &IncidenceSpec) -> String {
    hex::encode(Sha256::digest(spec.to_string().as_bytes()))
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> LabResult<Self> {
        Self::with_version(dir, TOOL_VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> LabResult<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| LabError::io(dir.display().to_string(), e))?;
        Ok(Cache { dir, version: version.to_string() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn entry_path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    pub fn lookup(&self, spec: &IncidenceSpec) -> Lookup {
        let hash = spec_hash(spec);
        let path = self.entry_path(&hash);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        match self.decode(spec, &hash, &text) {
            Ok(Some((entry, matrix, decomposition))) => Lookup::Hit { entry, matrix, decomposition },
            Ok(None) => Lookup::Miss,
            Err(msg) => Lookup::Corrupt(format!("{}: {msg}", path.display())),
        }
    }

    #[allow(clippy::type_complexity)]
    fn decode(
        &self,
        spec: &IncidenceSpec,
        hash: &str,
        text: &str,
    ) -> Result<Option<(CacheEntry, IntegerMatrix, SmithDecomposition)>, String> {
        let entry: CacheEntry = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if entry.tool_version != self.version {
            return Ok(None);
        }
        if entry.spec_hash != hash || entry.spec != spec.to_string() {
            return Err(format!("entry describes {:?}", entry.spec));
        }
        let mat_path = self.dir.join(&entry.matrix_file);
        let mat_text = fs::read_to_string(&mat_path).map_err(|e| format!("{}: {e}", mat_path.display()))?;
        let matrix = parse_matrix(&mat_text).map_err(|e| e.to_string())?;
        if [matrix.rows(), matrix.cols()] != entry.shape {
            return Err("matrix shape disagrees with entry".into());
        }
        let factors = entry
            .invariant_factors
            .iter()
            .map(|s| s.parse::<BigUint>().map_err(|_| format!("bad invariant factor {s:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        let decomposition =
            SmithDecomposition::from_invariant_factors(matrix.rows(), matrix.cols(), factors).map_err(|e| e.to_string())?;
        Ok(Some((entry, matrix, decomposition)))
    }

    pub fn store(&self, spec: &IncidenceSpec, matrix: &IntegerMatrix, d: &SmithDecomposition) -> LabResult<CacheEntry> {
        let hash = spec_hash(spec);
        let matrix_file = format!("{hash}.mat");
        self.write_atomic(&matrix_file, format_matrix(matrix).as_bytes())?;
        let entry = CacheEntry {
            spec_hash: hash.clone(),
            spec: spec.to_string(),
            tool_version: self.version.clone(),
            matrix_file,
            shape: [matrix.rows(), matrix.cols()],
            invariant_factors: d.invariant_factors().iter().map(ToString::to_string).collect(),
        };
        let json = serde_json::to_string_pretty(&entry)?;
        self.write_atomic(&format!("{hash}.json"), json.as_bytes())?;
        Ok(entry)
    }

    fn write_atomic(&self, name: &str, bytes: &[u8]) -> LabResult<()> {
        let target = self.dir.join(name);
        let io_err = |e| LabError::io(target.display().to_string(), e);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io_err)?;
        tmp.write_all(bytes).map_err(io_err)?;
        tmp.persist(&target).map_err(|e| io_err(e.error))?;
        Ok(())
    }
}
