//! On-disk cache of slice bases and homology reports.
//!
//! One JSON file per slice and payload, stamped with [`CACHE_SCHEMA`] and the
//! graph schema. A file with another stamp is a miss and gets rewritten; a
//! file that does not parse or does not describe its own slice is an error.
//! Writes go to a private temporary file first and are renamed into place, so
//! concurrent writers never expose a partial file.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphJson, HairyGraph, SliceBasis, SliceKey, SCHEMA_VERSION};
use crate::linalg::HomologyReport;

pub const CACHE_SCHEMA: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
  schema:       u32,
  graph_schema: u32,
  key:          SliceKey,
  connected:    bool,
  payload:      T,
}

#[derive(Deserialize)]
struct Stamp {
  schema:       u32,
  graph_schema: u32,
}

#[derive(Clone, Debug)]
pub struct DiskCache {
  dir: PathBuf,
}

static TEMP_COUNTER: AtomicUsize = AtomicUsize::new(0);

impl DiskCache {
  /// Opens `dir`, creating it if needed.
  pub fn open(dir: impl AsRef<Path>) -> Result<DiskCache> {
    let dir = dir.as_ref().to_path_buf();
    fs::create_dir_all(&dir)?;
    if fs::metadata(&dir)?.permissions().readonly() {
      return Err(Error::Io(std::io::Error::new(std::io::ErrorKind::PermissionDenied, "cache directory is read-only")));
    }
    Ok(DiskCache { dir })
  }

  pub fn dir(&self) -> &Path { &self.dir }

  fn path(&self, key: &SliceKey, connected: bool, what: &str) -> PathBuf {
    let c = if connected { "conn" } else { "all" };
    self.dir.join(format!("{}-n{}-k{}-d{}-r{}-h{}-{c}.{what}.json", key.kind, key.n, key.k, key.d, key.r, key.h))
  }

  fn load<T: DeserializeOwned>(&self, key: &SliceKey, connected: bool, what: &str) -> Result<Option<T>> {
    let path = self.path(key, connected, what);
    let text = match fs::read_to_string(&path) {
      Ok(t) => t,
      Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
      Err(e) => return Err(e.into()),
    };
    let corrupt = |msg: String| Error::Cache(format!("{}: {msg}", path.display()));
    let stamp: Stamp = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
    if stamp.schema != CACHE_SCHEMA || stamp.graph_schema != SCHEMA_VERSION {
      return Ok(None);
    }
    let env: Envelope<T> = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
    if env.key != *key || env.connected != connected {
      return Err(corrupt(format!("file describes {} instead of {key}", env.key)));
    }
    Ok(Some(env.payload))
  }

  fn store<T: Serialize>(&self, key: &SliceKey, connected: bool, what: &str, payload: T) -> Result<()> {
    let path = self.path(key, connected, what);
    let env = Envelope { schema: CACHE_SCHEMA, graph_schema: SCHEMA_VERSION, key: *key, connected, payload };
    let n = TEMP_COUNTER.fetch_add(1, Ordering::Relaxed);
    let tmp = path.with_extension(format!("tmp.{}.{n}", std::process::id()));
    fs::write(&tmp, serde_json::to_vec(&env)?)?;
    fs::rename(&tmp, &path).inspect_err(|_| {
      let _ = fs::remove_file(&tmp);
    })?;
    Ok(())
  }

  /// Representatives of the basis of a slice, validated against the key.
  pub fn load_basis(&self, key: &SliceKey, connected: bool) -> Result<Option<Vec<HairyGraph>>> {
    let Some(graphs) = self.load::<Vec<GraphJson>>(key, connected, "basis")? else { return Ok(None) };
    let corrupt = |msg: String| Error::Cache(format!("{}: {msg}", self.path(key, connected, "basis").display()));
    let mut out = Vec::with_capacity(graphs.len());
    for g in graphs {
      let (g, n) = g.to_graph().map_err(|e| corrupt(e.to_string()))?;
      if g.slice_key(n) != *key || (connected && !g.is_connected()) {
        return Err(corrupt(format!("graph in slice {} listed under {key}", g.slice_key(n))));
      }
      out.push(g);
    }
    Ok(Some(out))
  }

  pub fn store_basis(&self, basis: &SliceBasis) -> Result<()> {
    let graphs: Vec<GraphJson> = basis.graphs.iter().map(|g| GraphJson::from_graph(&g.graph(), basis.key.n)).collect();
    self.store(&basis.key, basis.connected, "basis", graphs)
  }

  pub fn load_report(&self, key: &SliceKey, connected: bool) -> Result<Option<HomologyReport>> {
    let report: Option<HomologyReport> = self.load(key, connected, "homology")?;
    match report {
      Some(r) if r.slice != *key || r.rank_in + r.rank_out + r.betti != r.dim_chains => {
        Err(Error::Cache(format!("{}: inconsistent report", self.path(key, connected, "homology").display())))
      }
      r => Ok(r),
    }
  }

  pub fn store_report(&self, report: &HomologyReport, connected: bool) -> Result<()> {
    self.store(&report.slice, connected, "homology", report)
  }
}
