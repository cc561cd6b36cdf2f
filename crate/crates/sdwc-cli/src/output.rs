//! Output plumbing: reproducibility manifests and file/stdout emission.

use serde::Serialize;
use serde_json::Value;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// Sidecar written next to every file output. The parameters are fully
/// resolved (defaults applied, input documents embedded), so the output
/// is reproducible from the manifest alone.
#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub seed: Option<u64>,
    pub params: Value,
}

impl RunManifest {
    pub fn new(command: &str, seed: Option<u64>, params: Value) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            params,
        }
    }
}

/// `<out>.manifest.json` for an output at `out`.
pub fn manifest_path(out: &Path) -> PathBuf {
    PathBuf::from(format!("{}.manifest.json", out.display()))
}

/// Writes `contents` to `out` plus the manifest sidecar.
pub fn write_with_manifest(out: &Path, contents: &str, manifest: &RunManifest) -> io::Result<()> {
    fs::write(out, contents)?;
    let doc = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    fs::write(manifest_path(out), doc + "\n")
}

/// Emits `contents` to the file (with manifest) when a path is given,
/// otherwise to stdout.
pub fn emit(
    out: Option<&Path>,
    contents: &str,
    manifest: impl FnOnce() -> RunManifest,
) -> io::Result<Option<PathBuf>> {
    match out {
        Some(path) => {
            write_with_manifest(path, contents, &manifest())?;
            Ok(Some(path.to_path_buf()))
        }
        None => {
            print!("{contents}");
            Ok(None)
        }
    }
}
