use std::fs;
use std::path::{Path, PathBuf};

use landspec_core::table::Table;

use crate::Failure;

pub const OUTDIR_ENV: &str = "LANDSPEC_OUTDIR";

/// Output directory: the environment variable wins over `--out`.
pub fn resolve_outdir(flag: &Path) -> PathBuf {
    match std::env::var_os(OUTDIR_ENV) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => flag.to_path_buf(),
    }
}

pub struct Outdir {
    pub path: PathBuf,
}

impl Outdir {
    pub fn create(path: PathBuf) -> Result<Self, Failure> {
        fs::create_dir_all(&path)
            .map_err(|e| Failure::io(format!("cannot create {}: {e}", path.display())))?;
        Ok(Outdir { path })
    }

    pub fn write(&self, name: &str, table: &Table) -> Result<(), Failure> {
        let file = self.path.join(name);
        fs::write(&file, table.to_string_lossy())
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", file.display())))
    }

    /// Sidecar describing the run. Contains nothing that varies between
    /// identical invocations.
    pub fn manifest(&self, command: &str, scenario: &Path) -> Result<(), Failure> {
        let text = format!(
            "command = {command}\nscenario_path = {}\noutput_dir = {}\nseedless = true\ntool_version = {}\n",
            scenario.display(),
            self.path.display(),
            env!("CARGO_PKG_VERSION"),
        );
        let file = self.path.join("manifest.txt");
        fs::write(&file, text)
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", file.display())))
    }
}
