//! Output directory layout: manifest, CSV tables, optional field dumps.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::CliError;

pub const MANIFEST: &str = "manifest.toml";
pub const NORMS: &str = "norms.csv";
pub const DECAY: &str = "decay.csv";
pub const ENERGY: &str = "energy.csv";
pub const SUMMARY: &str = "summary.csv";
pub const TRAJECTORY: &str = "trajectory.csv";
pub const FIELDS_DIR: &str = "fields";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestInfo {
    pub command: String,
    pub package: String,
    pub version: String,
    pub linear_only: bool,
}

/// Config echo plus provenance of the binary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub manifest: ManifestInfo,
    pub config: Option<RunConfig>,
}

impl Manifest {
    pub fn new(command: &str, linear_only: bool, config: Option<&RunConfig>) -> Self {
        Self {
            manifest: ManifestInfo {
                command: command.to_string(),
                package: env!("CARGO_PKG_NAME").to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                linear_only,
            },
            config: config.cloned(),
        }
    }

    pub fn read(dir: &Path) -> Result<Self, CliError> {
        let path = dir.join(MANIFEST);
        let text =
            fs::read_to_string(&path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root).map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", root.display())))?;
        Ok(Self { root: root.to_path_buf() })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn file(&self, name: &str) -> Result<BufWriter<File>, CliError> {
        let path = self.path(name);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let f = File::create(&path).map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", path.display())))?;
        Ok(BufWriter::new(f))
    }

    pub fn write_manifest(&self, m: &Manifest) -> Result<(), CliError> {
        let text = toml::to_string(m).map_err(|e| CliError::Runtime(e.to_string()))?;
        let mut f = self.file(MANIFEST)?;
        f.write_all(text.as_bytes())?;
        f.flush()?;
        Ok(())
    }

    /// `key,value` table.
    pub fn write_summary(&self, rows: &[(&str, String)]) -> Result<(), CliError> {
        let mut wr = csv::Writer::from_writer(self.file(SUMMARY)?);
        wr.write_record(["key", "value"])?;
        for (k, v) in rows {
            wr.write_record([*k, v.as_str()])?;
        }
        wr.flush()?;
        Ok(())
    }
}
