use std::io::Write;
use std::path::{Path, PathBuf};

use gbsiso::combinatorics::Orbit;
use gbsiso::graphs::emit_graph6;
use gbsiso::invariants::OrbitCertificate;
use gbsiso::GbsEncoding;
use sha2::{Digest, Sha256};

use crate::CliError;

/// Orbit certificates on disk, one file per `(graph, c, k, orbit)`.
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<&Path>) -> Result<Self, CliError> {
        if let Some(d) = dir {
            std::fs::create_dir_all(d).map_err(|e| CliError::Io(d.display().to_string(), e))?;
        }
        Ok(Self {
            dir: dir.map(Path::to_path_buf),
        })
    }

    pub fn key(e: &GbsEncoding, o: &Orbit) -> String {
        let mut h = Sha256::new();
        h.update(b"gbsiso-orbit-v1\n");
        h.update(emit_graph6(e.graph()).as_bytes());
        h.update(format!("\nc={}\nk={}\norbit={}\n", e.c(), e.k(), o).as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, e: &GbsEncoding, o: &Orbit) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", Self::key(e, o))))
    }

    pub fn get(&self, e: &GbsEncoding, o: &Orbit) -> Option<OrbitCertificate> {
        let path = self.path(e, o)?;
        let text = std::fs::read_to_string(&path).ok()?;
        match serde_json::from_str(&text) {
            Ok(r) => Some(r),
            Err(err) => {
                log::warn!("ignoring unreadable cache entry {}: {err}", path.display());
                None
            }
        }
    }

    /// Write-to-temp then rename, so readers never see a partial file.
    pub fn put(&self, e: &GbsEncoding, r: &OrbitCertificate) -> Result<(), CliError> {
        let (Some(dir), Some(path)) = (&self.dir, self.path(e, &r.orbit)) else {
            return Ok(());
        };
        let io = |err| CliError::Io(path.display().to_string(), err);
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        tmp.write_all(serde_json::to_string_pretty(r).expect("serializable").as_bytes())
            .map_err(io)?;
        tmp.persist(&path).map_err(|err| io(err.error))?;
        Ok(())
    }
}
