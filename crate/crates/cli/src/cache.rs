//! On-disk cache of exact results. One file per key; the first lines record
//! the normalization the content was computed in and a hash of the body.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

const MAGIC: &str = "# cherednik cache v1";

#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

#[derive(Clone, Debug, Serialize)]
struct KeyMaterial<'a, H: Serialize, P: Serialize> {
    kind: &'a str,
    normalization: &'a H,
    params: &'a P,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Header line and file path for an entry.
    fn locate<H: Serialize, P: Serialize>(&self, kind: &str, normalization: &H, params: &P) -> Result<(String, PathBuf)> {
        let material = KeyMaterial { kind, normalization, params };
        let header = serde_json::to_string(&material).map_err(|e| CliError::Io(e.to_string()))?;
        let hash = sha256_hex(header.as_bytes());
        Ok((header, self.root.join(format!("{kind}-{}.txt", &hash[..24]))))
    }

    /// Cached lines, `None` on a miss. A file whose header or body hash does
    /// not match is reported as corrupt rather than silently recomputed.
    pub fn load<H: Serialize, P: Serialize>(&self, kind: &str, normalization: &H, params: &P) -> Result<Option<Vec<String>>> {
        let (header, path) = self.locate(kind, normalization, params)?;
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(CliError::Io(format!("{}: {e}", path.display()))),
        };
        let corrupt = |why: &str| CliError::CacheCorruption(format!("{}: {why}", path.display()));
        let mut lines = text.lines();
        if lines.next() != Some(MAGIC) {
            return Err(corrupt("bad magic line"));
        }
        let stored_header = lines.next().and_then(|l| l.strip_prefix("# header: ")).ok_or_else(|| corrupt("no header"))?;
        if stored_header != header {
            return Err(corrupt("normalization header mismatch"));
        }
        let stored_hash = lines.next().and_then(|l| l.strip_prefix("# body-sha256: ")).ok_or_else(|| corrupt("no body hash"))?;
        let body: Vec<String> = lines.map(str::to_string).collect();
        if sha256_hex(body.join("\n").as_bytes()) != stored_hash {
            return Err(corrupt("body hash mismatch"));
        }
        Ok(Some(body))
    }

    /// Writes through a temporary file and an atomic rename.
    pub fn store<H: Serialize, P: Serialize>(&self, kind: &str, normalization: &H, params: &P, body: &[String]) -> Result<()> {
        let (header, path) = self.locate(kind, normalization, params)?;
        fs::create_dir_all(&self.root).map_err(|e| CliError::Io(format!("{}: {e}", self.root.display())))?;
        let joined = body.join("\n");
        let content = format!("{MAGIC}\n# header: {header}\n# body-sha256: {}\n{joined}", sha256_hex(joined.as_bytes()));
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", tmp.display()));
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(content.as_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, &path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let body = vec!["2\tx1^2".to_string(), "3\tx1^3".to_string()];
        assert_eq!(cache.load("qc", &"A1", &5).unwrap(), None);
        cache.store("qc", &"A1", &5, &body).unwrap();
        assert_eq!(cache.load("qc", &"A1", &5).unwrap(), Some(body));
        assert_eq!(cache.load("qc", &"A1", &6).unwrap(), None);

        let (_, path) = cache.locate("qc", &"A1", &5).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replace("x1^3", "x1^4")).unwrap();
        assert!(matches!(cache.load("qc", &"A1", &5), Err(CliError::CacheCorruption(_))));
        fs::write(&path, text.replace("\"A1\"", "\"B2\"")).unwrap();
        assert!(matches!(cache.load("qc", &"A1", &5), Err(CliError::CacheCorruption(_))));
    }
}
