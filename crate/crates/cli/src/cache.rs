//! Content-addressed result cache.
//!
//! Entries live at `<dir>/<sha256 of key>.json` and carry a checksum of
//! their payload; anything that fails to parse or verify is reported and
//! recomputed.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use modpic::pair::PairDescription;
use modpic::report::ToolError;
use modpic::verify::VERSION;

use crate::Rendered;

pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    key: String,
    version: String,
    checksum: String,
    payload: Rendered,
}

/// Version tag baked into keys; `MODPIC_CACHE_VERSION` overrides it.
fn version_tag() -> String {
    std::env::var("MODPIC_CACHE_VERSION").unwrap_or_else(|_| VERSION.to_string())
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn checksum(r: &Rendered) -> String {
    sha256_hex(serde_json::to_string(r).expect("serializable").as_bytes())
}

impl Cache {
    /// `MODPIC_CACHE`, else the user cache directory.
    pub fn from_env() -> Option<Cache> {
        let dir = match std::env::var_os("MODPIC_CACHE") {
            Some(d) if !d.is_empty() => PathBuf::from(d),
            _ => {
                let base = std::env::var_os("XDG_CACHE_HOME")
                    .map(PathBuf::from)
                    .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
                base.join("modpic")
            }
        };
        Some(Cache { dir })
    }

    /// Key over the command, the resolved curve and modulus, the base place
    /// and the crate version.
    pub fn key(command: &str, desc: &PairDescription, extra: Option<&str>) -> Result<String, ToolError> {
        let canonical = desc.canonical()?;
        let material = serde_json::json!({
            "command": command,
            "pair": canonical,
            "extra": extra,
            "version": version_tag(),
        });
        Ok(sha256_hex(material.to_string().as_bytes()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load(&self, key: &str) -> Option<Rendered> {
        let path = self.path(key);
        let text = std::fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<Entry>(&text) {
            Ok(e) if e.key == key && e.version == version_tag() && e.checksum == checksum(&e.payload) => {
                Some(e.payload)
            }
            _ => {
                eprintln!("warning: ignoring corrupt cache entry {}", path.display());
                None
            }
        }
    }

    pub fn store(&self, key: &str, r: &Rendered) {
        let entry = Entry { key: key.to_string(), version: version_tag(), checksum: checksum(r), payload: r.clone() };
        let write = || -> std::io::Result<()> {
            std::fs::create_dir_all(&self.dir)?;
            let tmp = self.dir.join(format!("{key}.tmp{}", std::process::id()));
            std::fs::write(&tmp, serde_json::to_string(&entry).expect("serializable"))?;
            std::fs::rename(tmp, self.path(key))
        };
        if let Err(e) = write() {
            eprintln!("warning: could not write cache entry in {}: {e}", self.dir.display());
        }
    }
}
