//! On-disk cache of graded characters.
//!
//! One JSON file per `(type, rank, mode, format version)`, named
//! `{type}{rank}.{mode}.v{version}.json`. A SHA-256 checksum over the key and
//! the stored entries guards against truncated or edited files; any file
//! that fails validation is rebuilt and overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use lambdag::gradedchar::{CharacterError, CharacterMode, GradedCharacter};
use lambdag::{RootSystem, RootType};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const FORMAT_VERSION: u32 = 1;

type Entries = Vec<(Vec<i64>, Vec<i64>)>;

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub type_tag: RootType,
    pub rank: usize,
    pub mode: CharacterMode,
    pub version: u32,
    pub checksum: String,
    pub entries: Entries,
}

fn checksum(
    type_tag: RootType,
    rank: usize,
    mode: CharacterMode,
    version: u32,
    entries: &Entries,
) -> String {
    let bytes = serde_json::to_vec(&(type_tag, rank, mode, version, entries))
        .expect("serializable entries");
    format!("{:x}", Sha256::digest(bytes))
}

pub fn cache_path(dir: &Path, rs: &RootSystem, mode: CharacterMode) -> PathBuf {
    dir.join(format!(
        "{}{}.{}.v{}.json",
        rs.type_tag, rs.rank, mode, FORMAT_VERSION
    ))
}

/// How the character was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Built,
    Loaded,
    /// A cached file existed but failed validation.
    Rebuilt,
}

fn load(path: &Path, rs: &RootSystem, mode: CharacterMode) -> Option<GradedCharacter> {
    let text = fs::read_to_string(path).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    if entry.version != FORMAT_VERSION
        || entry.type_tag != rs.type_tag
        || entry.rank != rs.rank
        || entry.mode != mode
    {
        return None;
    }
    if checksum(
        entry.type_tag,
        entry.rank,
        entry.mode,
        entry.version,
        &entry.entries,
    ) != entry.checksum
    {
        return None;
    }
    GradedCharacter::from_stored_entries(rs, mode, entry.entries).ok()
}

fn store(path: &Path, rs: &RootSystem, ch: &GradedCharacter) -> std::io::Result<()> {
    let entries = ch.stored_entries();
    let entry = CacheEntry {
        type_tag: rs.type_tag,
        rank: rs.rank,
        mode: ch.mode(),
        version: FORMAT_VERSION,
        checksum: checksum(rs.type_tag, rs.rank, ch.mode(), FORMAT_VERSION, &entries),
        entries,
    };
    let dir = path.parent().expect("cache file has a directory");
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().unwrap().to_string_lossy(),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        serde_json::to_writer(&mut f, &entry)?;
        f.write_all(b"\n")?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

/// The character, through the cache when a directory is given. Failure to
/// write the cache is reported on stderr and otherwise ignored.
pub fn load_or_build(
    rs: &RootSystem,
    mode: CharacterMode,
    dir: Option<&Path>,
) -> Result<(GradedCharacter, Source), CharacterError> {
    let Some(dir) = dir else {
        return Ok((GradedCharacter::new(rs, mode)?, Source::Built));
    };
    let path = cache_path(dir, rs, mode);
    let existed = path.exists();
    if existed {
        if let Some(ch) = load(&path, rs, mode) {
            return Ok((ch, Source::Loaded));
        }
        eprintln!("warning: discarding invalid cache file {}", path.display());
    }
    let ch = GradedCharacter::new(rs, mode)?;
    if let Err(e) = store(&path, rs, &ch) {
        eprintln!(
            "warning: could not write cache file {}: {e}",
            path.display()
        );
    }
    Ok((
        ch,
        if existed {
            Source::Rebuilt
        } else {
            Source::Built
        },
    ))
}
