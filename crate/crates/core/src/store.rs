//! An associative array bound to an on-disk table.
//!
//! A table directory holds:
//!
//! * `MANIFEST`: the line `%aa-manifest 1`, then one segment file name per
//!   line, oldest first.
//! * `seg-NNNNNNNN.aat`: immutable segments, the line `%aa-seg 1` followed by
//!   sorted triple records. Tag `x` marks a deleted cell.
//! * `LOCK`: held with an exclusive advisory lock by the single writer.
//!
//! The table's content is the fold of its segments from oldest to newest
//! where a later record for a cell replaces any earlier one. An insert or
//! delete is durable once the MANIFEST naming its segment has been renamed
//! into place.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions, TryLockError};
use std::io::{self, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use log::warn;

use crate::array::{AssociativeArray, KeySpec};
use crate::error::{Error, Result};
use crate::io::{render_records, TripleRecord};
use crate::key::Key;
use crate::value::Value;

pub const MANIFEST_MAGIC: &str = "%aa-manifest 1";
pub const SEGMENT_MAGIC: &str = "%aa-seg 1";
const MANIFEST: &str = "MANIFEST";
const MANIFEST_TMP: &str = "MANIFEST.tmp";
const LOCK: &str = "LOCK";

pub fn segment_name(seq: u64) -> String {
    format!("seg-{seq:08}.aat")
}

fn parse_segment_name(name: &str) -> Option<u64> {
    let digits = name.strip_prefix("seg-")?.strip_suffix(".aat")?;
    if digits.len() < 8 || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn read_manifest(dir: &Path) -> Result<Option<Vec<u64>>> {
    let text = match fs::read_to_string(dir.join(MANIFEST)) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut lines = text.split_terminator('\n');
    if lines.next() != Some(MANIFEST_MAGIC) {
        return Err(Error::Integrity(format!(
            "{}: bad manifest magic",
            dir.display()
        )));
    }
    lines
        .map(|l| {
            parse_segment_name(l)
                .ok_or_else(|| Error::Integrity(format!("bad segment name {l:?} in manifest")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn sync_dir(dir: &Path) -> io::Result<()> {
    File::open(dir)?.sync_all()
}

fn write_manifest(dir: &Path, segments: &[u64]) -> Result<()> {
    let mut text = String::from(MANIFEST_MAGIC);
    text.push('\n');
    for &s in segments {
        text.push_str(&segment_name(s));
        text.push('\n');
    }
    let tmp = dir.join(MANIFEST_TMP);
    {
        let mut f = File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, dir.join(MANIFEST))?;
    sync_dir(dir)?;
    Ok(())
}

/// Parses a segment. Only the newest segment may end in a partial line, which
/// is dropped with a warning.
fn parse_segment(name: &str, bytes: &[u8], newest: bool) -> Result<Vec<TripleRecord>> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Integrity(format!("{name}: {e}")))?;
    let mut body = text;
    if !text.ends_with('\n') {
        let cut = text.rfind('\n').map_or(0, |i| i + 1);
        if !newest {
            return Err(Error::Integrity(format!(
                "{name}: truncated record in a sealed segment"
            )));
        }
        warn!(
            "{name}: ignoring truncated final record ({} bytes)",
            text.len() - cut
        );
        body = &text[..cut];
    }
    let mut lines = body.split_terminator('\n');
    match lines.next() {
        Some(SEGMENT_MAGIC) => {}
        None if newest => return Ok(Vec::new()),
        _ => return Err(Error::Integrity(format!("{name}: bad segment magic"))),
    }
    lines
        .enumerate()
        .map(|(i, l)| {
            TripleRecord::parse(l, i + 2, true)
                .map_err(|e| Error::Integrity(format!("{name}: {e}")))
        })
        .collect()
}

/// Open segment files as listed by one manifest version.
///
/// Segments are opened eagerly, so a snapshot keeps reading the same data even
/// after a compaction unlinks the files.
#[derive(Debug)]
pub struct Snapshot {
    segments: Vec<(u64, File)>,
}

impl Snapshot {
    fn open(dir: &Path, manifest: &[u64]) -> io::Result<Self> {
        let segments = manifest
            .iter()
            .map(|&s| File::open(dir.join(segment_name(s))).map(|f| (s, f)))
            .collect::<io::Result<Vec<_>>>()?;
        Ok(Snapshot { segments })
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    fn fold(&self, rows: &KeySpec, cols: &KeySpec) -> Result<BTreeMap<(Key, Key), Option<Value>>> {
        rows.validate()?;
        cols.validate()?;
        let mut cells = BTreeMap::new();
        let last = self.segments.len().saturating_sub(1);
        for (i, (seq, file)) in self.segments.iter().enumerate() {
            let mut f = file.try_clone()?;
            f.seek(SeekFrom::Start(0))?;
            let mut bytes = Vec::new();
            f.read_to_end(&mut bytes)?;
            for rec in parse_segment(&segment_name(*seq), &bytes, i == last)? {
                if rows.matches(&rec.row) && cols.matches(&rec.col) {
                    let v = rec.value();
                    cells.insert((rec.row, rec.col), v);
                }
            }
        }
        Ok(cells)
    }

    /// Live cells matching both specs.
    pub fn select(&self, rows: &KeySpec, cols: &KeySpec) -> Result<AssociativeArray> {
        let cells = self.fold(rows, cols)?;
        Ok(AssociativeArray::collect(
            cells
                .into_iter()
                .filter_map(|((r, c), v)| v.map(|v| (r, c, v))),
        ))
    }
}

/// A table directory opened for reading, or for reading and writing when the
/// writer lock could be taken.
#[derive(Debug)]
pub struct TableHandle {
    path: PathBuf,
    manifest: Vec<u64>,
    lock: Option<File>,
    next_seq: u64,
}

impl TableHandle {
    /// Opens or creates a table. When another process holds the writer lock
    /// the handle is read-only; see [`TableHandle::is_read_only`].
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        fs::create_dir_all(&path)?;
        let lock_file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(path.join(LOCK))?;
        let lock = match lock_file.try_lock() {
            Ok(()) => Some(lock_file),
            Err(TryLockError::WouldBlock) => None,
            Err(TryLockError::Error(e)) => return Err(e.into()),
        };
        Self::open_with(path, lock)
    }

    /// Opens without trying to take the writer lock.
    pub fn open_read_only(path: impl AsRef<Path>) -> Result<Self> {
        Self::open_with(path.as_ref().to_path_buf(), None)
    }

    fn open_with(path: PathBuf, lock: Option<File>) -> Result<Self> {
        let manifest = match read_manifest(&path)? {
            Some(m) => m,
            None if lock.is_some() => {
                write_manifest(&path, &[])?;
                Vec::new()
            }
            None => Vec::new(),
        };
        for &s in &manifest {
            if !path.join(segment_name(s)).is_file() {
                return Err(Error::Integrity(format!(
                    "{}: listed segment {} is missing",
                    path.display(),
                    segment_name(s)
                )));
            }
        }
        let mut next_seq = manifest.iter().max().map_or(1, |m| m + 1);
        for entry in fs::read_dir(&path)? {
            if let Some(s) = entry?.file_name().to_str().and_then(parse_segment_name) {
                next_seq = next_seq.max(s + 1);
            }
        }
        Ok(TableHandle {
            path,
            manifest,
            lock,
            next_seq,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn is_read_only(&self) -> bool {
        self.lock.is_none()
    }

    /// Segment sequence numbers, oldest first, as last seen by this handle.
    pub fn segments(&self) -> &[u64] {
        &self.manifest
    }

    fn require_writer(&self) -> Result<()> {
        if self.is_read_only() {
            Err(Error::ReadOnly(self.path.clone()))
        } else {
            Ok(())
        }
    }

    /// Pins the current manifest. Read-only handles reload it first.
    pub fn snapshot(&mut self) -> Result<Snapshot> {
        if !self.is_read_only() {
            return Ok(Snapshot::open(&self.path, &self.manifest)?);
        }
        // A concurrent compaction may unlink segments between reading the
        // manifest and opening them; a fresh manifest resolves that.
        let mut attempts = 0;
        loop {
            self.manifest = read_manifest(&self.path)?.unwrap_or_default();
            match Snapshot::open(&self.path, &self.manifest) {
                Ok(s) => return Ok(s),
                Err(e) if e.kind() == io::ErrorKind::NotFound && attempts < 8 => attempts += 1,
                Err(e) if e.kind() == io::ErrorKind::NotFound => {
                    return Err(Error::Integrity(format!("listed segment missing: {e}")))
                }
                Err(e) => return Err(e.into()),
            }
        }
    }

    pub fn select(&mut self, rows: &KeySpec, cols: &KeySpec) -> Result<AssociativeArray> {
        self.snapshot()?.select(rows, cols)
    }

    /// The whole table as an array.
    pub fn materialize(&mut self) -> Result<AssociativeArray> {
        self.select(&KeySpec::All, &KeySpec::All)
    }

    fn append_segment(&mut self, records: &[TripleRecord]) -> Result<()> {
        let seq = self.next_seq;
        let seg_path = self.path.join(segment_name(seq));
        let text = render_records(SEGMENT_MAGIC, records);
        let written = (|| -> Result<()> {
            let mut f = File::create(&seg_path)?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
            let mut next = self.manifest.clone();
            next.push(seq);
            write_manifest(&self.path, &next)?;
            self.manifest = next;
            Ok(())
        })();
        self.next_seq += 1;
        if written.is_err() {
            let _ = fs::remove_file(&seg_path);
        }
        written
    }

    /// `T = T ⊕ B` with last-write-wins on overlapping cells. Writes one
    /// segment and returns the number of records in it.
    pub fn insert(&mut self, b: &AssociativeArray) -> Result<usize> {
        self.require_writer()?;
        if b.is_empty() {
            return Ok(0);
        }
        let records = b
            .iter()
            .map(|(r, c, v)| TripleRecord::entry(r.clone(), c.clone(), v))
            .collect::<Result<Vec<_>>>()?;
        self.append_segment(&records)?;
        Ok(records.len())
    }

    /// Writes one tombstone per cell in the support of `m`.
    pub fn delete(&mut self, m: &AssociativeArray) -> Result<usize> {
        self.require_writer()?;
        if m.is_empty() {
            return Ok(0);
        }
        let records: Vec<_> = m
            .iter()
            .map(|(r, c, _)| TripleRecord::tombstone(r.clone(), c.clone()))
            .collect();
        self.append_segment(&records)?;
        Ok(records.len())
    }

    /// Rewrites all segments as one holding only live cells (none if the table
    /// is empty). Returns the segment counts before and after.
    pub fn compact(&mut self) -> Result<(usize, usize)> {
        self.require_writer()?;
        let before = self.manifest.clone();
        if before.is_empty() {
            return Ok((0, 0));
        }
        let records = self
            .materialize()?
            .iter()
            .map(|(r, c, v)| TripleRecord::entry(r.clone(), c.clone(), v))
            .collect::<Result<Vec<_>>>()?;
        let old_manifest = std::mem::take(&mut self.manifest);
        let result = if records.is_empty() {
            write_manifest(&self.path, &[])
        } else {
            self.append_segment(&records)
        };
        if let Err(e) = result {
            self.manifest = old_manifest;
            return Err(e);
        }
        for s in &before {
            if let Err(e) = fs::remove_file(self.path.join(segment_name(*s))) {
                warn!(
                    "could not remove compacted segment {}: {e}",
                    segment_name(*s)
                );
            }
        }
        Ok((before.len(), self.manifest.len()))
    }
}
