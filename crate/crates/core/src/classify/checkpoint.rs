//! Append-only progress file for the pruned oracle.
//!
//! ```text
//! skewmorph-pruned-oracle v1
//! n 27
//! units 412
//! map 5 0 4 8 ...
//! done 5 1832 1
//! ```
//!
//! `map` lines belong to the unit named in the next matching `done` line. A
//! unit without `done` is searched again.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crate::error::{Error, Result};

const MAGIC: &str = "skewmorph-pruned-oracle v1";

/// Completed units: index to (nodes visited, solutions found).
pub(crate) type Resumed = HashMap<usize, (u64, Vec<Vec<u32>>)>;

pub(crate) struct Checkpoint {
    path: PathBuf,
    file: Mutex<File>,
}

fn bad(path: &Path, reason: impl Into<String>) -> Error {
    Error::Checkpoint { path: path.to_path_buf(), reason: reason.into() }
}

fn parse(path: &Path, text: &str, n: u32, units: usize) -> Result<Resumed> {
    let mut lines = text.lines();
    if lines.next() != Some(MAGIC) {
        return Err(bad(path, "unrecognised header"));
    }
    let expect = |line: Option<&str>, key: &str, want: u64| -> Result<()> {
        let got = line
            .and_then(|l| l.strip_prefix(key))
            .and_then(|v| v.trim().parse::<u64>().ok())
            .ok_or_else(|| bad(path, format!("missing '{key}' line")))?;
        if got != want {
            return Err(bad(path, format!("written for {key}{got}, now {key}{want}")));
        }
        Ok(())
    };
    expect(lines.next(), "n ", n as u64)?;
    expect(lines.next(), "units ", units as u64)?;

    let mut pending: HashMap<usize, Vec<Vec<u32>>> = HashMap::new();
    let mut done = Resumed::new();
    for (no, line) in lines.enumerate() {
        let mut words = line.split_ascii_whitespace();
        let malformed = || bad(path, format!("malformed line {}", no + 4));
        let kind = words.next().ok_or_else(malformed)?;
        let nums: Vec<u64> =
            words.map(|w| w.parse()).collect::<std::result::Result<_, _>>().map_err(|_| malformed())?;
        let unit = *nums.first().ok_or_else(malformed)? as usize;
        if unit >= units {
            return Err(malformed());
        }
        match kind {
            "map" => {
                let images: Vec<u32> = nums[1..].iter().map(|&v| v as u32).collect();
                if images.len() != n as usize || images.iter().any(|&v| v >= n) {
                    return Err(malformed());
                }
                pending.entry(unit).or_default().push(images);
            }
            "done" => {
                let [_, nodes, count] = nums[..] else { return Err(malformed()) };
                let maps = pending.remove(&unit).unwrap_or_default();
                if maps.len() as u64 != count {
                    return Err(bad(path, format!("unit {unit} lists {} maps but records {count}", maps.len())));
                }
                done.insert(unit, (nodes, maps));
            }
            _ => return Err(malformed()),
        }
    }
    Ok(done)
}

impl Checkpoint {
    /// Opens or creates the file. A trailing partial line from an interrupted
    /// write is dropped.
    pub(crate) fn open(path: &Path, n: u32, units: usize) -> Result<(Self, Resumed)> {
        let existing = match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(e.into()),
        };
        let complete_len = existing.rfind('\n').map_or(0, |i| i + 1);
        let (file, resumed) = if complete_len == 0 {
            let mut f = File::create(path)?;
            writeln!(f, "{MAGIC}\nn {n}\nunits {units}")?;
            f.flush()?;
            (f, Resumed::new())
        } else {
            let resumed = parse(path, &existing[..complete_len], n, units)?;
            let f = OpenOptions::new().write(true).open(path)?;
            f.set_len(complete_len as u64)?;
            let f = OpenOptions::new().append(true).open(path)?;
            (f, resumed)
        };
        Ok((Checkpoint { path: path.to_path_buf(), file: Mutex::new(file) }, resumed))
    }

    pub(crate) fn record(&self, unit: usize, nodes: u64, maps: &[Vec<u32>]) -> Result<()> {
        let mut buf = Vec::new();
        {
            let mut w = BufWriter::new(&mut buf);
            for images in maps {
                write!(w, "map {unit}")?;
                for v in images {
                    write!(w, " {v}")?;
                }
                writeln!(w)?;
            }
            writeln!(w, "done {unit} {nodes} {}", maps.len())?;
        }
        let mut f = self.file.lock().map_err(|_| bad(&self.path, "writer poisoned"))?;
        f.write_all(&buf)?;
        f.flush()?;
        Ok(())
    }
}
