//! Small shared helpers for deterministic file output.

use std::io::Write;
use std::path::Path;

/// Formats a float with 15 significant digits, the convention used by all
/// CSV bodies so regression diffs are byte-stable.
pub fn fmt_sig15(x: f64) -> String {
    format!("{x:.14e}")
}

/// Writes a file atomically: contents land in a sibling temp file first
/// and are renamed into place.
pub fn atomic_write(path: &Path, contents: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}
