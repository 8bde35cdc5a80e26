// SPDX-License-Identifier: Apache-2.0

//! File I/O with all-or-nothing writes.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::commands::Failure;

/// Reads and parses a file, mapping both I/O and parse failures to input errors.
pub fn read<T>(path: &Path) -> Result<T, Failure>
where
    T: FromStr<Err = revsynth::Error>,
{
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    text.parse()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Writes the given files so that each either appears complete or not at all.
///
/// Contents are staged in sibling temporary files first; nothing is renamed
/// into place until every file has been staged.
pub fn write_all(files: &[(&Path, &str)]) -> Result<(), Failure> {
    let mut staged = Vec::with_capacity(files.len());
    for &(path, contents) in files {
        let tmp = staging_path(path);
        if let Err(e) = fs::write(&tmp, contents) {
            cleanup(&staged);
            let _ = fs::remove_file(&tmp);
            return Err(Failure::Input(format!("{}: {e}", path.display())));
        }
        staged.push((tmp, path));
    }
    for (i, (tmp, path)) in staged.iter().enumerate() {
        if let Err(e) = fs::rename(tmp, path) {
            cleanup(&staged[i..]);
            return Err(Failure::Input(format!("{}: {e}", path.display())));
        }
    }
    Ok(())
}

fn staging_path(path: &Path) -> std::path::PathBuf {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!(".{name}.{}.tmp", std::process::id()))
}

fn cleanup(staged: &[(std::path::PathBuf, &Path)]) {
    for (tmp, _) in staged {
        let _ = fs::remove_file(tmp);
    }
}
