use std::io::Write;
use std::path::{Path, PathBuf};

use graph_slepian::{Error, Result};
use tempfile::NamedTempFile;

fn io_error(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn parent_dir(path: &Path) -> &Path {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    }
}

/// Fails early if `path` cannot be created, before any computation runs.
pub fn check_target(path: &Path) -> Result<()> {
    let dir = parent_dir(path);
    if !dir.is_dir() {
        return Err(io_error(
            path,
            std::io::Error::new(
                std::io::ErrorKind::NotFound,
                "output directory does not exist",
            ),
        ));
    }
    if path.is_dir() {
        return Err(io_error(
            path,
            std::io::Error::new(
                std::io::ErrorKind::InvalidInput,
                "output path is a directory",
            ),
        ));
    }
    Ok(())
}

/// Writes every file to a temporary sibling first and renames only once all
/// of them are on disk, so a failure leaves no partial outputs behind.
pub fn write_all(files: Vec<(PathBuf, String)>) -> Result<()> {
    let mut staged = Vec::with_capacity(files.len());
    for (path, contents) in files {
        let mut tmp = NamedTempFile::new_in(parent_dir(&path)).map_err(|e| io_error(&path, e))?;
        tmp.write_all(contents.as_bytes())
            .and_then(|_| tmp.flush())
            .map_err(|e| io_error(&path, e))?;
        staged.push((path, tmp));
    }
    for (path, tmp) in staged {
        tmp.persist(&path).map_err(|e| io_error(&path, e.error))?;
    }
    Ok(())
}
