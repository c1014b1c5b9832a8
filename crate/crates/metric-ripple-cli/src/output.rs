//! Pinned output formats: lowercase scientific notation with nine
//! significant digits, '.' decimal separator, complex values as (re, im)
//! column pairs, LF line endings. Byte-identical across repeated runs.

use std::path::{Path, PathBuf};

/// println! that exits quietly when the consumer closes the pipe
/// (`metric-ripple table1 | head` must not panic).
#[macro_export]
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let mut out = std::io::stdout().lock();
        if writeln!(out, $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

/// Nine significant digits, lowercase scientific.
pub fn fmt_sci(x: f64) -> String {
    format!("{x:.8e}")
}

/// A CSV file accumulated in memory and written whole after the
/// computation succeeds (no partial files on failure).
pub struct Csv {
    name: &'static str,
    buffer: String,
    rows: usize,
}

impl Csv {
    pub fn new(name: &'static str, header: &str) -> Self {
        let mut buffer = String::new();
        buffer.push_str(header);
        buffer.push('\n');
        Self {
            name,
            buffer,
            rows: 0,
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.buffer.push_str(&fields.join(","));
        self.buffer.push('\n');
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Writes into `out_dir`, creating it if needed, and returns the path.
    pub fn write(&self, out_dir: &Path) -> Result<PathBuf, String> {
        std::fs::create_dir_all(out_dir)
            .map_err(|e| format!("cannot create {}: {e}", out_dir.display()))?;
        let path = out_dir.join(self.name);
        std::fs::write(&path, self.buffer.as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        Ok(path)
    }
}
