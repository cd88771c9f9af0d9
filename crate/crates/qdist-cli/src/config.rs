//! Output plumbing: every file or stream a command writes starts with a
//! config-echo header sufficient to re-run it.

use anyhow::{Context, Result};
use std::io::Write;
use std::path::{Path, PathBuf};

pub struct Report {
    header: Vec<String>,
    body: String,
}

impl Report {
    /// `entries` are `key=value` pairs covering the full effective
    /// configuration, defaults included.
    pub fn new(subcommand: &str, entries: &[(String, String)]) -> Self {
        let mut header = vec![format!("# qdist {subcommand}")];
        let line = entries
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        if !line.is_empty() {
            header.push(format!("# config: {line}"));
        }
        Self {
            header,
            body: String::new(),
        }
    }

    pub fn push_comment(&mut self, line: &str) {
        self.header.push(format!("# {line}"));
    }

    pub fn push(&mut self, text: &str) {
        self.body.push_str(text);
        if !text.ends_with('\n') {
            self.body.push('\n');
        }
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join("\n");
        out.push('\n');
        out.push_str(&self.body);
        out
    }

    /// Writes to `path` when given, otherwise to stdout.
    pub fn emit(&self, path: Option<&PathBuf>) -> Result<()> {
        let rendered = self.render();
        match path {
            Some(p) => write_file(p, &rendered),
            None => {
                std::io::stdout()
                    .write_all(rendered.as_bytes())
                    .context("writing stdout")?;
                Ok(())
            }
        }
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn kv(key: &str, value: impl ToString) -> (String, String) {
    (key.to_string(), value.to_string())
}

/// Runs `f` inside a rayon pool of `workers` threads (ambient pool when
/// `None`).
pub fn with_workers<T>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T>
where
    T: Send,
{
    match workers {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .context("building worker pool")?;
            Ok(pool.install(f))
        }
    }
}
