use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use serde_json::Value;

use crate::Fail;

/// The single writer all output goes through.
pub struct Out {
    w: Box<dyn Write>,
}

impl Out {
    pub fn open(path: Option<&Path>) -> Result<Out, Fail> {
        let w: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p)
                    .with_context(|| format!("cannot create {}", p.display()))
                    .map_err(Fail::Runtime)?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Out { w })
    }

    pub fn line(&mut self, s: impl AsRef<str>) -> io::Result<()> {
        writeln!(self.w, "{}", s.as_ref())
    }

    /// One JSON value per line.
    pub fn json(&mut self, v: &Value) -> io::Result<()> {
        writeln!(self.w, "{v}")
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.w.flush()
    }
}
