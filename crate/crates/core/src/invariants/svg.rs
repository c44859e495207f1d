use super::sweep::Record;
use crate::error::{Error, Result};
use std::io::Write;

/// Scatter plot of `(q1, q2)` with one 1px marker per record on a
/// `size x size` canvas. `q1` runs left to right, `q2` bottom to top.
pub struct SvgWriter<W: Write> {
    out: W,
    size: u64,
}

fn io(e: std::io::Error) -> Error {
    Error::SinkFailure(e.to_string())
}

impl<W: Write> SvgWriter<W> {
    pub const FORMAT_VERSION: u32 = 1;

    pub fn new(mut out: W, size: u64, title: &str) -> Result<Self> {
        if size == 0 {
            return Err(Error::ConfigRejected("canvas size must be positive".into()));
        }
        let title = title
            .replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;");
        writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
        )
        .map_err(io)?;
        writeln!(
            out,
            "<!-- sg2 ratio scatter, format_version={} -->",
            Self::FORMAT_VERSION
        )
        .map_err(io)?;
        writeln!(out, "<title>{title}</title>").map_err(io)?;
        writeln!(
            out,
            "<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>"
        )
        .map_err(io)?;
        writeln!(out, "<g fill=\"black\">").map_err(io)?;
        Ok(SvgWriter { out, size })
    }

    fn pixel(&self, num: u64, den: u64) -> u64 {
        ((u128::from(num) * u128::from(self.size) / u128::from(den)) as u64).min(self.size - 1)
    }

    pub fn write(&mut self, r: &Record) -> Result<()> {
        let (n1, d1) = r.q1();
        let (n2, d2) = r.q2();
        let x = self.pixel(n1, d1);
        let y = self.size - 1 - self.pixel(n2, d2);
        writeln!(
            self.out,
            "<rect x=\"{x}\" y=\"{y}\" width=\"1\" height=\"1\"/>"
        )
        .map_err(io)
    }

    pub fn finish(mut self) -> Result<W> {
        writeln!(self.out, "</g>\n</svg>").map_err(io)?;
        self.out.flush().map_err(io)?;
        Ok(self.out)
    }
}
