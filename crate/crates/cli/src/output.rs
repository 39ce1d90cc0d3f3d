use std::io::{self, Write};

use mcf_core::{BigRational, Exact};
use serde_json::{json, Value};

/// Bumped whenever a column or key changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

/// Fractional digits in every decimal rendering.
pub const DECIMAL_DIGITS: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Precision tag attached to every output.
#[derive(Clone, Copy, Debug)]
pub struct Tag {
    pub command: &'static str,
    pub precision_bits: u64,
}

impl Tag {
    fn csv_comment(&self) -> String {
        format!(
            "# mcf {} schema={} decimal_digits={} precision_bits={}\n",
            self.command, SCHEMA_VERSION, DECIMAL_DIGITS, self.precision_bits
        )
    }

    /// JSON header fields merged into every top-level object.
    pub fn header(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "decimal_digits": DECIMAL_DIGITS,
            "precision_bits": self.precision_bits,
        })
    }
}

/// CSV table prefixed by a `#` comment line carrying the tag.
pub fn write_csv<W: Write>(
    out: W,
    tag: Tag,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> io::Result<()> {
    let mut out = out;
    out.write_all(tag.csv_comment().as_bytes())?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()
}

/// Pretty JSON with the header keys merged in. Keys come out sorted.
pub fn write_json<W: Write>(out: W, tag: Tag, body: Value) -> io::Result<()> {
    let mut obj = tag.header();
    if let (Value::Object(h), Value::Object(b)) = (&mut obj, body) {
        h.extend(b);
    }
    let mut out = out;
    serde_json::to_writer_pretty(&mut out, &obj)?;
    out.write_all(b"\n")
}

pub fn decimal(x: &Exact) -> String {
    x.to_decimal(DECIMAL_DIGITS)
}

/// For quantities that shrink like `1/t`.
pub fn scientific(x: &Exact) -> String {
    x.to_scientific(DECIMAL_DIGITS)
}

pub fn rational_decimal(t: &BigRational) -> String {
    let x = Exact::Rational(t.clone());
    if t.is_integer() {
        x.to_string()
    } else {
        x.to_decimal(DECIMAL_DIGITS)
    }
}
