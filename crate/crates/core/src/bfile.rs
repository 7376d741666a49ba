//! OEIS b-file reading and writing.
//!
//! A b-file holds one `<ordinal> <value>` pair per line. Ordinals written
//! here start at 1 and increase by one; lines end with `\n` and carry no
//! trailing whitespace.

use std::fmt::Display;
use std::io::{self, BufRead, Write};

use crate::fibcore::Integer;

/// Write `values` as a b-file with ordinals `1, 2, ...`.
pub fn write<W, I, T>(mut out: W, values: I) -> io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = T>,
    T: Display,
{
    for (i, v) in values.into_iter().enumerate() {
        writeln!(out, "{} {}", i + 1, v)?;
    }
    Ok(())
}

/// Render `values` as b-file text.
pub fn to_string<I, T>(values: I) -> String
where
    I: IntoIterator<Item = T>,
    T: Display,
{
    let mut buf = Vec::new();
    write(&mut buf, values).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("b-file text is ASCII")
}

/// Parse b-file text into `(ordinal, value)` pairs. Blank lines and `#`
/// comments are skipped.
pub fn read<R: BufRead>(input: R) -> io::Result<Vec<(Integer, Integer)>> {
    let mut rows = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| {
            io::Error::new(
                io::ErrorKind::InvalidData,
                format!("line {}: {msg}: {line:?}", i + 1),
            )
        };
        let mut parts = trimmed.split_whitespace();
        let (Some(ord), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad("expected `<ordinal> <value>`"));
        };
        let ord = ord.parse().map_err(|_| bad("bad ordinal"))?;
        let val = val.parse().map_err(|_| bad("bad value"))?;
        rows.push((ord, val));
    }
    Ok(rows)
}
