//! JSON output with deterministic float formatting.
//!
//! Floats are written with 17 significant digits so that serialized numbers
//! round-trip bit-exactly and repeated runs produce byte-identical files.
//! Non-finite values serialize as `null` (only unbounded ratios produce them).

use serde::Serialize;
use std::io;

struct SigDigits;

impl serde_json::ser::Formatter for SigDigits {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{:.16e}", value)
    }
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    String::from_utf8(out).expect("serde_json emits valid UTF-8")
}
