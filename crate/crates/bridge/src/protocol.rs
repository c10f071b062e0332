//! The subprocess line protocol.
//!
//! ```text
//! <n> SP <payload> LF
//! ```
//!
//! `payload` is the UTF-8 text with `\` escaped as `\\` and each line feed
//! as `\n`; `n` is the payload's length in bytes as written on the line.
//! Requests carry a document and responses a summary. A backend that cannot
//! summarize answers `ERR <n> <payload>` with an escaped message and keeps
//! serving.

use std::io::{self, BufRead, Write};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProtocolError {
    #[error("line has no length prefix")]
    MissingLength,
    #[error("bad length prefix `{0}`")]
    BadLength(String),
    #[error("length prefix says {declared} bytes, payload has {actual}")]
    LengthMismatch { declared: usize, actual: usize },
    #[error("invalid escape `\\{0}`")]
    BadEscape(char),
    #[error("payload ends inside an escape")]
    DanglingEscape,
    #[error("line is not UTF-8")]
    NotUtf8,
    #[error("backend reported: {0}")]
    Remote(String),
}

pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

pub fn unescape(payload: &str) -> Result<String, ProtocolError> {
    let mut out = String::with_capacity(payload.len());
    let mut chars = payload.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('n') => out.push('\n'),
            Some(other) => return Err(ProtocolError::BadEscape(other)),
            None => return Err(ProtocolError::DanglingEscape),
        }
    }
    Ok(out)
}

/// One complete line, terminator included.
pub fn encode(text: &str) -> String {
    let payload = escape(text);
    format!("{} {payload}\n", payload.len())
}

pub fn encode_error(message: &str) -> String {
    format!("ERR {}", encode(message))
}

fn decode_frame(line: &str) -> Result<String, ProtocolError> {
    let (len, payload) = line.split_once(' ').ok_or(ProtocolError::MissingLength)?;
    let declared: usize = len.parse().map_err(|_| ProtocolError::BadLength(len.to_string()))?;
    if declared != payload.len() {
        return Err(ProtocolError::LengthMismatch { declared, actual: payload.len() });
    }
    unescape(payload)
}

/// Decodes a line, with or without its terminating LF.
pub fn decode(line: &str) -> Result<String, ProtocolError> {
    let line = line.strip_suffix('\n').unwrap_or(line);
    match line.strip_prefix("ERR ") {
        Some(err) => Err(ProtocolError::Remote(decode_frame(err)?)),
        None => decode_frame(line),
    }
}

/// Reads one raw line. `Ok(None)` at end of input.
pub fn read_line<R: BufRead>(reader: &mut R) -> io::Result<Option<Vec<u8>>> {
    let mut buf = Vec::new();
    match reader.read_until(b'\n', &mut buf)? {
        0 => Ok(None),
        _ => Ok(Some(buf)),
    }
}

pub fn decode_bytes(line: &[u8]) -> Result<String, ProtocolError> {
    decode(std::str::from_utf8(line).map_err(|_| ProtocolError::NotUtf8)?)
}

/// Serves requests until end of input. Malformed requests and handler
/// failures produce `ERR` lines; the loop continues.
pub fn serve<R, W, F>(mut reader: R, mut writer: W, mut handler: F) -> io::Result<()>
where
    R: BufRead,
    W: Write,
    F: FnMut(&str) -> Result<String, String>,
{
    while let Some(line) = read_line(&mut reader)? {
        let reply = match decode_bytes(&line) {
            Ok(doc) => match handler(&doc) {
                Ok(summary) => encode(&summary),
                Err(e) => encode_error(&e),
            },
            Err(e) => encode_error(&format!("malformed request: {e}")),
        };
        writer.write_all(reply.as_bytes())?;
        writer.flush()?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escapes_round_trip() {
        for s in ["", "a\nb", "\\n", "\\\n\\", "tab\there"] {
            assert_eq!(unescape(&escape(s)).unwrap(), s);
            assert_eq!(decode(&encode(s)).unwrap(), s);
        }
        assert_eq!(encode("a\nb"), "4 a\\nb\n");
    }

    #[test]
    fn rejects_malformed_lines() {
        assert_eq!(decode("hello"), Err(ProtocolError::MissingLength));
        assert_eq!(decode("x hello"), Err(ProtocolError::BadLength("x".into())));
        assert_eq!(decode("3 hello"), Err(ProtocolError::LengthMismatch { declared: 3, actual: 5 }));
        assert_eq!(decode("2 \\t"), Err(ProtocolError::BadEscape('t')));
        assert_eq!(decode("1 \\"), Err(ProtocolError::DanglingEscape));
        assert_eq!(decode(&encode_error("boom")), Err(ProtocolError::Remote("boom".into())));
    }

    #[test]
    fn serve_keeps_going_after_bad_input() {
        let input = format!("{}garbage\n{}", encode("one"), encode("two"));
        let mut out = Vec::new();
        serve(input.as_bytes(), &mut out, |d| Ok(d.to_uppercase())).unwrap();
        let lines: Vec<&str> = std::str::from_utf8(&out).unwrap().lines().collect();
        assert_eq!(lines[0], "3 ONE");
        assert!(lines[1].starts_with("ERR "));
        assert_eq!(lines[2], "3 TWO");
    }
}
