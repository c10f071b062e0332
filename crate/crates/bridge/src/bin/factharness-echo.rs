//! Identity summarizer speaking the line protocol on stdin/stdout.

use std::io::{self, BufWriter};

fn main() -> io::Result<()> {
    let stdin = io::stdin().lock();
    let stdout = BufWriter::new(io::stdout().lock());
    factharness_bridge::protocol::serve(stdin, stdout, |doc| Ok(doc.to_string()))
}
