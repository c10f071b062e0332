//! Summarizer backends behind one interface.
//!
//! Three transports are supported:
//!
//! * `file:<dir>` reads a precomputed `<dir>/<id>.summary`;
//! * `subprocess:<command> [args...]` talks the line protocol in [`protocol`]
//!   over the child's stdin and stdout;
//! * `http://...` / `https://...` POSTs the document as plain text and reads
//!   the summary from a 200 response body.
//!
//! Summaries are returned verbatim except that trailing line terminators are
//! removed.

pub mod protocol;
mod transport;

pub use transport::{strip_line_endings, AttemptError, Backend, BackendError, BackendSpec, Transport};
