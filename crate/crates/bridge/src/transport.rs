use std::fs;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::sync::Mutex;
use std::thread;
use std::time::Duration;

use thiserror::Error;

use crate::protocol::{self, ProtocolError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transport {
    File,
    Subprocess,
    Http,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackendSpec {
    pub id: String,
    pub transport: Transport,
    /// Directory, command line or URL.
    pub location: String,
    pub timeout: Duration,
    pub max_retries: u32,
}

/// Why a single attempt failed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AttemptError {
    #[error("timed out after {0:?}")]
    Timeout(Duration),
    #[error("protocol error: {0}")]
    Protocol(String),
    #[error("backend unavailable: {0}")]
    Unavailable(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BackendError {
    #[error("invalid backend spec: {0}")]
    Spec(String),
    #[error("document {doc}: {source} (after {attempts} attempt(s))")]
    Failed { doc: String, attempts: u32, source: AttemptError },
}

impl BackendError {
    pub fn is_timeout(&self) -> bool {
        matches!(self, BackendError::Failed { source: AttemptError::Timeout(_), .. })
    }
}

impl BackendSpec {
    /// Parses `file:<dir>`, `subprocess:<command> [args]` or an http(s) URL.
    /// The optional `name=` prefix sets the backend id used in reports.
    pub fn parse(spec: &str, timeout: Duration, max_retries: u32) -> Result<BackendSpec, BackendError> {
        if timeout.is_zero() {
            return Err(BackendError::Spec("timeout must be positive".into()));
        }
        let (name, rest) = match spec.split_once('=') {
            Some((n, r)) if !n.is_empty() && !n.contains(':') && !n.contains('/') => (Some(n), r),
            _ => (None, spec),
        };
        let (transport, location) = if rest.starts_with("http://") || rest.starts_with("https://") {
            (Transport::Http, rest)
        } else if let Some(dir) = rest.strip_prefix("file:") {
            (Transport::File, dir)
        } else if let Some(cmd) = rest.strip_prefix("subprocess:") {
            (Transport::Subprocess, cmd)
        } else {
            return Err(BackendError::Spec(format!("`{spec}` is not file:, subprocess: or an http URL")));
        };
        if location.trim().is_empty() {
            return Err(BackendError::Spec(format!("`{spec}` has an empty location")));
        }
        let id = match name {
            Some(n) => n.to_string(),
            None => match transport {
                Transport::File => "file".to_string(),
                Transport::Http => "http".to_string(),
                Transport::Subprocess => {
                    let program = location.split_whitespace().next().unwrap_or(location);
                    PathBuf::from(program).file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default()
                }
            },
        };
        Ok(BackendSpec { id, transport, location: location.trim().to_string(), timeout, max_retries })
    }
}

/// Removes trailing CR and LF characters, nothing else.
pub fn strip_line_endings(mut s: String) -> String {
    while s.ends_with(['\n', '\r']) {
        s.pop();
    }
    s
}

struct Process {
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<std::io::Result<Vec<u8>>>,
}

impl Process {
    fn spawn(command: &str) -> Result<Process, AttemptError> {
        let mut parts = command.split_whitespace();
        let program = parts.next().ok_or_else(|| AttemptError::Unavailable("empty command".into()))?;
        let mut child = Command::new(program)
            .args(parts)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| AttemptError::Unavailable(format!("cannot start `{program}`: {e}")))?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            let mut reader = BufReader::new(stdout);
            loop {
                match protocol::read_line(&mut reader) {
                    Ok(Some(line)) => {
                        if tx.send(Ok(line)).is_err() {
                            break;
                        }
                    }
                    Ok(None) => break,
                    Err(e) => {
                        let _ = tx.send(Err(e));
                        break;
                    }
                }
            }
        });
        Ok(Process { child, stdin, lines: rx })
    }

    fn kill(mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

/// A summarizer backend. Subprocess backends keep one child alive and allow
/// one request in flight; file and http backends are freely concurrent.
pub struct Backend {
    spec: BackendSpec,
    process: Mutex<Option<Process>>,
}

impl Backend {
    pub fn new(spec: BackendSpec) -> Backend {
        Backend { spec, process: Mutex::new(None) }
    }

    pub fn spec(&self) -> &BackendSpec {
        &self.spec
    }

    pub fn id(&self) -> &str {
        &self.spec.id
    }

    /// Summarizes one document, retrying failed attempts up to `max_retries`.
    pub fn summarize(&self, doc_id: &str, text: &str) -> Result<String, BackendError> {
        let attempts = self.spec.max_retries + 1;
        let mut last = None;
        for _ in 0..attempts {
            let result = match self.spec.transport {
                Transport::File => self.read_file(doc_id),
                Transport::Subprocess => self.ask_process(text),
                Transport::Http => self.post_http(text),
            };
            match result {
                Ok(s) => return Ok(strip_line_endings(s)),
                Err(e) => last = Some(e),
            }
        }
        Err(BackendError::Failed {
            doc: doc_id.to_string(),
            attempts,
            source: last.expect("at least one attempt"),
        })
    }

    fn read_file(&self, doc_id: &str) -> Result<String, AttemptError> {
        let path = PathBuf::from(&self.spec.location).join(format!("{doc_id}.summary"));
        fs::read_to_string(&path).map_err(|e| AttemptError::Unavailable(format!("{}: {e}", path.display())))
    }

    fn ask_process(&self, text: &str) -> Result<String, AttemptError> {
        let mut guard = self.process.lock().unwrap_or_else(|p| p.into_inner());
        if guard.is_none() {
            *guard = Some(Process::spawn(&self.spec.location)?);
        }
        let proc = guard.as_mut().expect("spawned");
        let request = protocol::encode(text);
        let sent = proc.stdin.write_all(request.as_bytes()).and_then(|_| proc.stdin.flush());
        if let Err(e) = sent {
            if let Some(a) = guard.take() { Process::kill(a) }
            return Err(AttemptError::Unavailable(format!("write failed: {e}")));
        }
        match proc.lines.recv_timeout(self.spec.timeout) {
            Ok(Ok(line)) => match protocol::decode_bytes(&line) {
                Ok(summary) => Ok(summary),
                // The backend answered in protocol; the stream is still in sync.
                Err(ProtocolError::Remote(m)) => Err(AttemptError::Protocol(format!("backend error: {m}"))),
                Err(e) => {
                    if let Some(a) = guard.take() { Process::kill(a) }
                    Err(AttemptError::Protocol(e.to_string()))
                }
            },
            Ok(Err(e)) => {
                if let Some(a) = guard.take() { Process::kill(a) }
                Err(AttemptError::Unavailable(format!("read failed: {e}")))
            }
            Err(RecvTimeoutError::Timeout) => {
                if let Some(a) = guard.take() { Process::kill(a) }
                Err(AttemptError::Timeout(self.spec.timeout))
            }
            Err(RecvTimeoutError::Disconnected) => {
                if let Some(a) = guard.take() { Process::kill(a) }
                Err(AttemptError::Unavailable("backend closed its output".into()))
            }
        }
    }

    fn post_http(&self, text: &str) -> Result<String, AttemptError> {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.spec.timeout))
            .http_status_as_error(false)
            .build()
            .into();
        let mut response = agent
            .post(&self.spec.location)
            .header("Content-Type", "text/plain; charset=utf-8")
            .send(text)
            .map_err(|e| match e {
                ureq::Error::Timeout(_) => AttemptError::Timeout(self.spec.timeout),
                other => AttemptError::Unavailable(other.to_string()),
            })?;
        if response.status() != 200 {
            return Err(AttemptError::Protocol(format!("HTTP status {}", response.status())));
        }
        response.body_mut().read_to_string().map_err(|e| AttemptError::Protocol(e.to_string()))
    }
}

impl Drop for Backend {
    fn drop(&mut self) {
        if let Some(p) = self.process.get_mut().ok().and_then(Option::take) {
            p.kill();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: Duration = Duration::from_secs(5);

    #[test]
    fn parses_specs() {
        let s = BackendSpec::parse("file:/tmp/s", T, 2).unwrap();
        assert_eq!((s.transport, s.id.as_str(), s.location.as_str()), (Transport::File, "file", "/tmp/s"));
        let s = BackendSpec::parse("subprocess:/usr/bin/python3 adapter.py --stub", T, 0).unwrap();
        assert_eq!((s.transport, s.id.as_str()), (Transport::Subprocess, "python3"));
        let s = BackendSpec::parse("bart=http://localhost:8000/summarize", T, 0).unwrap();
        assert_eq!((s.transport, s.id.as_str()), (Transport::Http, "bart"));
        assert!(BackendSpec::parse("ftp://x", T, 0).is_err());
        assert!(BackendSpec::parse("file:", T, 0).is_err());
        assert!(BackendSpec::parse("file:x", Duration::ZERO, 0).is_err());
    }

    #[test]
    fn strips_only_line_endings() {
        assert_eq!(strip_line_endings("a b \r\n\n".into()), "a b ");
        assert_eq!(strip_line_endings("\n".into()), "");
    }
}
