use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::thread;
use std::time::Duration;

use factharness_bridge::protocol::{decode, encode};
use factharness_bridge::{AttemptError, Backend, BackendError, BackendSpec};

const ECHO: &str = env!("CARGO_BIN_EXE_factharness-echo");

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

struct Vector {
    name: String,
    text: String,
    request: String,
    response: String,
}

fn vectors() -> Vec<Vector> {
    let raw = std::fs::read_to_string(fixtures().join("conformance.jsonl")).unwrap();
    raw.lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            let s = |k: &str| v[k].as_str().unwrap().to_string();
            Vector { name: s("name"), text: s("text"), request: s("request"), response: s("response") }
        })
        .collect()
}

fn spec(s: &str, timeout_ms: u64, retries: u32) -> BackendSpec {
    BackendSpec::parse(s, Duration::from_millis(timeout_ms), retries).unwrap()
}

#[test]
fn conformance_vectors_encode_and_decode() {
    let vs = vectors();
    assert_eq!(vs.len(), 10);
    assert!(vs.iter().any(|v| v.text.len() == 50 * 1024));
    for v in &vs {
        assert_eq!(encode(&v.text), v.request, "{}", v.name);
        assert_eq!(decode(&v.request).unwrap(), v.text, "{}", v.name);
    }
}

#[test]
fn echo_binary_answers_conformance_vectors_byte_for_byte() {
    let vs = vectors();
    let mut child = Command::new(ECHO).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    let mut stdin = child.stdin.take().unwrap();
    let input: String = vs.iter().map(|v| v.request.as_str()).collect();
    let writer = thread::spawn(move || stdin.write_all(input.as_bytes()));
    let mut out = Vec::new();
    child.stdout.take().unwrap().read_to_end(&mut out).unwrap();
    writer.join().unwrap().unwrap();
    assert!(child.wait().unwrap().success());
    let expected: String = vs.iter().map(|v| v.response.as_str()).collect();
    assert_eq!(out, expected.as_bytes());
}

#[test]
fn subprocess_echo_returns_document_text() {
    let backend = Backend::new(spec(&format!("subprocess:{ECHO}"), 5000, 0));
    assert_eq!(backend.id(), "factharness-echo");
    for v in vectors() {
        let got = backend.summarize(&v.name, &v.text).unwrap();
        assert_eq!(got, v.text.trim_end_matches(['\n', '\r']), "{}", v.name);
    }
}

#[test]
fn silent_subprocess_times_out_after_retries() {
    let backend = Backend::new(spec("subprocess:sleep 30", 150, 2));
    let err = backend.summarize("doc-1", "text").unwrap_err();
    assert!(err.is_timeout());
    assert_eq!(
        err,
        BackendError::Failed {
            doc: "doc-1".into(),
            attempts: 3,
            source: AttemptError::Timeout(Duration::from_millis(150))
        }
    );
}

#[test]
fn missing_program_is_unavailable() {
    let backend = Backend::new(spec("subprocess:/nonexistent/summarizer", 500, 1));
    match backend.summarize("d", "t").unwrap_err() {
        BackendError::Failed { doc, attempts: 2, source: AttemptError::Unavailable(_) } => assert_eq!(doc, "d"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn file_transport_returns_precomputed_summaries_verbatim() {
    for model in ["pegasus-cnn_dailymail", "pegasus-xsum", "bart-large-cnn", "bart-large-xsum"] {
        let dir = fixtures().join("summaries").join(model);
        let raw = std::fs::read_to_string(dir.join("crime-0000.summary")).unwrap();
        let backend = Backend::new(spec(&format!("{model}=file:{}", dir.display()), 1000, 0));
        assert_eq!(backend.id(), model);
        let got = backend.summarize("crime-0000", "ignored").unwrap();
        assert_eq!(got, raw.strip_suffix('\n').unwrap());
        assert!(matches!(
            backend.summarize("crime-9999", "ignored"),
            Err(BackendError::Failed { source: AttemptError::Unavailable(_), .. })
        ));
    }
}

/// Serves `n` requests: replies 200 with the upper-cased body, or `status`.
fn http_server(n: usize, status: u16) -> String {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    thread::spawn(move || {
        for stream in listener.incoming().take(n) {
            let mut stream = stream.unwrap();
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut len = 0;
            loop {
                let mut line = String::new();
                reader.read_line(&mut line).unwrap();
                if line == "\r\n" {
                    break;
                }
                if let Some(v) = line.to_ascii_lowercase().strip_prefix("content-length:") {
                    len = v.trim().parse().unwrap();
                }
            }
            let mut body = vec![0; len];
            reader.read_exact(&mut body).unwrap();
            let reply = String::from_utf8(body).unwrap().to_uppercase();
            write!(
                stream,
                "HTTP/1.1 {status} X\r\nContent-Type: text/plain\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{reply}",
                reply.len()
            )
            .unwrap();
        }
    });
    format!("http://{addr}/summarize")
}

#[test]
fn http_posts_plain_text() {
    let url = http_server(1, 200);
    let backend = Backend::new(spec(&url, 5000, 0));
    assert_eq!(backend.summarize("d", "a short text\n").unwrap(), "A SHORT TEXT");
}

#[test]
fn http_non_200_is_a_failure() {
    let url = http_server(2, 503);
    let backend = Backend::new(spec(&url, 5000, 1));
    match backend.summarize("d", "x").unwrap_err() {
        BackendError::Failed { attempts: 2, source: AttemptError::Protocol(m), .. } => assert!(m.contains("503")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unreachable_http_is_unavailable() {
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let backend = Backend::new(spec(&format!("http://127.0.0.1:{port}/"), 2000, 0));
    assert!(matches!(
        backend.summarize("d", "x"),
        Err(BackendError::Failed { source: AttemptError::Unavailable(_), .. })
    ));
}
