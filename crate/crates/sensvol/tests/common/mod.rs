//! Helpers shared by the integration tests that drive the binary.

#![allow(dead_code)]

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::path::Path;
use std::process::{Child, Command, Output, Stdio};

pub fn sensvol(data: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sensvol"))
        .arg("--data")
        .arg(data)
        .args(args)
        .env_remove("SENSVOL_PORT")
        .output()
        .unwrap()
}

/// Runs the binary and returns its stdout, or the failure message.
pub fn try_ok(data: &Path, args: &[&str]) -> Result<String, String> {
    let out = sensvol(data, args);
    if out.status.success() {
        Ok(String::from_utf8_lossy(&out.stdout).into_owned())
    } else {
        Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))
    }
}

pub fn ok(data: &Path, args: &[&str]) -> String {
    try_ok(data, args).unwrap_or_else(|e| panic!("{e}"))
}

/// A `serve` process on a free port chosen through `SENSVOL_PORT`.
pub struct Server {
    child: Child,
    pub port: u16,
}

impl Server {
    pub fn start(data: &Path) -> Server {
        let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
        let mut child = Command::new(env!("CARGO_BIN_EXE_sensvol"))
            .arg("--data")
            .arg(data)
            .args(["serve", "--port", "1"])
            .env("SENSVOL_PORT", port.to_string())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .unwrap();
        let mut line = String::new();
        BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).unwrap();
        assert!(line.contains(&format!(":{port}")), "unexpected banner {line:?}");
        Server { child, port }
    }

    /// One request with `Connection: close`; returns status, headers and body.
    pub fn request(&self, method: &str, path: &str, body: &str, accept: &str) -> (u16, String, Vec<u8>) {
        let mut s = TcpStream::connect(("127.0.0.1", self.port)).unwrap();
        write!(
            s,
            "{method} {path} HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\nAccept: {accept}\r\n\
             Content-Type: application/json\r\nContent-Length: {}\r\n\r\n{body}",
            body.len()
        )
        .unwrap();
        let mut raw = Vec::new();
        s.read_to_end(&mut raw).unwrap();
        let split = raw.windows(4).position(|w| w == b"\r\n\r\n").expect("header terminator");
        let head = String::from_utf8_lossy(&raw[..split]).into_owned();
        let status = head.split(' ').nth(1).unwrap().parse().unwrap();
        (status, head, raw[split + 4..].to_vec())
    }

    pub fn json(&self, method: &str, path: &str, body: &str) -> (u16, serde_json::Value) {
        let (status, _, bytes) = self.request(method, path, body, "application/json");
        (status, serde_json::from_slice(&bytes).unwrap_or_else(|e| panic!("{path}: {e}")))
    }
}

impl Drop for Server {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}
