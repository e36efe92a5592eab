#![allow(dead_code)]

use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::mpsc;
use std::thread;

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the `vita` binary from the workspace root with a clean environment
/// for `VITA_GAZETTEER`.
pub fn vita(args: &[&str]) -> Run {
    vita_env(args, &[])
}

pub fn vita_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vita"));
    cmd.args(args).current_dir(workspace_root()).env_remove("VITA_GAZETTEER");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("spawn vita");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Serves one canned HTTP response on localhost and reports the request line.
pub struct Stub {
    pub url: String,
    requests: mpsc::Receiver<String>,
}

impl Stub {
    pub fn start(status: u16, body: &str) -> Stub {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let url = format!("http://{}/geocode", listener.local_addr().unwrap());
        let body = body.to_string();
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            let Ok((stream, _)) = listener.accept() else { return };
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut request_line = String::new();
            let _ = reader.read_line(&mut request_line);
            loop {
                let mut header = String::new();
                if reader.read_line(&mut header).unwrap_or(0) == 0 || header == "\r\n" {
                    break;
                }
            }
            let reason = if status == 200 { "OK" } else { "Error" };
            let response = format!(
                "HTTP/1.1 {status} {reason}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
            let mut stream = stream;
            let _ = stream.write_all(response.as_bytes());
            let _ = tx.send(request_line.trim_end().to_string());
        });
        Stub { url, requests: rx }
    }

    pub fn request_line(&self) -> Option<String> {
        self.requests.recv_timeout(std::time::Duration::from_secs(5)).ok()
    }
}

pub const ONE_EVENT: &str = "\
[biography]
title = One stop
id = one-stop

[event]
id = nefertari
kind = excavation
start = 1904
place = deir-el-medina
";

pub const OVERLAPPING_RESIDENCES: &str = "\
[biography]
title = Two homes
id = two-homes

[event]
id = first-home
kind = residence
start = 1700
end = 1710
place = london

[event]
id = second-home
kind = residence
start = 1705
end = 1712
place = cambridge
";

pub const UNKNOWN_PLACE: &str = "\
[biography]
title = Lost
id = lost

[event]
id = atlantis-visit
start = 1900
place = atlantis
";

/// Writes `text` to `name` inside a fresh temp dir together with a copy of
/// the bundled gazetteer, pointed at by a `gazetteer` hint. Returns the dir
/// guard and the file path.
pub fn scratch_vita(name: &str, text: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join(name);
    let text = text.replacen("[biography]\n", "[biography]\ngazetteer = gazetteer.tsv\n", 1);
    std::fs::write(&path, text).unwrap();
    std::fs::copy(
        workspace_root().join("corpora/gazetteer.tsv"),
        dir.path().join("gazetteer.tsv"),
    )
    .unwrap();
    (dir, path)
}

pub fn gazetteer_arg() -> String {
    workspace_root().join("corpora/gazetteer.tsv").display().to_string()
}
