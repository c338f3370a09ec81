#![allow(dead_code)]

use chirality_core::Certificate;

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    pub fn certificates(&self) -> Vec<Certificate> {
        self.stdout
            .lines()
            .map(|l| Certificate::from_json(l).expect("certificate line"))
            .collect()
    }

    pub fn single(&self) -> Certificate {
        let mut c = self.certificates();
        assert_eq!(c.len(), 1, "expected one certificate, got {}", self.stdout);
        c.remove(0)
    }
}

pub fn run(args: &[&str]) -> Output {
    run_with_input(args, "")
}

pub fn run_with_input(args: &[&str], input: &str) -> Output {
    let mut argv = vec!["chirality"];
    argv.extend_from_slice(args);
    let mut stdin = input.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = chirality_cli::run_with(argv, &mut stdin, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}
