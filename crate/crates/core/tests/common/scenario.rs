use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Scenario {
    pub name: String,
    pub exit: i32,
    pub args: Vec<String>,
    pub golden: PathBuf,
}

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
}

pub fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

/// Every `scenarios/*.args` file: a `# exit N` header, then one argument per line.
pub fn load() -> Vec<Scenario> {
    let dir = crate_dir().join("scenarios");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("scenarios directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "args"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let mut lines = text.lines();
            let header = lines.next().expect("header line");
            let exit = header.strip_prefix("# exit ").and_then(|c| c.trim().parse().ok()).expect("`# exit N` header");
            Scenario {
                name: p.file_stem().unwrap().to_string_lossy().into_owned(),
                exit,
                args: lines.map(str::to_string).collect(),
                golden: p.with_extension("json"),
            }
        })
        .collect()
}

pub fn run(s: &Scenario) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_supercrossed"))
        .args(&s.args)
        .current_dir(crate_dir())
        .output()
        .expect("binary runs");
    Run { code: out.status.code().unwrap_or(-1), stdout: out.stdout }
}

/// Runs the scenario twice and compares both outputs with the golden file.
/// With `UPDATE_GOLDENS` set, the golden file is rewritten from the first run instead.
pub fn check(s: &Scenario) -> Result<(), String> {
    let first = run(s);
    let second = run(s);
    if first.stdout != second.stdout || first.code != second.code {
        return Err(format!("{}: two runs differ", s.name));
    }
    if first.code != s.exit {
        return Err(format!("{}: exit {} (expected {})", s.name, first.code, s.exit));
    }
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::write(&s.golden, &first.stdout).unwrap();
        return Ok(());
    }
    let golden = std::fs::read(&s.golden).map_err(|e| format!("{}: {e}", s.golden.display()))?;
    if golden != first.stdout {
        return Err(format!("{}: output differs from {}", s.name, s.golden.display()));
    }
    Ok(())
}
