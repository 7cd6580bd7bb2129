//! JSON config files mirror the flags of a subcommand; explicit flags win.
//! The config entries are spliced in right after the subcommand name, and
//! because every flag overrides itself the later, user-given copy prevails.

use std::ffi::OsString;
use std::path::Path;

use serde_json::Value;

pub const SUBCOMMANDS: [&str; 10] =
    ["orbital", "trace", "poisson", "surface-trace", "hypo", "algebra-check", "torsion", "zeta", "fried-check", "validate"];

/// Global flags that take a value (their value must not be taken for the
/// subcommand name).
const VALUED_GLOBALS: [&str; 4] = ["--config", "--output", "-o", "--plot-data"];

fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(v.into());
        }
    }
    None
}

fn subcommand_index(argv: &[OsString]) -> Option<usize> {
    let mut i = 1;
    while i < argv.len() {
        let s = argv[i].to_string_lossy();
        if VALUED_GLOBALS.contains(&s.as_ref()) {
            i += 2;
            continue;
        }
        if SUBCOMMANDS.contains(&s.as_ref()) {
            return Some(i);
        }
        i += 1;
    }
    None
}

pub fn config_tokens(path: &Path) -> Result<Vec<OsString>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("--config: cannot read {}: {e}", path.display()))?;
    let json: Value = serde_json::from_str(&text).map_err(|e| format!("--config: {}: {e}", path.display()))?;
    let obj = json.as_object().ok_or_else(|| "--config: top level must be a JSON object".to_string())?;
    let mut out = Vec::new();
    for (key, val) in obj {
        let flag = format!("--{}", key.replace('_', "-"));
        if flag == "--config" {
            return Err("--config: a config file cannot name another config file".into());
        }
        let scalar = |v: &Value| -> Result<String, String> {
            match v {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(format!("--config: value of '{key}' must be a string, number, boolean or array of those")),
            }
        };
        match val {
            Value::Bool(true) => out.push(flag.into()),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                let parts = items.iter().map(scalar).collect::<Result<Vec<_>, _>>()?;
                out.push(flag.into());
                out.push(parts.join(",").into());
            }
            v => {
                out.push(flag.into());
                out.push(scalar(v)?.into());
            }
        }
    }
    Ok(out)
}

/// argv with the config file's flags inserted after the subcommand.
pub fn merged_argv(argv: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let Some(idx) = subcommand_index(&argv) else {
        return Ok(argv);
    };
    let tokens = config_tokens(Path::new(&path))?;
    let mut out: Vec<OsString> = argv[..=idx].to_vec();
    out.extend(tokens);
    out.extend_from_slice(&argv[idx + 1..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn splices_after_subcommand() {
        let dir = std::env::temp_dir().join(format!("orbitalis-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("c.json");
        std::fs::write(&p, r#"{"t": [0.5, 1], "plot_data": "x.dat", "full": true, "skip": false}"#).unwrap();
        let argv = os(&["orbitalis", "--config", p.to_str().unwrap(), "poisson", "--t", "2"]);
        let merged = merged_argv(argv).unwrap();
        let s: Vec<String> = merged.iter().map(|x| x.to_string_lossy().into_owned()).collect();
        let at = s.iter().position(|x| x == "poisson").unwrap();
        assert_eq!(s[at + 1..].to_vec(), vec!["--full", "--plot-data", "x.dat", "--t", "0.5,1", "--t", "2"]);
    }

    #[test]
    fn rejects_nested_objects() {
        let dir = std::env::temp_dir().join(format!("orbitalis-config-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("c.json");
        std::fs::write(&p, r#"{"t": {"a": 1}}"#).unwrap();
        assert!(config_tokens(&p).unwrap_err().starts_with("--config:"));
    }
}
