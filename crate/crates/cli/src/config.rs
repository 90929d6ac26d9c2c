use std::fs;
use std::path::Path;

use crate::CliError;

/// Flags that take no value; `key = true` in a config file switches them on.
const SWITCHES: &[&str] = &["experimental"];

/// Parsed `key = value` lines, in file order.
pub fn parse(text: &str, path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let mut entries: Vec<(String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!(
                "{}:{}: expected key = value, found {line:?}",
                path.display(),
                lineno + 1
            )));
        };
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim().to_string();
        if key.is_empty() {
            return Err(CliError::Config(format!("{}:{}: empty key", path.display(), lineno + 1)));
        }
        if key == "config" {
            return Err(CliError::Config(format!(
                "{}:{}: --config cannot be nested",
                path.display(),
                lineno + 1
            )));
        }
        if entries.iter().any(|(k, _)| *k == key) {
            return Err(CliError::Config(format!(
                "{}:{}: duplicate key --{key}",
                path.display(),
                lineno + 1
            )));
        }
        entries.push((key, value));
    }
    Ok(entries)
}

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn given_on_command_line(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefix = format!("--{key}=");
    args.iter().any(|a| *a == flag || a.starts_with(&prefix))
}

/// Appends config-file entries as `--key=value` flags, skipping any key the
/// command line already sets. Unknown keys are left for clap to reject.
pub fn merge(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let path = Path::new(&path);
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut merged = args.clone();
    for (key, value) in parse(&text, path)? {
        if given_on_command_line(&args, &key) {
            continue;
        }
        if SWITCHES.contains(&key.as_str()) {
            match value.as_str() {
                "true" => merged.push(format!("--{key}")),
                "false" => {}
                _ => {
                    return Err(CliError::Config(format!(
                        "{}: --{key} expects true or false, found {value:?}",
                        path.display()
                    )))
                }
            }
        } else {
            merged.push(format!("--{key}={value}"));
        }
    }
    Ok(merged)
}
