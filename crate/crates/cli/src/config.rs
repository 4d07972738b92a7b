use crate::commands::CliError;
use crate::Format;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::path::{Path, PathBuf};

pub const THREADS_ENV: &str = "ZPLAB_THREADS";

pub fn load(path: &Path) -> Result<Map<String, Value>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(CliError::Input(format!("{}: expected a JSON object", path.display()))),
        Err(e) => Err(CliError::Input(format!("{}: {e}", path.display()))),
    }
}

/// Overlay the flags that were given onto the file's values.
pub fn merge<T: Serialize + DeserializeOwned>(flags: T, file: Map<String, Value>) -> Result<T, CliError> {
    let mut base = file;
    if let Value::Object(m) = serde_json::to_value(&flags).map_err(|e| CliError::Input(e.to_string()))? {
        for (k, v) in m {
            if !v.is_null() {
                base.insert(k, v);
            }
        }
    }
    serde_json::from_value(Value::Object(base)).map_err(|e| CliError::Input(format!("config: {e}")))
}

pub fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    zplab_core::export::to_json(v)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Input(e.to_string()))
}

#[derive(Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct GlobalFile {
    threads: Option<usize>,
    format: Option<Format>,
    output: Option<PathBuf>,
    no_timing: Option<bool>,
}

pub struct Global {
    pub threads: Option<usize>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub no_timing: bool,
}

impl Global {
    /// Flags, then the config file, then `ZPLAB_THREADS`. Global keys are
    /// removed from `file` so the rest can be matched against the subcommand.
    pub fn resolve(
        threads: Option<usize>,
        format: Option<Format>,
        output: Option<PathBuf>,
        no_timing: bool,
        file: &mut Map<String, Value>,
    ) -> Result<Self, CliError> {
        let mut picked = Map::new();
        for key in ["threads", "format", "output", "no_timing"] {
            if let Some(v) = file.remove(key) {
                picked.insert(key.to_string(), v);
            }
        }
        let f: GlobalFile = serde_json::from_value(Value::Object(picked)).map_err(|e| CliError::Input(format!("config: {e}")))?;
        let env = match std::env::var(THREADS_ENV) {
            Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| CliError::Input(format!("{THREADS_ENV} must be a positive integer")))?),
            Err(_) => None,
        };
        let threads = threads.or(f.threads).or(env);
        if threads == Some(0) {
            return Err(CliError::Input("thread count must be at least 1".into()));
        }
        Ok(Global {
            threads,
            format: format.or(f.format),
            output: output.or(f.output),
            no_timing: no_timing || f.no_timing.unwrap_or(false),
        })
    }

    pub fn install_threads(&self) -> Result<(), CliError> {
        if let Some(n) = self.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
        }
        Ok(())
    }

    pub fn write(&self, text: &str) -> Result<(), CliError> {
        match &self.output {
            Some(path) => {
                std::fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
            }
            None => {
                use std::io::Write;
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Input(e.to_string()))
            }
        }
    }
}
