//! Optional JSON run configuration. Keys are identical to the long flag
//! names; explicit flags override file values.

use serde::Deserialize;

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub dim: Option<u8>,
    pub nu: Option<f64>,
    pub k0: Option<f64>,
    pub kc: Option<f64>,
    pub g: Option<f64>,
    pub r: Option<f64>,
    pub rmin: Option<f64>,
    pub rmax: Option<f64>,
    pub points: Option<usize>,
    pub log: Option<bool>,
    pub method: Option<String>,
    pub convention: Option<String>,
    pub claimed: Option<f64>,
    pub tol: Option<f64>,
    pub modes: Option<usize>,
    pub nmax: Option<usize>,
    pub glist: Option<String>,
    pub windows: Option<usize>,
    pub column: Option<String>,
    pub envelope: Option<bool>,
    pub seed: Option<u64>,
    pub output: Option<String>,
}

impl FileConfig {
    /// Loads the file if a path was given; an unreadable or ill-formed
    /// config is a usage error.
    pub fn load(path: Option<&str>) -> Result<Self, String> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {path}: {e}"))?;
        serde_json::from_str(&text).map_err(|e| format!("ill-formed config {path}: {e}"))
    }
}

/// Flag value if given, else the config-file value, else the default.
pub fn pick<T: Clone>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Flag value if given, else the config-file value.
pub fn pick_opt<T: Clone>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}
