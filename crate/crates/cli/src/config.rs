//! Config-file handling. The file is TOML with one table per subcommand
//! (`[build]`, `[render]`, ...); keys mirror the long flag names with
//! dashes. Flags given on the command line win over the file.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::CliError;

pub const SECTIONS: [&str; 7] = [
    "build",
    "render",
    "profile",
    "lookup",
    "rangesize",
    "export",
    "import",
];

pub fn load(path: &Path) -> Result<toml::Table, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let table: toml::Table = text
        .parse()
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    for (key, value) in &table {
        if !SECTIONS.contains(&key.as_str()) {
            return Err(CliError::Config(format!(
                "{}: unknown section `[{key}]` (expected one of {})",
                path.display(),
                SECTIONS.join(", ")
            )));
        }
        if !value.is_table() {
            return Err(CliError::Config(format!(
                "{}: `{key}` must be a table",
                path.display()
            )));
        }
    }
    Ok(table)
}

/// Overlays the flags that were given onto the `section` table of the
/// config file. Flag structs use `Option` fields, so absent flags are
/// simply missing from their serialized form.
pub fn merge<T>(flags: &T, config: Option<&toml::Table>, section: &str) -> Result<T, CliError>
where
    T: Serialize + DeserializeOwned,
{
    let mut table = config
        .and_then(|c| c.get(section))
        .and_then(|v| v.as_table())
        .cloned()
        .unwrap_or_default();
    let given = toml::Table::try_from(flags)
        .map_err(|e| CliError::Config(format!("cannot represent flags: {e}")))?;
    for (k, v) in given {
        table.insert(k, v);
    }
    T::deserialize(table).map_err(|e| CliError::Config(format!("[{section}]: {e}")))
}
