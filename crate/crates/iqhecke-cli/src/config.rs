//! Parameter resolution with the documented precedence: command-line flag,
//! then `IQHECKE_*` environment variable (budget caps only), then the flat
//! key=value config file, then the built-in default. Every resolved value
//! is recorded so reports can echo the exact configuration they ran under.

use anyhow::{bail, Context};
use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

pub struct Resolver {
    file: BTreeMap<String, String>,
    echo: BTreeMap<String, String>,
}

impl Resolver {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let mut file = BTreeMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read config {}", path.display()))?;
            for (lineno, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    bail!(
                        "{}:{}: expected key=value, got {raw:?}",
                        path.display(),
                        lineno + 1
                    );
                };
                file.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Resolver {
            file,
            echo: BTreeMap::new(),
        })
    }

    fn lookup<T: FromStr>(&self, source: &str, key: &str, raw: &str) -> anyhow::Result<T>
    where
        T::Err: Display,
    {
        raw.parse()
            .map_err(|e| anyhow::anyhow!("{source} value for {key} ({raw:?}): {e}"))
    }

    /// Flag, then config file, then default.
    pub fn get<T: FromStr + Display + Clone>(
        &mut self,
        key: &str,
        flag: Option<T>,
        default: T,
    ) -> anyhow::Result<T>
    where
        T::Err: Display,
    {
        let value = match flag {
            Some(v) => v,
            None => match self.file.get(key) {
                Some(raw) => self.lookup("config", key, raw)?,
                None => default,
            },
        };
        self.echo.insert(key.to_string(), value.to_string());
        Ok(value)
    }

    /// Budget caps additionally consult `IQHECKE_<KEY>` between the flag
    /// and the config file.
    pub fn get_budget<T: FromStr + Display + Clone>(
        &mut self,
        key: &str,
        flag: Option<T>,
        default: T,
    ) -> anyhow::Result<T>
    where
        T::Err: Display,
    {
        let env_key = format!("IQHECKE_{}", key.replace('-', "_").to_uppercase());
        let value = match flag {
            Some(v) => v,
            None => match std::env::var(&env_key) {
                Ok(raw) => self.lookup(&env_key, key, &raw)?,
                Err(_) => match self.file.get(key) {
                    Some(raw) => self.lookup("config", key, raw)?,
                    None => default,
                },
            },
        };
        self.echo.insert(key.to_string(), value.to_string());
        Ok(value)
    }

    /// A list-valued key: comma-separated in both flag and file form.
    pub fn get_list<T: FromStr + Display>(
        &mut self,
        key: &str,
        flag: Option<&str>,
        default: &[T],
    ) -> anyhow::Result<Vec<T>>
    where
        T::Err: Display,
    {
        let raw = match flag {
            Some(v) => v.to_string(),
            None => match self.file.get(key) {
                Some(raw) => raw.clone(),
                None => default
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            },
        };
        let mut values: Vec<T> = Vec::new();
        for part in raw.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            values.push(self.lookup("list", key, part)?);
        }
        if values.is_empty() {
            bail!("{key} must contain at least one value");
        }
        self.echo.insert(
            key.to_string(),
            values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        Ok(values)
    }

    pub fn note(&mut self, key: &str, value: impl Display) {
        self.echo.insert(key.to_string(), value.to_string());
    }

    pub fn into_echo(self) -> BTreeMap<String, String> {
        self.echo
    }
}
