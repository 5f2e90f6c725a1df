//! Resolving the category named on the command line.

use std::sync::Arc;

use catkernel::catspec::{load_category, LoadError};
use catkernel::instances::zoo::zoo_by_name;
use catkernel::instances::{finset, FinSetInstance};
use catkernel::FinCategory;

use crate::CliError;

/// `finset:N`, `zoo:NAME` or a catspec path.
pub enum Input {
    FinSet(Arc<FinSetInstance>),
    Cat(Arc<FinCategory>),
}

impl Input {
    pub fn cat(&self) -> &Arc<FinCategory> {
        match self {
            Input::FinSet(inst) => &inst.cat,
            Input::Cat(c) => c,
        }
    }
}

pub fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

pub fn load_file(path: &str) -> Result<(String, FinCategory), CliError> {
    let text = read(path)?;
    let cat = load_category(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    Ok((text, cat))
}

pub fn resolve(spec: &str) -> Result<Input, CliError> {
    if let Some(n) = spec.strip_prefix("finset:") {
        let n: u32 = n.parse().map_err(|_| CliError::Usage(format!("bad size in {spec}")))?;
        let inst = finset(n).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
        return Ok(Input::FinSet(Arc::new(inst)));
    }
    if let Some(name) = spec.strip_prefix("zoo:") {
        let entry = zoo_by_name(name).ok_or_else(|| CliError::Usage(format!("no zoo entry {name}")))?;
        return Ok(Input::Cat(entry.category));
    }
    Ok(Input::Cat(Arc::new(load_file(spec)?.1)))
}

pub fn load_error(path: &str, e: LoadError) -> CliError {
    CliError::Input(format!("{path}: {e}"))
}
