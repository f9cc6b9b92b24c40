//! Parse, map, detect and report in one call.

use thiserror::Error;

use crate::diagnostic::Diagnostic;
use crate::mapper::{map_service_template, MappingContext};
use crate::report::ScanReport;
use crate::rules::{run_all, ConfigError, RuleConfig, ScanContext};
use crate::tosca::{parse, ParseFailure};

#[derive(Debug, Error)]
pub enum ScanError {
    #[error(transparent)]
    Parse(#[from] ParseFailure),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

impl ScanError {
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        match self {
            ScanError::Parse(p) => p.diagnostics.clone(),
            ScanError::Config(c) => vec![Diagnostic::error(c.to_string(), 0, 0)],
        }
    }
}

/// Scans one document. `file` is used for locations in the report.
pub fn scan_source(source: &str, file: &str, config: &RuleConfig) -> Result<ScanReport, ScanError> {
    let parsed = parse(source, file)?;
    let ctx = ScanContext::new(&parsed.template, config.clone())?;
    let occurrences = run_all(&ctx);
    Ok(ScanReport::build(
        file,
        occurrences,
        parsed.diagnostics,
        config,
    ))
}

/// Canonical N-Triples of the mapped document.
pub fn export_graph(source: &str, file: &str) -> Result<String, ParseFailure> {
    let parsed = parse(source, file)?;
    Ok(map_service_template(&parsed.template, &MappingContext::default()).to_ntriples())
}
