use std::io::Read;
use std::path::Path;

use anyhow::anyhow;
use knotoid::diagram::{GeometricDiagram, KnotoidPD};
use knotoid::Error;

/// A failed command, split by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or invalid input (exit 1).
    Input(anyhow::Error),
    /// Valid input on which a computation failed (exit 2).
    Compute(anyhow::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Compute(_) => 2,
        }
    }

    pub fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Input(e) | Failure::Compute(e) => e,
        }
    }

    /// Classifies a library error, prefixing `context` (usually a file name).
    pub fn from_lib(e: Error, context: &str) -> Self {
        let err = anyhow!("{context}: {e}");
        match e {
            Error::Syntax(_) | Error::Validation(_) | Error::AmbiguousSign { .. } | Error::UnknownEdge(_) => {
                Failure::Input(err)
            }
            _ => Failure::Compute(err),
        }
    }
}

/// A diagram file: PD JSON, or polyline JSON (recognised by its `components` key).
pub enum Diagram {
    Pd(KnotoidPD),
    Geometric(GeometricDiagram, KnotoidPD),
}

impl Diagram {
    pub fn pd(&self) -> &KnotoidPD {
        match self {
            Diagram::Pd(pd) | Diagram::Geometric(_, pd) => pd,
        }
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_bytes(path: &Path) -> Result<Vec<u8>, Failure> {
    let read = if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map(|_| buf)
    } else {
        std::fs::read(path)
    };
    read.map_err(|e| Failure::Input(anyhow!("cannot read {}: {e}", path.display())))
}

pub fn read_diagram(path: &Path) -> Result<Diagram, Failure> {
    let bytes = read_bytes(path)?;
    let name = path.display().to_string();
    let value: serde_json::Value =
        serde_json::from_slice(&bytes).map_err(|e| Failure::Input(anyhow!("{name}: not JSON: {e}")))?;
    if value.get("components").is_some() {
        let geom = GeometricDiagram::parse(&bytes).map_err(|e| Failure::from_lib(e, &name))?;
        // A degenerate polyline is bad input, not a failed computation.
        let pd = geom.embed().map_err(|e| Failure::Input(anyhow!("{name}: {e}")))?.pd;
        Ok(Diagram::Geometric(geom, pd))
    } else {
        Ok(Diagram::Pd(KnotoidPD::parse(&bytes).map_err(|e| Failure::from_lib(e, &name))?))
    }
}
