//! Bundled test diagrams and their expected invariants.
//!
//! A fixture directory holds `manifest.json`, the diagram files it names,
//! and expected homology tables. Knotoids cut from knots record the recipe
//! so the stored PD can be re-derived from the DT code.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::diagram::{knot_from_dt, CutMode, GeometricDiagram, KnotoidPD};
use crate::error::{Error, Result};
use crate::homology::HomologyTable;

/// How a knotoid is obtained from a tabulated knot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Recipe {
    pub knot: String,
    #[serde(default)]
    pub mirror: bool,
    pub moves: usize,
    pub mode: CutMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureKind {
    Pd,
    Geometric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureEntry {
    pub name: String,
    pub kind: FixtureKind,
    pub file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<Recipe>,
    /// Expected homology table, relative to the fixture directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    /// Expected `T*(A, ℓ, h)` in polynomial text form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_refined: Option<String>,
    /// Obtained from a knot diagram by deleting an arc, so `μ ≡ 0`.
    #[serde(default)]
    pub knot_type: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    /// DT codes of the knots used by recipes.
    pub knots: BTreeMap<String, Vec<i64>>,
    pub fixtures: Vec<FixtureEntry>,
}

/// A loaded fixture directory.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub dir: PathBuf,
    pub manifest: Manifest,
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Validation(format!("{}: {e}", path.display())))
}

impl Fixtures {
    /// The fixture directory shipped with this crate.
    pub fn bundled_dir() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
    }

    pub fn load(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        let manifest: Manifest = serde_json::from_slice(&read(&dir.join("manifest.json"))?)
            .map_err(|e| Error::Syntax(format!("{}: {e}", dir.join("manifest.json").display())))?;
        Ok(Fixtures { dir, manifest })
    }

    pub fn get(&self, name: &str) -> Result<&FixtureEntry> {
        self.manifest
            .fixtures
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Error::Validation(format!("no fixture named {name}")))
    }

    /// The PD of a fixture; geometric fixtures give their induced PD.
    pub fn pd(&self, entry: &FixtureEntry) -> Result<KnotoidPD> {
        let path = self.dir.join(&entry.file);
        let bytes = read(&path)?;
        let parsed = match entry.kind {
            FixtureKind::Pd => KnotoidPD::parse(&bytes),
            FixtureKind::Geometric => GeometricDiagram::parse(&bytes).and_then(|g| g.embed()).map(|e| e.pd),
        };
        parsed.map_err(|e| Error::Validation(format!("{}: {e}", path.display())))
    }

    pub fn geometric(&self, entry: &FixtureEntry) -> Result<GeometricDiagram> {
        if entry.kind != FixtureKind::Geometric {
            return Err(Error::Validation(format!("fixture {} is not geometric", entry.name)));
        }
        let path = self.dir.join(&entry.file);
        GeometricDiagram::parse(&read(&path)?)
            .map_err(|e| Error::Validation(format!("{}: {e}", path.display())))
    }

    pub fn expected(&self, entry: &FixtureEntry) -> Result<Option<HomologyTable>> {
        let Some(file) = &entry.expected else { return Ok(None) };
        let path = self.dir.join(file);
        HomologyTable::from_json(&read(&path)?)
            .map(Some)
            .map_err(|e| Error::Validation(format!("{}: {e}", path.display())))
    }

    /// Closed knot diagram of a tabulated knot.
    pub fn knot(&self, name: &str) -> Result<KnotoidPD> {
        let dt = self
            .manifest
            .knots
            .get(name)
            .ok_or_else(|| Error::Validation(format!("no knot named {name}")))?;
        knot_from_dt(dt)
    }

    pub fn realize(&self, recipe: &Recipe) -> Result<KnotoidPD> {
        let mut knot = self.knot(&recipe.knot)?;
        if recipe.mirror {
            knot = knot.mirror();
        }
        knot.cut_knot_to_knotoid(recipe.moves, recipe.mode)
    }
}
