//! Resolving `--builtin` / `--file` into a presentation with optional cup data.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;

use immclass_core::classification::ManifoldAlgebra;
use immclass_core::complex::{
    chain_presentation, parse_complex, parse_presentation, validate_closed_oriented, ChainPresentation,
    SimplicialComplex3, ValidationReport,
};
use immclass_core::cup::CupPairing;
use immclass_core::library::builtin;

/// Exactly one input source.
#[derive(Args, Clone, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Builtin manifold, e.g. S3, S1xS2, T3, L(5,2), T3-tri.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Triangulation (`vertices N` / `tet a b c d [+|-]` lines) or JSON chain presentation.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

pub enum Parsed {
    Triangulation(SimplicialComplex3),
    Presentation(ChainPresentation),
}

pub struct Loaded {
    pub name: String,
    pub kind: &'static str,
    pub presentation: ChainPresentation,
    pub cup: Option<CupPairing>,
}

impl Loaded {
    pub fn algebra(&self) -> Result<ManifoldAlgebra> {
        Ok(ManifoldAlgebra::new(self.presentation.clone(), self.cup.clone())?)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// JSON documents are presentations; anything else is a triangulation.
pub fn parse_file(path: &Path) -> Result<Parsed> {
    let text = read(path)?;
    let what = || format!("in {}", path.display());
    if text.trim_start().starts_with('{') {
        Ok(Parsed::Presentation(parse_presentation(&text).with_context(what)?))
    } else {
        Ok(Parsed::Triangulation(parse_complex(&text).with_context(what)?))
    }
}

/// Loads the source, refusing triangulations that are not closed, connected and coherently oriented.
pub fn load(src: &Source) -> Result<Loaded> {
    if let Some(name) = &src.builtin {
        let m = builtin(name)?;
        let cup = Some(m.cup_pairing()?);
        let kind = if m.complex().is_some() { "triangulation" } else { "presentation" };
        return Ok(Loaded { name: m.name.clone(), kind, presentation: m.presentation, cup });
    }
    let path = src.file.as_ref().expect("clap enforces one source");
    let name = path.display().to_string();
    match parse_file(path)? {
        Parsed::Presentation(p) => {
            let cup = if p.cup_tensor().is_some() { Some(CupPairing::tensor(&p)?) } else { None };
            Ok(Loaded { name, kind: "presentation", presentation: p, cup })
        }
        Parsed::Triangulation(c) => {
            let report = validate_closed_oriented(&c);
            let signs = accepted_orientation(&report)?;
            let p = chain_presentation(&c, &signs)?;
            let cup = Some(CupPairing::simplicial(&c, &p)?);
            Ok(Loaded { name, kind: "triangulation", presentation: p, cup })
        }
    }
}

fn accepted_orientation(r: &ValidationReport) -> Result<Vec<i8>> {
    if !r.is_closed {
        bail!("triangulation is not closed");
    }
    if !r.is_connected {
        bail!("triangulation is not connected");
    }
    if !r.link_check {
        bail!("triangulation is not a manifold: {}", r.link_failure.clone().unwrap_or_default());
    }
    match &r.orientation {
        Ok(signs) => Ok(signs.clone()),
        Err(e) => bail!("triangulation is not coherently oriented: {e}"),
    }
}
