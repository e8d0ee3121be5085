//! JSON file formats. Field elements are written as coordinate arrays over
//! GF(p), low degree first.

use std::fs;
use std::path::Path;

use rsrepair_core::{BasisPair, Element, FieldTower, Poly, RepairScheme, RsCode, Subspace};
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};

pub type Coords = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub a: u32,
    pub ell: u32,
    /// Monic modulus of degree `a·ℓ`, low-to-high.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn of(tower: &FieldTower) -> Self {
        FieldSpec { p: tower.p(), a: tower.a(), ell: tower.ell(), modulus: tower.modulus().to_vec() }
    }

    pub fn build(&self, max_bits: u32) -> AppResult<FieldTower> {
        Ok(FieldTower::from_modulus(self.p, self.a, self.ell, &self.modulus, max_bits)?)
    }
}

/// What `field` prints: the spec plus a few derived facts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldSummary {
    #[serde(flatten)]
    pub spec: FieldSpec,
    pub q: u32,
    pub order: u32,
    pub primitive: Coords,
    pub subfield: Vec<Coords>,
}

impl FieldSummary {
    pub fn of(tower: &FieldTower) -> Self {
        FieldSummary {
            spec: FieldSpec::of(tower),
            q: tower.q(),
            order: tower.order(),
            primitive: tower.coords(tower.primitive()),
            subfield: tower.subfield_elements().iter().map(|&x| tower.coords(x)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub beta: Vec<Coords>,
    pub gamma: Vec<Coords>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeFile {
    pub field: FieldSpec,
    pub basis: BasisJson,
    /// A basis over B of the evaluation subspace.
    pub subspace: Vec<Coords>,
    /// 1-based index of the repaired node in the subspace's enumeration order.
    pub target: usize,
    pub r: usize,
    /// One coefficient array per polynomial, length `r`, low-to-high.
    pub polys: Vec<Vec<Coords>>,
}

fn element(tower: &FieldTower, c: &[u32], what: &str) -> AppResult<Element> {
    tower
        .from_coords(c)
        .map_err(|_| AppError::Invalid(format!("{what}: {c:?} is not a coordinate array of length {} over GF({})", tower.degree(), tower.p())))
}

fn elements(tower: &FieldTower, cs: &[Coords], what: &str) -> AppResult<Vec<Element>> {
    cs.iter().enumerate().map(|(i, c)| element(tower, c, &format!("{what}[{i}]"))).collect()
}

impl SchemeFile {
    pub fn from_scheme(tower: &FieldTower, scheme: &RepairScheme) -> Self {
        let co = |x: Element| tower.coords(x);
        let r = scheme.code().r();
        let polys = scheme
            .polys()
            .iter()
            .map(|g| (0..r).map(|e| co(g.coeff(e))).collect())
            .collect();
        SchemeFile {
            field: FieldSpec::of(tower),
            basis: BasisJson {
                beta: scheme.basis().beta().iter().map(|&x| co(x)).collect(),
                gamma: scheme.basis().gamma().iter().map(|&x| co(x)).collect(),
            },
            subspace: scheme.code().subspace().basis().iter().map(|&x| co(x)).collect(),
            target: scheme.target() + 1,
            r,
            polys,
        }
    }

    /// Rebuilds and validates the scheme.
    pub fn to_scheme(&self, max_bits: u32) -> AppResult<(FieldTower, RepairScheme)> {
        let tower = self.field.build(max_bits)?;
        let beta = elements(&tower, &self.basis.beta, "basis.beta")?;
        let gamma = elements(&tower, &self.basis.gamma, "basis.gamma")?;
        let basis = BasisPair::from_parts(&tower, beta, gamma)?;
        let gens = elements(&tower, &self.subspace, "subspace")?;
        let subspace = Subspace::span(&tower, &gens);
        if subspace.dim() != gens.len() {
            return Err(AppError::Invalid(format!(
                "subspace basis has {} vectors but spans dimension {}",
                gens.len(),
                subspace.dim()
            )));
        }
        let code = RsCode::with_redundancy(&tower, subspace, self.r)?;
        if self.target == 0 || self.target > code.n() {
            return Err(AppError::Invalid(format!("target must be in 1..={}, got {}", code.n(), self.target)));
        }
        let polys = self
            .polys
            .iter()
            .enumerate()
            .map(|(j, cs)| elements(&tower, cs, &format!("polys[{j}]")).map(Poly::new))
            .collect::<AppResult<Vec<_>>>()?;
        let scheme = RepairScheme::new(&tower, code, basis, polys, self.target - 1)?;
        Ok((tower, scheme))
    }

    pub fn load(path: &Path) -> AppResult<Self> {
        let text = fs::read_to_string(path).map_err(|source| AppError::Io { path: path.into(), source })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> AppResult<()> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        fs::write(path, text).map_err(|source| AppError::Io { path: path.into(), source })
    }
}
