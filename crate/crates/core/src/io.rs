//! JSON formats for algebras, maps, generator families and instances.
//! Rationals are always `"p/q"` (or integer) strings.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::linear::{Matrix, Subspace, Vector};
use crate::maps::{Automorphism, Generator, GeneratorFamily, LinearEndomap, SigmaDerivation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    #[serde(default)]
    pub unital: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    /// `sc[i][j][k]`: coefficient of `e_k` in `e_i e_j`.
    pub sc: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub label: String,
    /// Omitted means the identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<MapJson>,
    pub delta: MapJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub algebra: AlgebraJson,
    #[serde(default)]
    pub generators: Vec<GeneratorJson>,
    #[serde(rename = "V", default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<Vec<String>>>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub big_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivation: Option<MapJson>,
}

impl AlgebraJson {
    pub fn from_algebra(a: &AlgebraPresentation) -> Self {
        let n = a.dim();
        AlgebraJson {
            dim: n,
            unital: a.is_unital(),
            unit: a.unit().map(Vector::to_strings),
            sc: (0..n).map(|i| (0..n).map(|j| a.basis_product(i, j).to_strings()).collect()).collect(),
        }
    }

    /// Shape checks only; associativity is checked by the caller.
    pub fn to_algebra(&self) -> Result<AlgebraPresentation> {
        let n = self.dim;
        if self.sc.len() != n {
            return Err(Error::Parse(format!("algebra.sc has {} rows, expected {n}", self.sc.len())));
        }
        let mut table = Vec::with_capacity(n);
        for (i, row) in self.sc.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!("algebra.sc[{i}] has {} entries, expected {n}", row.len())));
            }
            let mut out = Vec::with_capacity(n);
            for (j, v) in row.iter().enumerate() {
                if v.len() != n {
                    return Err(Error::Parse(format!("algebra.sc[{i}][{j}] has length {}, expected {n}", v.len())));
                }
                out.push(Vector::parse(v).map_err(|e| context(e, &format!("algebra.sc[{i}][{j}]")))?);
            }
            table.push(out);
        }
        let unit = match (&self.unit, self.unital) {
            (Some(u), true) => Some(Vector::parse(u).map_err(|e| context(e, "algebra.unit"))?),
            (None, false) => None,
            (None, true) => return Err(Error::Parse("algebra.unital is true but algebra.unit is missing".into())),
            (Some(_), false) => return Err(Error::Parse("algebra.unit given but algebra.unital is false".into())),
        };
        AlgebraPresentation::new(n, table, unit)
    }
}

impl MapJson {
    pub fn from_map(m: &LinearEndomap) -> Self {
        MapJson { matrix: m.matrix().to_strings() }
    }

    pub fn to_map(&self, field: &str) -> Result<LinearEndomap> {
        let m = Matrix::parse(&self.matrix).map_err(|e| context(e, field))?;
        LinearEndomap::new(m).map_err(|e| context(e, field))
    }
}

fn context(e: Error, field: &str) -> Error {
    match e {
        Error::Parse(m) | Error::Dimension(m) | Error::Invalid(m) => Error::Parse(format!("{field}: {m}")),
        other => other,
    }
}

/// A parsed instance whose maps have not yet been checked against the
/// algebra laws.
#[derive(Clone, Debug)]
pub struct RawInstance {
    pub algebra: AlgebraPresentation,
    /// `(label, sigma, delta)` in file order.
    pub generators: Vec<(String, LinearEndomap, LinearEndomap)>,
    pub v: Option<Subspace>,
    pub big_n: Option<usize>,
    pub derivation: Option<LinearEndomap>,
}

/// A parsed and fully validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub algebra: AlgebraPresentation,
    pub family: GeneratorFamily,
    pub v: Option<Subspace>,
    pub big_n: Option<usize>,
    pub derivation: Option<crate::lnd::Derivation>,
}

impl InstanceJson {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn parse(&self) -> Result<RawInstance> {
        let algebra = self.algebra.to_algebra()?;
        let n = algebra.dim();
        let check = |m: LinearEndomap, field: &str| -> Result<LinearEndomap> {
            if m.dim() != n {
                return Err(Error::Parse(format!("{field}: {}x{} matrix for algebra of dimension {n}", m.dim(), m.dim())));
            }
            Ok(m)
        };
        let mut generators = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let sigma = match &g.sigma {
                Some(s) => check(s.to_map(&format!("generators[{i}].sigma"))?, &format!("generators[{i}].sigma"))?,
                None => LinearEndomap::identity(n),
            };
            let delta = check(g.delta.to_map(&format!("generators[{i}].delta"))?, &format!("generators[{i}].delta"))?;
            generators.push((g.label.clone(), sigma, delta));
        }
        let v = match &self.v {
            Some(rows) => {
                let vs = rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| Vector::parse(r).map_err(|e| context(e, &format!("V[{i}]"))))
                    .collect::<Result<Vec<_>>>()?;
                Some(Subspace::from_rows(n, vs).map_err(|e| context(e, "V"))?)
            }
            None => None,
        };
        let derivation = match &self.derivation {
            Some(d) => Some(check(d.to_map("derivation")?, "derivation")?),
            None => None,
        };
        Ok(RawInstance { algebra, generators, v, big_n: self.big_n, derivation })
    }
}

impl RawInstance {
    /// Runs every law check; the first failure is returned.
    pub fn validate(self) -> Result<Instance> {
        self.algebra.validate()?;
        let mut gens = Vec::new();
        for (label, sigma, delta) in self.generators {
            let sigma = Automorphism::new(&self.algebra, sigma)?;
            let map = SigmaDerivation::new(&self.algebra, sigma, delta)?;
            gens.push(Generator { label, map });
        }
        let family = GeneratorFamily::new(self.algebra.dim(), gens)?;
        let derivation = match self.derivation {
            Some(d) => Some(crate::lnd::Derivation::new(&self.algebra, d)?),
            None => None,
        };
        Ok(Instance { algebra: self.algebra, family, v: self.v, big_n: self.big_n, derivation })
    }
}

impl InstanceJson {
    pub fn from_parts(
        algebra: &AlgebraPresentation,
        family: &GeneratorFamily,
        v: Option<&Subspace>,
        big_n: Option<usize>,
        derivation: Option<&LinearEndomap>,
    ) -> Self {
        InstanceJson {
            algebra: AlgebraJson::from_algebra(algebra),
            generators: family
                .generators()
                .iter()
                .map(|g| GeneratorJson {
                    label: g.label.clone(),
                    sigma: (!g.map.sigma().is_identity()).then(|| MapJson::from_map(g.map.sigma().map())),
                    delta: MapJson::from_map(g.map.delta()),
                })
                .collect(),
            v: v.map(Subspace::to_strings),
            big_n,
            derivation: derivation.map(MapJson::from_map),
        }
    }
}

pub fn read_instance(path: &std::path::Path) -> Result<RawInstance> {
    let text = std::fs::read_to_string(path)?;
    InstanceJson::from_json(&text)?.parse()
}
