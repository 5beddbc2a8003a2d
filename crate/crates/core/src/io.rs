//! JSON forms of lattices, stratified lattices, towers and endofunctions.
//!
//! Input may list any generating pairs; output is canonical: elements sorted
//! by label and every relation written out in full, sorted.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixpoint::EndoFunction;
use crate::inverse::{InverseSystem, SystemMap};
use crate::lattice::FiniteLattice;
use crate::maps::LatticeMap;
use crate::relation::Relation;
use crate::stratified::{PreorderSpec, StratifiedLattice};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreorderJson {
    pub alpha: usize,
    pub pairs: Vec<(String, String)>,
    #[serde(default)]
    pub include_leq: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratifiedJson {
    #[serde(flatten)]
    pub lattice: LatticeJson,
    pub preorders: Vec<PreorderJson>,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub from: usize,
    pub to: usize,
    pub table: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub tower: Vec<LatticeJson>,
    pub maps: Vec<MapJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionJson {
    pub map: BTreeMap<String, String>,
}

fn sorted_pairs(l: &FiniteLattice, r: &Relation) -> Vec<(String, String)> {
    let mut pairs: Vec<(String, String)> = r
        .pairs()
        .map(|(a, b)| (l.label(a).to_string(), l.label(b).to_string()))
        .collect();
    pairs.sort();
    pairs
}

fn index_pairs(l: &FiniteLattice, pairs: &[(String, String)]) -> Result<Vec<(usize, usize)>> {
    pairs
        .iter()
        .map(|(a, b)| Ok((l.index_of_checked(a)?, l.index_of_checked(b)?)))
        .collect()
}

impl LatticeJson {
    pub fn from_lattice(l: &FiniteLattice) -> Self {
        let mut elements: Vec<String> = l.labels().to_vec();
        elements.sort();
        LatticeJson {
            elements,
            leq: sorted_pairs(l, l.order()),
        }
    }

    pub fn to_lattice(&self) -> Result<FiniteLattice> {
        FiniteLattice::new(&self.elements, &self.leq)
    }
}

impl StratifiedJson {
    pub fn from_model(s: &StratifiedLattice) -> Self {
        let l = s.lattice();
        StratifiedJson {
            lattice: LatticeJson::from_lattice(l),
            preorders: s
                .explicit_preorders()
                .iter()
                .enumerate()
                .map(|(alpha, r)| PreorderJson {
                    alpha,
                    pairs: sorted_pairs(l, r),
                    include_leq: false,
                })
                .collect(),
            depth: s.depth(),
        }
    }

    /// Levels below `depth` without an entry get the lattice order itself.
    pub fn to_model(&self) -> Result<StratifiedLattice> {
        let lattice = Arc::new(self.lattice.to_lattice()?);
        let mut specs: Vec<Option<PreorderSpec>> = vec![None; self.depth];
        for p in &self.preorders {
            let slot = specs
                .get_mut(p.alpha)
                .ok_or_else(|| Error::Input(format!("preorder level {} is not below depth {}", p.alpha, self.depth)))?;
            if slot.is_some() {
                return Err(Error::Input(format!("preorder level {} given twice", p.alpha)));
            }
            *slot = Some(PreorderSpec {
                pairs: index_pairs(&lattice, &p.pairs)?,
                include_leq: p.include_leq,
            });
        }
        let specs: Vec<_> = specs
            .into_iter()
            .map(|s| {
                s.unwrap_or(PreorderSpec {
                    pairs: vec![],
                    include_leq: true,
                })
            })
            .collect();
        StratifiedLattice::from_generators(lattice, &specs)
    }
}

fn map_table(m: &LatticeMap) -> BTreeMap<String, String> {
    m.source()
        .elements()
        .map(|x| (m.source().label(x).to_string(), m.target().label(m.apply(x)).to_string()))
        .collect()
}

impl SystemJson {
    /// The tower with its consecutive maps.
    pub fn from_system(sys: &InverseSystem) -> Self {
        SystemJson {
            tower: sys.tower().iter().map(|l| LatticeJson::from_lattice(l)).collect(),
            maps: (1..sys.tower().len())
                .map(|a| MapJson {
                    from: a,
                    to: a - 1,
                    table: map_table(sys.projection(a, a - 1)),
                })
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<InverseSystem> {
        let tower: Vec<Arc<FiniteLattice>> = self
            .tower
            .iter()
            .map(|l| l.to_lattice().map(Arc::new))
            .collect::<Result<_>>()?;
        let family = self
            .maps
            .iter()
            .map(|m| {
                let source = tower
                    .get(m.from)
                    .ok_or_else(|| Error::Input(format!("no tower level {}", m.from)))?;
                let target = tower
                    .get(m.to)
                    .ok_or_else(|| Error::Input(format!("no tower level {}", m.to)))?;
                let pairs: Vec<(&str, &str)> = m.table.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                Ok(SystemMap {
                    from: m.from,
                    to: m.to,
                    map: LatticeMap::from_labels(source.clone(), target.clone(), &pairs)?,
                })
            })
            .collect::<Result<_>>()?;
        InverseSystem::new(tower, family)
    }
}

impl FunctionJson {
    pub fn from_function(f: &EndoFunction) -> Self {
        let l = f.model().lattice();
        FunctionJson {
            map: l
                .elements()
                .map(|x| (l.label(x).to_string(), l.label(f.apply(x)).to_string()))
                .collect(),
        }
    }

    pub fn to_function(&self, model: Arc<StratifiedLattice>) -> Result<EndoFunction> {
        let l = model.lattice();
        let mut table = vec![None; l.len()];
        for (a, b) in &self.map {
            table[l.index_of_checked(a)?] = Some(l.index_of_checked(b)?);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| Error::Input(format!("no image for {}", l.label(x)))))
            .collect::<Result<Vec<_>>>()?;
        EndoFunction::new(model, table)
    }
}

/// Parses JSON, reporting syntax errors with their position.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

pub fn read_model(text: &str) -> Result<StratifiedLattice> {
    from_json::<StratifiedJson>(text)?.to_model()
}

pub fn read_system(text: &str) -> Result<InverseSystem> {
    from_json::<SystemJson>(text)?.to_system()
}

pub fn write_model(s: &StratifiedLattice) -> String {
    to_json(&StratifiedJson::from_model(s))
}

pub fn write_system(sys: &InverseSystem) -> String {
    to_json(&SystemJson::from_system(sys))
}
