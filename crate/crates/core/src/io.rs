//! The JSON document format shared by the command line and the bindings.
//!
//! An element is a list of terms `[c, [e_1, .., e_d]]` with `c` an integer
//! (a string for values beyond i64); a system lists its levels in order and
//! one map block per pair m ≤ n.

use crate::algebra::{AlgebraElement, Coeff, CoeffRing, UnitCharacter};
use crate::error::{input, Result};
use crate::ideals::ElementaryModule;
use crate::linalg::Mat;
use crate::modules::{FiniteModule, ModuleMap, PairingMatrix};
use crate::systems::{GammaSystem, LevelData, Transition};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Header {
    pub p: u64,
    pub d: usize,
    /// Working precision M: residues are mod p^M.
    pub precision: u32,
    /// Top level N.
    pub levels: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffDoc {
    Small(i64),
    Big(String),
}

pub type ElementDoc = Vec<(CoeffDoc, Vec<i64>)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDoc {
    pub xi: ElementDoc,
    pub r: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub factors: Vec<FactorDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteModuleDoc {
    pub exps: Vec<u32>,
    /// One matrix per generator of Γ; column j is the image of generator j.
    pub actions: Vec<Mat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingDoc {
    pub den_exp: u32,
    pub num: Mat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelDoc {
    pub a: FiniteModuleDoc,
    pub b: FiniteModuleDoc,
    pub pairing: PairingDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub m: u32,
    pub n: u32,
    pub r_a: Mat,
    pub r_b: Mat,
    pub k_a: Mat,
    pub k_b: Mat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub levels: Vec<LevelDoc>,
    pub maps: Vec<MapDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub header: Header,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<ElementDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<i128>>,
}

/// Parses a document; schema errors name the offending field.
pub fn parse_document(text: &str) -> Result<Document> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        crate::Error::Input(format!("{path}: {}", e.into_inner()))
    })
}

pub fn to_json(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

fn coeff_from_doc(c: &CoeffDoc, path: &str) -> Result<BigInt> {
    match c {
        CoeffDoc::Small(x) => Ok(BigInt::from(*x)),
        CoeffDoc::Big(s) => s.parse().map_err(|_| crate::Error::Input(format!("{path}: {s:?} is not an integer"))),
    }
}

fn coeff_to_doc(c: &BigInt) -> CoeffDoc {
    c.to_i64().map_or_else(|| CoeffDoc::Big(c.to_string()), CoeffDoc::Small)
}

pub fn element_from_doc(d: usize, doc: &ElementDoc, path: &str) -> Result<AlgebraElement> {
    let mut terms = Vec::new();
    for (i, (c, v)) in doc.iter().enumerate() {
        if v.len() != d {
            return input(format!("{path}[{i}]: exponent vector has length {}, expected {d}", v.len()));
        }
        terms.push((v.clone(), Coeff::Int(coeff_from_doc(c, &format!("{path}[{i}]"))?)));
    }
    AlgebraElement::from_terms(CoeffRing::Integer, d, terms)
}

/// Terms in the canonical (lexicographic exponent) order; residues are
/// written as balanced integer lifts.
pub fn element_to_doc(x: &AlgebraElement) -> Result<ElementDoc> {
    let x = x.to_integer_lift(true)?;
    Ok(x.terms()
        .map(|(v, c)| (coeff_to_doc(c.as_int().expect("integer lift")), v.clone()))
        .collect())
}

pub fn module_from_doc(h: &Header, doc: &ModuleDoc) -> Result<ElementaryModule> {
    let mut factors = Vec::new();
    for (i, f) in doc.factors.iter().enumerate() {
        factors.push((element_from_doc(h.d, &f.xi, &format!("module.factors[{i}].xi"))?, f.r));
    }
    ElementaryModule::new(h.p, h.d, factors).map_err(|e| match e {
        crate::Error::Input(m) => crate::Error::Input(format!("module.{m}")),
        other => other,
    })
}

pub fn module_to_doc(m: &ElementaryModule) -> Result<ModuleDoc> {
    let factors = m.factors.iter().map(|f| Ok(FactorDoc { xi: element_to_doc(&f.xi)?, r: f.r })).collect::<Result<_>>()?;
    Ok(ModuleDoc { factors })
}

pub fn unit_from_doc(h: &Header, u: &[i128]) -> Result<UnitCharacter> {
    if u.len() != h.d {
        return input(format!("phi: {} values for d = {}", u.len(), h.d));
    }
    UnitCharacter::new(h.p, h.precision, u).map_err(|e| crate::Error::Input(format!("phi: {e}")))
}

fn fm_from_doc(h: &Header, level: u32, doc: &FiniteModuleDoc, path: &str) -> Result<FiniteModule> {
    if doc.actions.len() != h.d {
        return input(format!("{path}.actions: {} matrices for d = {}", doc.actions.len(), h.d));
    }
    FiniteModule::new_lenient(h.p, level, doc.exps.clone(), doc.actions.clone())
        .map_err(|e| crate::Error::Input(format!("{path}: {e}")))
}

fn fm_to_doc(m: &FiniteModule) -> FiniteModuleDoc {
    FiniteModuleDoc { exps: m.exps().to_vec(), actions: m.actions().to_vec() }
}

pub fn system_from_doc(h: &Header, doc: &SystemDoc) -> Result<GammaSystem> {
    if doc.levels.len() as u32 != h.levels + 1 {
        return input(format!("system.levels: {} blocks for N = {}", doc.levels.len(), h.levels));
    }
    let mut levels = Vec::new();
    for (n, l) in doc.levels.iter().enumerate() {
        let path = format!("system.levels[{n}]");
        let a = fm_from_doc(h, n as u32, &l.a, &format!("{path}.a"))?;
        let b = fm_from_doc(h, n as u32, &l.b, &format!("{path}.b"))?;
        let pairing = PairingMatrix::new(a.clone(), b.clone(), l.pairing.den_exp, l.pairing.num.clone())
            .map_err(|e| crate::Error::Input(format!("{path}.pairing: {e}")))?;
        levels.push(LevelData { a, b, pairing });
    }
    let mut tr = BTreeMap::new();
    for (i, md) in doc.maps.iter().enumerate() {
        let path = format!("system.maps[{i}]");
        if md.m > md.n || md.n > h.levels {
            return input(format!("{path}: levels ({}, {}) outside 0 ≤ m ≤ n ≤ {}", md.m, md.n, h.levels));
        }
        let (lm, ln) = (&levels[md.m as usize], &levels[md.n as usize]);
        let mk = |name: &str, src: &FiniteModule, dst: &FiniteModule, mat: &Mat| {
            ModuleMap::new(src.clone(), dst.clone(), mat.clone()).map_err(|e| crate::Error::Input(format!("{path}.{name}: {e}")))
        };
        let t = Transition {
            r_a: mk("r_a", &lm.a, &ln.a, &md.r_a)?,
            r_b: mk("r_b", &lm.b, &ln.b, &md.r_b)?,
            k_a: mk("k_a", &ln.a, &lm.a, &md.k_a)?,
            k_b: mk("k_b", &ln.b, &lm.b, &md.k_b)?,
        };
        if tr.insert((md.m, md.n), t).is_some() {
            return input(format!("{path}: duplicate block for ({}, {})", md.m, md.n));
        }
    }
    GammaSystem::new(h.p, h.d, h.precision, levels, tr)
}

pub fn system_to_doc(s: &GammaSystem) -> SystemDoc {
    let levels = s
        .levels()
        .iter()
        .map(|l| LevelDoc {
            a: fm_to_doc(&l.a),
            b: fm_to_doc(&l.b),
            pairing: PairingDoc { den_exp: l.pairing.den_exp(), num: l.pairing.numerators().clone() },
        })
        .collect();
    let maps = s
        .transitions()
        .iter()
        .map(|(&(m, n), t)| MapDoc {
            m,
            n,
            r_a: t.r_a.matrix().clone(),
            r_b: t.r_b.matrix().clone(),
            k_a: t.k_a.matrix().clone(),
            k_b: t.k_b.matrix().clone(),
        })
        .collect();
    SystemDoc { levels, maps }
}

/// Header and system block for a system.
pub fn system_document(s: &GammaSystem) -> Document {
    Document {
        header: Header { p: s.p(), d: s.d(), precision: s.precision(), levels: s.top() },
        module: None,
        element: None,
        system: Some(system_to_doc(s)),
        phi: None,
    }
}
