//! JSON wire formats for rings, groups, modules, morphisms, categories,
//! functors and separability certificates, and the labelled `Workspace`
//! they load into.
//!
//! Scalars are strings: `"p/q"` (or an integer) over `Q`, a decimal residue
//! over `F_p`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{FiniteCategory, FiniteFunctor};
use crate::error::{CategoryError, LinalgError, ModuleError, RingError, ScalarError};
use crate::linalg::Mat;
use crate::module::{LeftModule, RightModule};
use crate::ring::{
    group_ring, is_unital, unit_family, FiniteGroup, IdempotentFamily, RingMorphism, StructureRing,
};
use crate::scalar::{FieldDescriptor, Scalar, ScalarField};
use crate::separability::SeparabilityCertificate;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{context}: line {line}, column {column}: {message}")]
    Parse {
        context: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}: {1}")]
    Scalar(String, ScalarError),
    #[error("{0}: {1}")]
    Ring(String, RingError),
    #[error("{0}: {1}")]
    Module(String, ModuleError),
    #[error("{0}: {1}")]
    Linalg(String, LinalgError),
    #[error("{0}: {1}")]
    Category(String, CategoryError),
    #[error("unknown {kind} `{label}`")]
    UnknownLabel { kind: &'static str, label: String },
    #[error("duplicate {kind} label `{label}`")]
    DuplicateLabel { kind: &'static str, label: String },
    #[error("{0}")]
    Invalid(String),
}

fn parse_json<T: for<'de> Deserialize<'de>>(context: &str, text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Parse {
        context: context.into(),
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn scalars(field: ScalarField, ctx: &str, xs: &[String]) -> Result<Vec<Scalar>, FormatError> {
    xs.iter()
        .map(|s| {
            field
                .parse_scalar(s)
                .map_err(|e| FormatError::Scalar(ctx.into(), e))
        })
        .collect()
}

fn matrix(
    field: ScalarField,
    ctx: &str,
    rows: &[Vec<String>],
    cols: usize,
) -> Result<Mat, FormatError> {
    let data = rows
        .iter()
        .map(|r| scalars(field, ctx, r))
        .collect::<Result<Vec<_>, _>>()?;
    Mat::from_rows(field, cols, data).map_err(|e| FormatError::Linalg(ctx.into(), e))
}

fn width(rows: &[Vec<String>]) -> usize {
    rows.first().map_or(0, Vec::len)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub label: String,
    pub field: FieldDescriptor,
    pub dim: usize,
    /// `mul[i][j][k]` is the coefficient of `e_k` in `e_i e_j`.
    pub mul: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<Vec<Vec<String>>>,
}

impl RingFile {
    pub fn from_ring(ring: &StructureRing, family: Option<&IdempotentFamily>) -> Self {
        RingFile {
            label: ring.label().into(),
            field: ring.field().into(),
            dim: ring.dim(),
            mul: ring
                .constants()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(Scalar::to_wire).collect())
                        .collect()
                })
                .collect(),
            idempotents: family.map(|f| {
                f.members()
                    .iter()
                    .map(|e| e.iter().map(Scalar::to_wire).collect())
                    .collect()
            }),
        }
    }

    /// Builds the ring (over `field` if given, else the declared field) and
    /// its idempotent family: the declared one, else `{1}` for a unital
    /// ring, else empty.
    pub fn build(
        &self,
        field: Option<ScalarField>,
    ) -> Result<(StructureRing, IdempotentFamily), FormatError> {
        let ctx = format!("ring `{}`", self.label);
        let field = match field {
            Some(f) => f,
            None => self
                .field
                .clone()
                .try_into()
                .map_err(|e| FormatError::Scalar(ctx.clone(), e))?,
        };
        if self.mul.len() != self.dim {
            return Err(FormatError::Invalid(format!(
                "{ctx}: `mul` has {} rows but dim is {}",
                self.mul.len(),
                self.dim
            )));
        }
        let c = self
            .mul
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| scalars(field, &ctx, v))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ring = StructureRing::from_constants(field, &c, self.label.clone())
            .map_err(|e| FormatError::Ring(ctx.clone(), e))?;
        let family = match &self.idempotents {
            Some(es) => {
                let es = es
                    .iter()
                    .map(|e| scalars(field, &ctx, e))
                    .collect::<Result<Vec<_>, _>>()?;
                IdempotentFamily::new(&ring, es).map_err(|e| FormatError::Ring(ctx, e))?
            }
            None => match is_unital(&ring) {
                Some(u) => unit_family(&ring, u),
                None => IdempotentFamily::empty(&ring),
            },
        };
        Ok((ring, family))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default)]
    pub label: Option<String>,
    pub order: usize,
    /// Multiplication table with the identity at index 0.
    pub table: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn build(&self) -> Result<FiniteGroup, FormatError> {
        let label = self
            .label
            .clone()
            .unwrap_or_else(|| format!("G{}", self.order));
        let ctx = format!("group `{label}`");
        if self.table.len() != self.order {
            return Err(FormatError::Invalid(format!(
                "{ctx}: table has {} rows but order is {}",
                self.table.len(),
                self.order
            )));
        }
        FiniteGroup::from_table(self.table.clone(), label).map_err(|e| FormatError::Ring(ctx, e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRingEntry {
    pub label: String,
    pub base: String,
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub label: String,
    pub source: String,
    pub target: String,
    /// `dim(target) x dim(source)`.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[default]
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub label: String,
    pub ring: String,
    pub dim: usize,
    /// One `dim x dim` matrix per ring basis element.
    pub actions: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomEntry {
    pub src: String,
    pub dst: String,
    pub morphisms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeEntry {
    pub g: String,
    pub f: String,
    pub gf: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub label: String,
    pub objects: Vec<String>,
    #[serde(default)]
    pub homs: Vec<HomEntry>,
    /// Object name to identity morphism name. Identities need not be listed
    /// in `homs`, and composites with identities are filled in.
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub compose: Vec<CompositeEntry>,
}

impl CategoryFile {
    pub fn from_category(c: &FiniteCategory) -> Self {
        let mut homs = Vec::new();
        for a in 0..c.object_count() {
            for b in 0..c.object_count() {
                let ms: Vec<String> = c
                    .hom(a, b)
                    .iter()
                    .filter(|f| !c.is_identity(**f))
                    .map(|f| c.name(*f).to_string())
                    .collect();
                if !ms.is_empty() {
                    homs.push(HomEntry {
                        src: c.objects()[a].clone(),
                        dst: c.objects()[b].clone(),
                        morphisms: ms,
                    });
                }
            }
        }
        let mut compose = Vec::new();
        for g in 0..c.morphism_count() {
            for f in 0..c.morphism_count() {
                if c.is_identity(g) || c.is_identity(f) {
                    continue;
                }
                if let Some(gf) = c.try_compose(g, f) {
                    compose.push(CompositeEntry {
                        g: c.name(g).into(),
                        f: c.name(f).into(),
                        gf: c.name(gf).into(),
                    });
                }
            }
        }
        CategoryFile {
            label: c.label().into(),
            objects: c.objects().to_vec(),
            homs,
            identities: (0..c.object_count())
                .map(|o| (c.objects()[o].clone(), c.name(c.identity(o)).to_string()))
                .collect(),
            compose,
        }
    }

    pub fn build(&self) -> Result<FiniteCategory, FormatError> {
        let ctx = format!("category `{}`", self.label);
        let mut morphisms: Vec<(&str, &str, &str)> = Vec::new();
        let mut seen = BTreeSet::new();
        for o in &self.objects {
            let Some(id) = self.identities.get(o) else {
                continue;
            };
            if seen.insert(id.as_str()) {
                morphisms.push((id, o, o));
            }
        }
        for h in &self.homs {
            for m in &h.morphisms {
                if self.identities.get(&h.src) == Some(m) && h.src == h.dst {
                    continue;
                }
                morphisms.push((m, &h.src, &h.dst));
            }
        }
        let objects: Vec<&str> = self.objects.iter().map(String::as_str).collect();
        let ids: Vec<(&str, &str)> = self
            .identities
            .iter()
            .map(|(o, f)| (o.as_str(), f.as_str()))
            .collect();
        let comps: Vec<(&str, &str, &str)> = self
            .compose
            .iter()
            .map(|c| (c.g.as_str(), c.f.as_str(), c.gf.as_str()))
            .collect();
        FiniteCategory::new(self.label.clone(), &objects, &morphisms, &ids, &comps)
            .map_err(|e| FormatError::Category(ctx, e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub label: String,
    pub source: String,
    pub target: String,
    pub objects: BTreeMap<String, String>,
    /// Identities may be omitted.
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    #[serde(default)]
    pub rings: Vec<RingFile>,
    #[serde(default)]
    pub groups: Vec<GroupFile>,
    #[serde(default)]
    pub group_rings: Vec<GroupRingEntry>,
    #[serde(default)]
    pub morphisms: Vec<MorphismFile>,
    #[serde(default)]
    pub modules: Vec<ModuleFile>,
    #[serde(default)]
    pub categories: Vec<CategoryFile>,
    #[serde(default)]
    pub functors: Vec<FunctorFile>,
}

#[derive(Clone, Debug)]
pub enum AnyModule {
    Left(LeftModule),
    Right(RightModule),
}

/// Labelled objects loaded from JSON. Maps are ordered by label.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub rings: BTreeMap<String, StructureRing>,
    pub families: BTreeMap<String, IdempotentFamily>,
    pub groups: BTreeMap<String, FiniteGroup>,
    pub morphisms: BTreeMap<String, RingMorphism>,
    pub modules: BTreeMap<String, AnyModule>,
    pub categories: BTreeMap<String, Arc<FiniteCategory>>,
    pub functors: BTreeMap<String, FiniteFunctor>,
}

fn insert_unique<V>(
    map: &mut BTreeMap<String, V>,
    kind: &'static str,
    label: &str,
    v: V,
) -> Result<(), FormatError> {
    if map.insert(label.to_string(), v).is_some() {
        return Err(FormatError::DuplicateLabel {
            kind,
            label: label.into(),
        });
    }
    Ok(())
}

fn lookup<'a, V>(
    map: &'a BTreeMap<String, V>,
    kind: &'static str,
    label: &str,
) -> Result<&'a V, FormatError> {
    map.get(label).ok_or_else(|| FormatError::UnknownLabel {
        kind,
        label: label.into(),
    })
}

impl Workspace {
    /// Parses a workspace document. A bare ring, group or category document
    /// is accepted as a one-entry workspace.
    pub fn from_json(text: &str, field: Option<ScalarField>) -> Result<Self, FormatError> {
        let value: serde_json::Value = parse_json("input", text)?;
        let file = match value.as_object() {
            Some(o) if o.contains_key("mul") => WorkspaceFile {
                rings: vec![parse_json("ring file", text)?],
                ..Default::default()
            },
            Some(o) if o.contains_key("table") => WorkspaceFile {
                groups: vec![parse_json("group file", text)?],
                ..Default::default()
            },
            Some(o) if o.contains_key("identities") => WorkspaceFile {
                categories: vec![parse_json("category file", text)?],
                ..Default::default()
            },
            _ => parse_json("workspace file", text)?,
        };
        Self::from_file(&file, field)
    }

    pub fn from_file(
        file: &WorkspaceFile,
        field: Option<ScalarField>,
    ) -> Result<Self, FormatError> {
        let mut ws = Workspace::default();
        for r in &file.rings {
            let (ring, fam) = r.build(field)?;
            insert_unique(&mut ws.rings, "ring", &r.label, ring)?;
            ws.families.insert(r.label.clone(), fam);
        }
        for g in &file.groups {
            let group = g.build()?;
            insert_unique(&mut ws.groups, "group", &group.label().to_string(), group)?;
        }
        for gr in &file.group_rings {
            let (ring, fam, incl) = ws.build_group_ring(&gr.base, &gr.group, &gr.label)?;
            insert_unique(&mut ws.rings, "ring", &gr.label, ring)?;
            ws.families.insert(gr.label.clone(), fam);
            insert_unique(&mut ws.morphisms, "morphism", &gr.label, incl)?;
        }
        for m in &file.morphisms {
            let ctx = format!("morphism `{}`", m.label);
            let src = lookup(&ws.rings, "ring", &m.source)?.clone();
            let dst = lookup(&ws.rings, "ring", &m.target)?.clone();
            let mat = matrix(
                dst.field(),
                &ctx,
                &m.matrix,
                if m.matrix.is_empty() {
                    src.dim()
                } else {
                    width(&m.matrix)
                },
            )?;
            let f = RingMorphism::new(src, dst, mat).map_err(|e| FormatError::Ring(ctx, e))?;
            insert_unique(&mut ws.morphisms, "morphism", &m.label, f)?;
        }
        for m in &file.modules {
            let ctx = format!("module `{}`", m.label);
            let ring = lookup(&ws.rings, "ring", &m.ring)?.clone();
            let actions = m
                .actions
                .iter()
                .map(|a| matrix(ring.field(), &ctx, a, m.dim))
                .collect::<Result<Vec<_>, _>>()?;
            let module = match m.side {
                Side::Left => LeftModule::new(&ring, m.dim, actions).map(AnyModule::Left),
                Side::Right => RightModule::new(&ring, m.dim, actions).map(AnyModule::Right),
            }
            .map_err(|e| FormatError::Module(ctx, e))?;
            insert_unique(&mut ws.modules, "module", &m.label, module)?;
        }
        for c in &file.categories {
            insert_unique(
                &mut ws.categories,
                "category",
                &c.label,
                Arc::new(c.build()?),
            )?;
        }
        for f in &file.functors {
            let ctx = format!("functor `{}`", f.label);
            let src = lookup(&ws.categories, "category", &f.source)?.clone();
            let dst = lookup(&ws.categories, "category", &f.target)?.clone();
            let objs: Vec<(&str, &str)> = f
                .objects
                .iter()
                .map(|(a, b)| (a.as_str(), b.as_str()))
                .collect();
            let mors: Vec<(&str, &str)> = f
                .morphisms
                .iter()
                .map(|(a, b)| (a.as_str(), b.as_str()))
                .collect();
            let functor = FiniteFunctor::from_names(f.label.clone(), src, dst, &objs, &mors)
                .map_err(|e| FormatError::Category(ctx, e))?;
            insert_unique(&mut ws.functors, "functor", &f.label, functor)?;
        }
        Ok(ws)
    }

    /// `B[G]` labelled `label`, its inherited idempotent family and the
    /// inclusion of `B`.
    pub fn build_group_ring(
        &self,
        base: &str,
        group: &str,
        label: &str,
    ) -> Result<(StructureRing, IdempotentFamily, RingMorphism), FormatError> {
        let b = lookup(&self.rings, "ring", base)?;
        let g = lookup(&self.groups, "group", group)?;
        let (ring, incl) = group_ring(b, g);
        let ring = ring.relabel(label);
        let ctx = format!("group ring `{label}`");
        let incl = RingMorphism::new(b.clone(), ring.clone(), incl.matrix().clone())
            .map_err(|e| FormatError::Ring(ctx.clone(), e))?;
        let members = self.families[base]
            .members()
            .iter()
            .map(|e| incl.apply(e))
            .collect();
        let fam = IdempotentFamily::new(&ring, members).map_err(|e| FormatError::Ring(ctx, e))?;
        Ok((ring, fam, incl))
    }

    pub fn ring(&self, label: &str) -> Result<&StructureRing, FormatError> {
        lookup(&self.rings, "ring", label)
    }

    pub fn family(&self, label: &str) -> Result<&IdempotentFamily, FormatError> {
        lookup(&self.families, "ring", label)
    }

    pub fn group(&self, label: &str) -> Result<&FiniteGroup, FormatError> {
        lookup(&self.groups, "group", label)
    }

    pub fn morphism(&self, label: &str) -> Result<&RingMorphism, FormatError> {
        lookup(&self.morphisms, "morphism", label)
    }

    pub fn module(&self, label: &str) -> Result<&AnyModule, FormatError> {
        lookup(&self.modules, "module", label)
    }

    pub fn category(&self, label: &str) -> Result<&Arc<FiniteCategory>, FormatError> {
        lookup(&self.categories, "category", label)
    }

    pub fn functor(&self, label: &str) -> Result<&FiniteFunctor, FormatError> {
        lookup(&self.functors, "functor", label)
    }

    /// The morphism `base -> ring` if exactly one is declared.
    pub fn morphism_between(&self, ring: &str, base: &str) -> Option<&RingMorphism> {
        let mut it = self
            .morphisms
            .values()
            .filter(|f| f.target().label() == ring && f.source().label() == base);
        match (it.next(), it.next()) {
            (Some(f), None) => Some(f),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub ring: String,
    pub base: String,
    pub morphism: Vec<Vec<String>>,
    pub tensor_basis: Vec<Vec<String>>,
    pub sigma: Vec<Vec<String>>,
    pub scalars: FieldDescriptor,
}

impl CertificateFile {
    pub fn from_certificate(cert: &SeparabilityCertificate) -> Self {
        CertificateFile {
            ring: cert.ring().label().into(),
            base: cert.base().label().into(),
            morphism: cert.morphism.matrix().to_wire(),
            tensor_basis: cert.tensor_basis.to_wire(),
            sigma: cert.sigma.to_wire(),
            scalars: cert.field().into(),
        }
    }

    /// Canonical text: fixed field order, one matrix row per line.
    pub fn to_json(&self) -> String {
        let rows = |m: &[Vec<String>]| {
            if m.is_empty() {
                return "[]".to_string();
            }
            let body: Vec<String> = m.iter().map(|r| format!("    {}", enc(r))).collect();
            format!("[\n{}\n  ]", body.join(",\n"))
        };
        format!(
            "{{\n  \"ring\": {},\n  \"base\": {},\n  \"morphism\": {},\n  \"tensor_basis\": {},\n  \"sigma\": {},\n  \"scalars\": {}\n}}\n",
            enc(&self.ring),
            enc(&self.base),
            rows(&self.morphism),
            rows(&self.tensor_basis),
            rows(&self.sigma),
            enc(&self.scalars),
        )
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        parse_json("certificate file", text)
    }

    /// Resolves ring labels against `ws`, where `R[G]` is rebuilt from a
    /// ring `R` and group `G` if not declared. The morphism must still be a
    /// ring morphism; the section constraints are left to the verifier.
    pub fn resolve(&self, ws: &Workspace) -> Result<SeparabilityCertificate, FormatError> {
        let ctx = "certificate";
        let field: ScalarField = self
            .scalars
            .clone()
            .try_into()
            .map_err(|e| FormatError::Scalar(ctx.into(), e))?;
        let ring = match ws.rings.get(&self.ring) {
            Some(r) => r.clone(),
            None => implied_group_ring(ws, &self.ring)?,
        };
        let base = ws.ring(&self.base)?.clone();
        if ring.field() != field || base.field() != field {
            return Err(FormatError::Invalid(format!(
                "certificate scalars are over {field} but the rings are over {}",
                ring.field()
            )));
        }
        let morphism = matrix(field, ctx, &self.morphism, base.dim())?;
        let morphism = RingMorphism::new(base, ring.clone(), morphism)
            .map_err(|e| FormatError::Ring(ctx.into(), e))?;
        let tensor_basis = matrix(field, ctx, &self.tensor_basis, width(&self.tensor_basis))?;
        let sigma = matrix(
            field,
            ctx,
            &self.sigma,
            if self.sigma.is_empty() {
                ring.dim()
            } else {
                width(&self.sigma)
            },
        )?;
        Ok(SeparabilityCertificate {
            morphism,
            tensor_basis,
            sigma,
        })
    }
}

fn enc<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("serializes")
}

fn implied_group_ring(ws: &Workspace, label: &str) -> Result<StructureRing, FormatError> {
    let unknown = || FormatError::UnknownLabel {
        kind: "ring",
        label: label.into(),
    };
    let inner = label.strip_suffix(']').ok_or_else(unknown)?;
    let open = inner.rfind('[').ok_or_else(unknown)?;
    let (base, group) = (&inner[..open], &inner[open + 1..]);
    if !ws.rings.contains_key(base) || !ws.groups.contains_key(group) {
        return Err(unknown());
    }
    Ok(ws.build_group_ring(base, group, label)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::corpus;
    use crate::ring::{matrix_ring, truncated_sequence_ring};
    use crate::separability::{solve_separability, verify_certificate};

    const Q: ScalarField = ScalarField::Rationals;

    #[test]
    fn ring_round_trip() {
        let (q3, fam) = truncated_sequence_ring(Q, 3);
        let file = RingFile::from_ring(&q3, Some(&fam));
        let text = serde_json::to_string(&file).unwrap();
        let ws = Workspace::from_json(&text, None).unwrap();
        assert_eq!(ws.ring(q3.label()).unwrap(), &q3);
        assert_eq!(ws.family(q3.label()).unwrap().members(), fam.members());
    }

    #[test]
    fn parse_error_has_position() {
        let err =
            Workspace::from_json("{\n  \"rings\": [\n    {\"label\": }\n  ]\n}", None).unwrap_err();
        match err {
            FormatError::Parse { line, column, .. } => assert_eq!((line, column), (3, 15)),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn field_override_reinterprets_constants() {
        let (m2, _) = matrix_ring(Q, 2);
        let text = serde_json::to_string(&RingFile::from_ring(&m2, None)).unwrap();
        let ws = Workspace::from_json(&text, Some(ScalarField::prime(2).unwrap())).unwrap();
        assert_eq!(
            ws.ring(m2.label()).unwrap().field(),
            ScalarField::prime(2).unwrap()
        );
    }

    #[test]
    fn certificate_round_trip_is_canonical() {
        let (m2, _) = matrix_ring(Q, 2);
        let k = crate::ring::field_as_ring(Q);
        let mut ws_file = WorkspaceFile {
            rings: vec![
                RingFile::from_ring(&m2, None),
                RingFile::from_ring(&k, None),
            ],
            ..Default::default()
        };
        ws_file.morphisms.push(MorphismFile {
            label: "unit".into(),
            source: k.label().into(),
            target: m2.label().into(),
            matrix: vec![
                vec!["1".into()],
                vec!["0".into()],
                vec!["0".into()],
                vec!["1".into()],
            ],
        });
        let ws = Workspace::from_file(&ws_file, None).unwrap();
        let cert = solve_separability(ws.morphism("unit").unwrap())
            .unwrap()
            .unwrap();
        let text = CertificateFile::from_certificate(&cert).to_json();
        let back = CertificateFile::from_json(&text)
            .unwrap()
            .resolve(&ws)
            .unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&back).is_ok());
        assert_eq!(CertificateFile::from_certificate(&back).to_json(), text);
    }

    #[test]
    fn implied_group_ring_resolves() {
        let text = r#"{"rings":[{"label":"Q","field":{"kind":"Q"},"dim":1,"mul":[[["1"]]]}],
            "groups":[{"label":"C2","order":2,"table":[[0,1],[1,0]]}]}"#;
        let ws = Workspace::from_json(text, None).unwrap();
        let r = implied_group_ring(&ws, "Q[C2]").unwrap();
        assert_eq!(r.dim(), 2);
        assert!(implied_group_ring(&ws, "Q[C3]").is_err());
    }

    #[test]
    fn category_round_trip() {
        for c in corpus::categories() {
            let file = CategoryFile::from_category(&c);
            let text = serde_json::to_string(&file).unwrap();
            let ws = Workspace::from_json(&text, None).unwrap();
            let back = ws.category(c.label()).unwrap();
            assert_eq!(back.object_count(), c.object_count(), "{}", c.label());
            assert_eq!(back.morphism_count(), c.morphism_count(), "{}", c.label());
            let norm = |mut f: CategoryFile| {
                f.homs.iter_mut().for_each(|h| h.morphisms.sort());
                f.compose.sort_by(|a, b| (&a.g, &a.f).cmp(&(&b.g, &b.f)));
                f
            };
            assert_eq!(norm(CategoryFile::from_category(back)), norm(file));
        }
    }

    #[test]
    fn duplicate_and_unknown_labels() {
        let ring = r#"{"label":"Q","field":{"kind":"Q"},"dim":1,"mul":[[["1"]]]}"#;
        let dup = format!(r#"{{"rings":[{ring},{ring}]}}"#);
        assert!(matches!(
            Workspace::from_json(&dup, None),
            Err(FormatError::DuplicateLabel { .. })
        ));
        let bad = format!(
            r#"{{"rings":[{ring}],"modules":[{{"label":"M","ring":"R","dim":0,"actions":[]}}]}}"#
        );
        assert!(matches!(
            Workspace::from_json(&bad, None),
            Err(FormatError::UnknownLabel { kind: "ring", .. })
        ));
    }
}
