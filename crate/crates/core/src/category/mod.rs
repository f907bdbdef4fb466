//! Finite categories given by composition tables, functors between them,
//! exhaustive search for separability structures, and checks of the
//! properties that separable functors reflect.

pub mod corpus;
mod properties;
mod search;

pub use properties::{
    check_reflection, epimorphisms, is_epi, is_initial, is_injective, is_iso, is_mono,
    is_projective, is_quotient_semisimple, is_quotient_simple, is_subobject_semisimple,
    is_subobject_simple, is_terminal, is_zero_object, monomorphisms, pointed_equivalences,
    preserves_epis, preserves_monos, quotient_table, simple_implies_semisimple, subobject_table,
    zero_object, Property, ReflectionReport,
};
pub use search::{
    check_sf2_iff_sf3, compose_and_check, find_separability_structure, verify_structure,
    CompositionReport, SeparabilityStructure, SfReport, DEFAULT_BUDGET,
};

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::CategoryError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// Objects and morphisms are indexed in declaration order; `compose(g, f)`
/// is `g ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    label: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    homs: Vec<Vec<usize>>,
    table: Vec<Option<usize>>,
}

impl FiniteCategory {
    /// Builds a category from a full table; `table[g * m + f]` is `g ∘ f`.
    pub fn from_parts(
        label: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        table: Vec<Option<usize>>,
    ) -> Result<Self, CategoryError> {
        let n = objects.len();
        let m = morphisms.len();
        let mut seen = HashSet::new();
        for name in &objects {
            if !seen.insert(name.as_str()) {
                return Err(CategoryError::Duplicate(name.clone()));
            }
        }
        seen.clear();
        for f in &morphisms {
            if !seen.insert(f.name.as_str()) {
                return Err(CategoryError::Duplicate(f.name.clone()));
            }
        }
        if identities.len() != n || table.len() != m * m {
            return Err(CategoryError::Functor("table shape".into()));
        }
        for f in &morphisms {
            if f.src >= n || f.dst >= n {
                return Err(CategoryError::UnknownObject(f.name.clone()));
            }
        }
        for (o, &i) in identities.iter().enumerate() {
            if i >= m || morphisms[i].src != o || morphisms[i].dst != o {
                return Err(CategoryError::IdentityLaw(objects[o].clone()));
            }
        }
        let mut homs = vec![Vec::new(); n * n];
        for (i, f) in morphisms.iter().enumerate() {
            homs[f.src * n + f.dst].push(i);
        }
        let c = FiniteCategory {
            label: label.into(),
            objects,
            morphisms,
            identities,
            homs,
            table,
        };
        c.validate()?;
        Ok(c)
    }

    /// Builds a category from names. Composites with identities may be
    /// omitted; every other composable pair must be listed as `(g, f, g∘f)`.
    pub fn new(
        label: impl Into<String>,
        objects: &[&str],
        morphisms: &[(&str, &str, &str)],
        identities: &[(&str, &str)],
        composites: &[(&str, &str, &str)],
    ) -> Result<Self, CategoryError> {
        let obj_idx: HashMap<&str, usize> =
            objects.iter().enumerate().map(|(i, o)| (*o, i)).collect();
        let obj = |s: &str| {
            obj_idx
                .get(s)
                .copied()
                .ok_or_else(|| CategoryError::UnknownObject(s.into()))
        };
        let mut morphs = Vec::new();
        for (name, s, d) in morphisms {
            morphs.push(Morphism {
                name: (*name).into(),
                src: obj(s)?,
                dst: obj(d)?,
            });
        }
        let mor_idx: HashMap<String, usize> = morphs
            .iter()
            .enumerate()
            .map(|(i, f)| (f.name.clone(), i))
            .collect();
        let mor = |s: &str| {
            mor_idx
                .get(s)
                .copied()
                .ok_or_else(|| CategoryError::UnknownMorphism(s.into()))
        };
        let mut ids = vec![usize::MAX; objects.len()];
        for (o, f) in identities {
            ids[obj(o)?] = mor(f)?;
        }
        if let Some(o) = ids.iter().position(|i| *i == usize::MAX) {
            return Err(CategoryError::IdentityLaw(objects[o].into()));
        }
        let m = morphs.len();
        let mut table = vec![None; m * m];
        for (g, f, gf) in composites {
            let (g, f, gf) = (mor(g)?, mor(f)?, mor(gf)?);
            if table[g * m + f].is_some_and(|x| x != gf) {
                return Err(CategoryError::Duplicate(format!(
                    "{} o {}",
                    morphs[g].name, morphs[f].name
                )));
            }
            table[g * m + f] = Some(gf);
        }
        for (f, mf) in morphs.iter().enumerate() {
            let (l, r) = (ids[mf.dst], ids[mf.src]);
            for (g, h) in [(l, f), (f, r)] {
                match table[g * m + h] {
                    None => table[g * m + h] = Some(f),
                    Some(x) if x == f => {}
                    Some(_) => return Err(CategoryError::IdentityLaw(mf.name.clone())),
                }
            }
        }
        Self::from_parts(
            label,
            objects.iter().map(|s| s.to_string()).collect(),
            morphs,
            ids,
            table,
        )
    }

    fn validate(&self) -> Result<(), CategoryError> {
        let m = self.morphisms.len();
        let name = |i: usize| self.morphisms[i].name.clone();
        for g in 0..m {
            for f in 0..m {
                let composable = self.morphisms[f].dst == self.morphisms[g].src;
                match (composable, self.table[g * m + f]) {
                    (true, None) => return Err(CategoryError::MissingComposite(name(g), name(f))),
                    (false, Some(_)) => return Err(CategoryError::NotComposable(name(g), name(f))),
                    (true, Some(h)) => {
                        if h >= m
                            || self.morphisms[h].src != self.morphisms[f].src
                            || self.morphisms[h].dst != self.morphisms[g].dst
                        {
                            let hn = self
                                .morphisms
                                .get(h)
                                .map_or_else(|| h.to_string(), |x| x.name.clone());
                            return Err(CategoryError::IllTypedComposite(name(g), name(f), hn));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            if self.compose(self.identities[mf.dst], f) != f
                || self.compose(f, self.identities[mf.src]) != f
            {
                return Err(CategoryError::IdentityLaw(mf.name.clone()));
            }
        }
        for h in 0..m {
            for g in self.out_of(self.morphisms[h].dst) {
                for f in self.out_of(self.morphisms[g].dst) {
                    if self.compose(f, self.compose(g, h)) != self.compose(self.compose(f, g), h) {
                        return Err(CategoryError::Associativity(name(f), name(g), name(h)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn name(&self, f: usize) -> &str {
        &self.morphisms[f].name
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|f| f.name == name)
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    /// Morphisms `a -> b` in declaration order.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.objects.len() + b]
    }

    /// Morphisms with domain `a`.
    pub fn out_of(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.objects.len()).flat_map(move |b| self.hom(a, b).iter().copied())
    }

    /// Morphisms with codomain `b`.
    pub fn into_obj(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.objects.len()).flat_map(move |a| self.hom(a, b).iter().copied())
    }

    /// `g ∘ f`; panics if not composable.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.table[g * self.morphisms.len() + f].expect("composable pair")
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table
            .get(g * self.morphisms.len() + f)
            .copied()
            .flatten()
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].src] == f
    }

    /// Table of composites as `(g, f, g∘f)` names, identities omitted.
    pub fn composite_names(&self) -> Vec<(String, String, String)> {
        let m = self.morphisms.len();
        let mut out = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.table[g * m + f] {
                    if !self.is_identity(g) && !self.is_identity(f) {
                        out.push((
                            self.name(g).into(),
                            self.name(f).into(),
                            self.name(h).into(),
                        ));
                    }
                }
            }
        }
        out
    }
}

/// A functor, checked to preserve types, identities and composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFunctor {
    label: String,
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

impl FiniteFunctor {
    pub fn new(
        label: impl Into<String>,
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<Self, CategoryError> {
        let err = |s: String| Err(CategoryError::Functor(s));
        if objects.len() != source.object_count() || morphisms.len() != source.morphism_count() {
            return err("object or morphism map has the wrong length".into());
        }
        if objects.iter().any(|o| *o >= target.object_count())
            || morphisms.iter().any(|f| *f >= target.morphism_count())
        {
            return err("map points outside the target".into());
        }
        for (f, mf) in source.morphisms().iter().enumerate() {
            let img = target.morphism(morphisms[f]);
            if img.src != objects[mf.src] || img.dst != objects[mf.dst] {
                return err(format!("image of `{}` has the wrong type", mf.name));
            }
        }
        for (o, &i) in source.identities().iter().enumerate() {
            if morphisms[i] != target.identity(objects[o]) {
                return err(format!(
                    "identity of `{}` is not preserved",
                    source.objects()[o]
                ));
            }
        }
        for g in 0..source.morphism_count() {
            for f in source.into_obj(source.morphism(g).src) {
                let lhs = morphisms[source.compose(g, f)];
                if lhs != target.compose(morphisms[g], morphisms[f]) {
                    return err(format!(
                        "composition {} o {} is not preserved",
                        source.name(g),
                        source.name(f)
                    ));
                }
            }
        }
        Ok(FiniteFunctor {
            label: label.into(),
            source,
            target,
            objects,
            morphisms,
        })
    }

    /// Builds a functor from names; identities may be omitted.
    pub fn from_names(
        label: impl Into<String>,
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: &[(&str, &str)],
        morphisms: &[(&str, &str)],
    ) -> Result<Self, CategoryError> {
        let mut om = vec![usize::MAX; source.object_count()];
        for (a, b) in objects {
            let a = source
                .object_index(a)
                .ok_or_else(|| CategoryError::UnknownObject((*a).into()))?;
            om[a] = target
                .object_index(b)
                .ok_or_else(|| CategoryError::UnknownObject((*b).into()))?;
        }
        if let Some(o) = om.iter().position(|x| *x == usize::MAX) {
            return Err(CategoryError::Functor(format!(
                "object `{}` is not mapped",
                source.objects()[o]
            )));
        }
        let mut mm = vec![usize::MAX; source.morphism_count()];
        for (o, &i) in source.identities().iter().enumerate() {
            mm[i] = target.identity(om[o]);
        }
        for (a, b) in morphisms {
            let a = source
                .morphism_index(a)
                .ok_or_else(|| CategoryError::UnknownMorphism((*a).into()))?;
            mm[a] = target
                .morphism_index(b)
                .ok_or_else(|| CategoryError::UnknownMorphism((*b).into()))?;
        }
        if let Some(f) = mm.iter().position(|x| *x == usize::MAX) {
            return Err(CategoryError::Functor(format!(
                "morphism `{}` is not mapped",
                source.name(f)
            )));
        }
        Self::new(label, source, target, om, mm)
    }

    pub fn identity(c: &Arc<FiniteCategory>) -> Self {
        FiniteFunctor {
            label: format!("id_{}", c.label()),
            source: c.clone(),
            target: c.clone(),
            objects: (0..c.object_count()).collect(),
            morphisms: (0..c.morphism_count()).collect(),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FiniteFunctor) -> Result<Self, CategoryError> {
        if inner.target != self.source {
            return Err(CategoryError::Functor("functors are not composable".into()));
        }
        Ok(FiniteFunctor {
            label: format!("{} o {}", self.label, inner.label),
            source: inner.source.clone(),
            target: self.target.clone(),
            objects: inner.objects.iter().map(|o| self.objects[*o]).collect(),
            morphisms: inner.morphisms.iter().map(|f| self.morphisms[*f]).collect(),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn source(&self) -> &FiniteCategory {
        &self.source
    }

    pub fn target(&self) -> &FiniteCategory {
        &self.target
    }

    pub fn object(&self, o: usize) -> usize {
        self.objects[o]
    }

    pub fn map(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    pub fn is_faithful(&self) -> bool {
        let n = self.source.object_count();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let mut imgs: Vec<usize> = self
                    .source
                    .hom(a, b)
                    .iter()
                    .map(|f| self.morphisms[*f])
                    .collect();
                let len = imgs.len();
                imgs.sort();
                imgs.dedup();
                imgs.len() == len
            })
        })
    }

    pub fn is_full(&self) -> bool {
        let n = self.source.object_count();
        (0..n).all(|a| {
            (0..n).all(|b| {
                self.target
                    .hom(self.objects[a], self.objects[b])
                    .iter()
                    .all(|g| {
                        self.source
                            .hom(a, b)
                            .iter()
                            .any(|f| self.morphisms[*f] == *g)
                    })
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_rejects() {
        let c = corpus::single_arrow();
        assert_eq!(c.morphism_count(), 3);
        let bad = FiniteCategory::new(
            "bad",
            &["A"],
            &[("id", "A", "A"), ("e", "A", "A")],
            &[("A", "id")],
            &[],
        );
        assert_eq!(
            bad,
            Err(CategoryError::MissingComposite("e".into(), "e".into()))
        );
        let nonassoc = FiniteCategory::new(
            "bad",
            &["A"],
            &[("id", "A", "A"), ("a", "A", "A"), ("b", "A", "A")],
            &[("A", "id")],
            // (b∘b)∘b = a∘b = b but b∘(b∘b) = b∘a = a
            &[
                ("a", "a", "a"),
                ("a", "b", "b"),
                ("b", "a", "a"),
                ("b", "b", "a"),
            ],
        );
        assert!(matches!(nonassoc, Err(CategoryError::Associativity(..))));
    }

    #[test]
    fn functor_checks() {
        let s = Arc::new(corpus::singleton());
        let d = Arc::new(corpus::discrete(2));
        let collapse =
            FiniteFunctor::from_names("c", d.clone(), s.clone(), &[("X0", "X"), ("X1", "X")], &[])
                .unwrap();
        assert!(collapse.is_faithful());
        assert!(!collapse.is_full());
        let id = FiniteFunctor::identity(&d);
        assert_eq!(collapse.compose(&id).unwrap().object(1), 0);
    }
}
