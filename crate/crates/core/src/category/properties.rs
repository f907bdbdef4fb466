use std::fmt;
use std::str::FromStr;

use super::search::SeparabilityStructure;
use super::{FiniteCategory, FiniteFunctor};

/// `f g1 = f g2` implies `g1 = g2` for all parallel `g1, g2` into `src(f)`.
pub fn is_mono(c: &FiniteCategory, f: usize) -> bool {
    let s = c.morphism(f).src;
    (0..c.object_count()).all(|p| {
        let hom = c.hom(p, s);
        hom.iter().enumerate().all(|(i, &g1)| {
            hom[i + 1..]
                .iter()
                .all(|&g2| c.compose(f, g1) != c.compose(f, g2))
        })
    })
}

pub fn is_epi(c: &FiniteCategory, f: usize) -> bool {
    let t = c.morphism(f).dst;
    (0..c.object_count()).all(|q| {
        let hom = c.hom(t, q);
        hom.iter().enumerate().all(|(i, &h1)| {
            hom[i + 1..]
                .iter()
                .all(|&h2| c.compose(h1, f) != c.compose(h2, f))
        })
    })
}

pub fn monomorphisms(c: &FiniteCategory) -> Vec<usize> {
    (0..c.morphism_count()).filter(|f| is_mono(c, *f)).collect()
}

pub fn epimorphisms(c: &FiniteCategory) -> Vec<usize> {
    (0..c.morphism_count()).filter(|f| is_epi(c, *f)).collect()
}

/// An inverse of `f`, if it has one.
pub fn is_iso(c: &FiniteCategory, f: usize) -> Option<usize> {
    let m = c.morphism(f);
    c.hom(m.dst, m.src)
        .iter()
        .copied()
        .find(|&g| c.compose(g, f) == c.identity(m.src) && c.compose(f, g) == c.identity(m.dst))
}

fn classes(members: Vec<usize>, related: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for f in members {
        match out.iter_mut().find(|cl| related(cl[0], f)) {
            Some(cl) => cl.push(f),
            None => out.push(vec![f]),
        }
    }
    out
}

/// Monomorphisms into `m` grouped by mutual factoring: `f ~ g` iff
/// `f = g p` and `g = f q` for some `p, q`.
pub fn subobject_table(c: &FiniteCategory, m: usize) -> Vec<Vec<usize>> {
    let monos: Vec<usize> = c.into_obj(m).filter(|f| is_mono(c, *f)).collect();
    let factors = |f: usize, g: usize| {
        // f = g p
        let (pf, qg) = (c.morphism(f).src, c.morphism(g).src);
        c.hom(pf, qg).iter().any(|&p| c.compose(g, p) == f)
    };
    let mut sorted = monos;
    sorted.sort();
    classes(sorted, |f, g| factors(f, g) && factors(g, f))
}

/// Epimorphisms out of `m` grouped by mutual factoring: `f ≈ g` iff
/// `f = p g` and `g = q f` for some `p, q`.
pub fn quotient_table(c: &FiniteCategory, m: usize) -> Vec<Vec<usize>> {
    let epis: Vec<usize> = c.out_of(m).filter(|f| is_epi(c, *f)).collect();
    let factors = |f: usize, g: usize| {
        // f = p g
        let (tf, tg) = (c.morphism(f).dst, c.morphism(g).dst);
        c.hom(tg, tf).iter().any(|&p| c.compose(p, g) == f)
    };
    let mut sorted = epis;
    sorted.sort();
    classes(sorted, |f, g| factors(f, g) && factors(g, f))
}

pub fn is_initial(c: &FiniteCategory, i: usize) -> bool {
    (0..c.object_count()).all(|m| c.hom(i, m).len() == 1)
}

pub fn is_terminal(c: &FiniteCategory, t: usize) -> bool {
    (0..c.object_count()).all(|m| c.hom(m, t).len() == 1)
}

pub fn is_zero_object(c: &FiniteCategory, z: usize) -> bool {
    is_initial(c, z) && is_terminal(c, z)
}

/// The first zero object, if the category is pointed.
pub fn zero_object(c: &FiniteCategory) -> Option<usize> {
    (0..c.object_count()).find(|z| is_zero_object(c, *z))
}

fn has_retraction(c: &FiniteCategory, f: usize) -> bool {
    let m = c.morphism(f);
    c.hom(m.dst, m.src)
        .iter()
        .any(|&r| c.compose(r, f) == c.identity(m.src))
}

fn has_section(c: &FiniteCategory, f: usize) -> bool {
    let m = c.morphism(f);
    c.hom(m.dst, m.src)
        .iter()
        .any(|&s| c.compose(f, s) == c.identity(m.dst))
}

pub fn is_subobject_simple(c: &FiniteCategory, m: usize) -> bool {
    subobject_table(c, m).len() == 2
}

/// Every monomorphism into `m` has a retraction.
pub fn is_subobject_semisimple(c: &FiniteCategory, m: usize) -> bool {
    c.into_obj(m)
        .filter(|f| is_mono(c, *f))
        .all(|f| has_retraction(c, f))
}

pub fn is_quotient_simple(c: &FiniteCategory, m: usize) -> bool {
    quotient_table(c, m).len() == 2
}

/// Every epimorphism out of `m` has a section.
pub fn is_quotient_semisimple(c: &FiniteCategory, m: usize) -> bool {
    c.out_of(m)
        .filter(|f| is_epi(c, *f))
        .all(|f| has_section(c, f))
}

pub fn is_projective(c: &FiniteCategory, p: usize) -> bool {
    epimorphisms(c).into_iter().all(|e| {
        let (m, n) = (c.morphism(e).src, c.morphism(e).dst);
        c.hom(p, n)
            .iter()
            .all(|&f| c.hom(p, m).iter().any(|&g| c.compose(e, g) == f))
    })
}

pub fn is_injective(c: &FiniteCategory, q: usize) -> bool {
    monomorphisms(c).into_iter().all(|mo| {
        let (m, n) = (c.morphism(mo).src, c.morphism(mo).dst);
        c.hom(m, q)
            .iter()
            .all(|&f| c.hom(n, q).iter().any(|&g| c.compose(g, mo) == f))
    })
}

pub fn preserves_monos(f: &FiniteFunctor) -> bool {
    monomorphisms(f.source())
        .into_iter()
        .all(|x| is_mono(f.target(), f.map(x)))
}

pub fn preserves_epis(f: &FiniteFunctor) -> bool {
    epimorphisms(f.source())
        .into_iter()
        .all(|x| is_epi(f.target(), f.map(x)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Mono,
    Epi,
    Retraction,
    Section,
    Iso,
    Initial,
    Terminal,
    Zero,
    SubobjectSimple,
    SubobjectSemisimple,
    QuotientSimple,
    QuotientSemisimple,
    Projective,
    Injective,
}

impl Property {
    pub const ALL: [Property; 14] = [
        Property::Mono,
        Property::Epi,
        Property::Retraction,
        Property::Section,
        Property::Iso,
        Property::Initial,
        Property::Terminal,
        Property::Zero,
        Property::SubobjectSimple,
        Property::SubobjectSemisimple,
        Property::QuotientSimple,
        Property::QuotientSemisimple,
        Property::Projective,
        Property::Injective,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Mono => "mono",
            Property::Epi => "epi",
            Property::Retraction => "retraction",
            Property::Section => "section",
            Property::Iso => "iso",
            Property::Initial => "initial",
            Property::Terminal => "terminal",
            Property::Zero => "zero",
            Property::SubobjectSimple => "subobject_simple",
            Property::SubobjectSemisimple => "subobject_semisimple",
            Property::QuotientSimple => "quotient_simple",
            Property::QuotientSemisimple => "quotient_semisimple",
            Property::Projective => "projective",
            Property::Injective => "injective",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionReport {
    pub property: Property,
    /// Preservation hypothesis required by the implication, and whether it
    /// holds. When it fails no instance is checked.
    pub side_condition: Option<(&'static str, bool)>,
    /// Instances where the property held in the target.
    pub instances: usize,
    /// Witnesses where it did not come back to the source.
    pub violations: Vec<String>,
}

impl ReflectionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn applicable(&self) -> bool {
        self.side_condition.is_none_or(|(_, ok)| ok)
    }
}

/// Checks instance by instance that `property` of `F(x)` in the target
/// gives `property` of `x` in the source, using `R` where the implication
/// is constructive.
pub fn check_reflection(s: &SeparabilityStructure, property: Property) -> ReflectionReport {
    let f = s.functor();
    let c = f.source();
    let d = f.target();
    let objs = 0..c.object_count();
    let mut instances = 0;
    let mut violations = Vec::new();
    let mut check = |hyp: bool, concl: bool, witness: String| {
        if hyp {
            instances += 1;
            if !concl {
                violations.push(witness);
            }
        }
    };
    let oname = |o: usize| c.objects()[o].clone();

    let side = match property {
        Property::SubobjectSimple | Property::SubobjectSemisimple | Property::Injective => {
            Some(("F preserves monomorphisms", preserves_monos(f)))
        }
        Property::QuotientSimple | Property::QuotientSemisimple | Property::Projective => {
            Some(("F preserves epimorphisms", preserves_epis(f)))
        }
        _ => None,
    };
    if side.is_some_and(|(_, ok)| !ok) {
        return ReflectionReport {
            property,
            side_condition: side,
            instances: 0,
            violations,
        };
    }

    match property {
        Property::Mono | Property::Epi => {
            let test = if property == Property::Mono {
                is_mono
            } else {
                is_epi
            };
            for x in 0..c.morphism_count() {
                check(test(d, f.map(x)), test(c, x), c.name(x).into());
            }
        }
        Property::Retraction | Property::Section | Property::Iso => {
            for x in 0..c.morphism_count() {
                let (m, n) = (c.morphism(x).src, c.morphism(x).dst);
                let fx = f.map(x);
                for &t in d.hom(f.object(n), f.object(m)) {
                    let retr = d.compose(t, fx) == d.identity(f.object(m));
                    let sect = d.compose(fx, t) == d.identity(f.object(n));
                    let r = s.apply(n, m, t);
                    let r_retr = c.compose(r, x) == c.identity(m);
                    let r_sect = c.compose(x, r) == c.identity(n);
                    let w = format!("{} with {}", c.name(x), d.name(t));
                    match property {
                        Property::Retraction => check(retr, r_retr, w),
                        Property::Section => check(sect, r_sect, w),
                        _ => check(retr && sect, r_retr && r_sect, w),
                    }
                }
            }
        }
        Property::Initial => {
            objs.for_each(|o| check(is_initial(d, f.object(o)), is_initial(c, o), oname(o)))
        }
        Property::Terminal => {
            objs.for_each(|o| check(is_terminal(d, f.object(o)), is_terminal(c, o), oname(o)))
        }
        Property::Zero => objs.for_each(|o| {
            check(
                is_zero_object(d, f.object(o)),
                is_zero_object(c, o),
                oname(o),
            )
        }),
        Property::SubobjectSimple => objs.for_each(|o| {
            let hyp = subobject_table(c, o).len() >= 2 && is_subobject_simple(d, f.object(o));
            check(hyp, is_subobject_simple(c, o), oname(o))
        }),
        Property::SubobjectSemisimple => objs.for_each(|o| {
            check(
                is_subobject_semisimple(d, f.object(o)),
                is_subobject_semisimple(c, o),
                oname(o),
            )
        }),
        Property::QuotientSimple => objs.for_each(|o| {
            let hyp = quotient_table(c, o).len() >= 2 && is_quotient_simple(d, f.object(o));
            check(hyp, is_quotient_simple(c, o), oname(o))
        }),
        Property::QuotientSemisimple => objs.for_each(|o| {
            check(
                is_quotient_semisimple(d, f.object(o)),
                is_quotient_semisimple(c, o),
                oname(o),
            )
        }),
        Property::Projective => {
            objs.for_each(|o| check(is_projective(d, f.object(o)), is_projective(c, o), oname(o)))
        }
        Property::Injective => {
            objs.for_each(|o| check(is_injective(d, f.object(o)), is_injective(c, o), oname(o)))
        }
    }
    ReflectionReport {
        property,
        side_condition: side,
        instances,
        violations,
    }
}

/// For a pointed category with zero object `Z`, per object `M`:
/// `M` is zero; some `Z -> M` is an isomorphism; `0_{Z,M} ~ id_M`;
/// `M` is subobject trivial; `0_{M,Z} ≈ id_M`; `M` is quotient trivial.
/// `None` when the category has no zero object.
pub fn pointed_equivalences(c: &FiniteCategory) -> Option<Vec<[bool; 6]>> {
    let z = zero_object(c)?;
    Some(
        (0..c.object_count())
            .map(|m| {
                let zm = c.hom(z, m)[0];
                let mz = c.hom(m, z)[0];
                let id = c.identity(m);
                let sub = subobject_table(c, m);
                let quot = quotient_table(c, m);
                let same = |t: &[Vec<usize>], a: usize, b: usize| {
                    t.iter().any(|cl| cl.contains(&a) && cl.contains(&b))
                };
                [
                    is_zero_object(c, m),
                    is_iso(c, zm).is_some(),
                    same(&sub, zm, id),
                    sub.len() == 1,
                    same(&quot, mz, id),
                    quot.len() == 1,
                ]
            })
            .collect(),
    )
}

/// In a pointed category every subobject simple object is subobject
/// semisimple and every quotient simple object is quotient semisimple.
/// Returns the objects where this fails, or `None` if not pointed.
pub fn simple_implies_semisimple(c: &FiniteCategory) -> Option<Vec<String>> {
    zero_object(c)?;
    Some(
        (0..c.object_count())
            .filter(|&m| {
                (is_subobject_simple(c, m) && !is_subobject_semisimple(c, m))
                    || (is_quotient_simple(c, m) && !is_quotient_semisimple(c, m))
            })
            .map(|m| c.objects()[m].clone())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{corpus, find_separability_structure, DEFAULT_BUDGET};
    use std::sync::Arc;

    #[test]
    fn arrow_category_tables() {
        let c = corpus::single_arrow();
        let m = c.object_index("M").unwrap();
        assert_eq!(subobject_table(&c, m).len(), 2);
        assert!(is_subobject_simple(&c, m));
        assert!(!is_subobject_semisimple(&c, m));
        assert!(zero_object(&c).is_none());
        assert!(simple_implies_semisimple(&c).is_none());
    }

    #[test]
    fn chain_top_has_three_subobjects() {
        let c = corpus::chain(3);
        assert_eq!(subobject_table(&c, 2).len(), 3);
        assert_eq!(subobject_table(&corpus::singleton(), 0).len(), 1);
    }

    #[test]
    fn pointed_corpus_satisfies_equivalences() {
        for c in corpus::categories() {
            if let Some(rows) = pointed_equivalences(&c) {
                for row in rows {
                    assert!(row.iter().all(|b| *b == row[0]), "{} {:?}", c.label(), row);
                }
                assert_eq!(simple_implies_semisimple(&c), Some(Vec::new()));
            }
        }
    }

    #[test]
    fn identity_reflects_everything() {
        let c = Arc::new(corpus::linear(2, &[0, 1, 1]));
        let id = FiniteFunctor::identity(&c);
        let s = find_separability_structure(&id, DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        for p in Property::ALL {
            let r = check_reflection(&s, p);
            assert!(r.applicable() && r.holds(), "{p}");
        }
    }

    #[test]
    fn monos_in_idempotent_monoid() {
        let c = corpus::monoid("idempotent", &["1", "e"], |g, f| g.max(f));
        assert_eq!(monomorphisms(&c), vec![0]);
        assert_eq!(is_iso(&c, 1), None);
    }
}
