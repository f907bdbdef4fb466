//! Small categories and functors used by the checks and tests. Every
//! category has at most 4 objects and at most 5 morphisms per hom-set.

use std::sync::Arc;

use super::{FiniteCategory, FiniteFunctor, Morphism};

/// One object, one morphism.
pub fn singleton() -> FiniteCategory {
    FiniteCategory::new("1", &["X"], &[("id_X", "X", "X")], &[("X", "id_X")], &[]).expect("valid")
}

/// `n` objects with only identities.
pub fn discrete(n: usize) -> FiniteCategory {
    let objects: Vec<String> = (0..n).map(|i| format!("X{i}")).collect();
    let morphisms = (0..n)
        .map(|i| Morphism {
            name: format!("id_X{i}"),
            src: i,
            dst: i,
        })
        .collect();
    let mut table = vec![None; n * n];
    for i in 0..n {
        table[i * n + i] = Some(i);
    }
    FiniteCategory::from_parts(
        format!("discrete{n}"),
        objects,
        morphisms,
        (0..n).collect(),
        table,
    )
    .expect("valid")
}

/// The poset `0 < 1 < ... < n-1`; the morphism `i -> j` is named `a{i}{j}`.
pub fn chain(n: usize) -> FiniteCategory {
    let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut morphisms = Vec::new();
    let mut index = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        for j in i..n {
            index[i][j] = morphisms.len();
            morphisms.push(Morphism {
                name: format!("a{i}{j}"),
                src: i,
                dst: j,
            });
        }
    }
    let m = morphisms.len();
    let mut table = vec![None; m * m];
    for f in &morphisms {
        for g in &morphisms {
            if f.dst == g.src {
                table[index[g.src][g.dst] * m + index[f.src][f.dst]] = Some(index[f.src][g.dst]);
            }
        }
    }
    let ids = (0..n).map(|i| index[i][i]).collect();
    FiniteCategory::from_parts(format!("chain{n}"), objects, morphisms, ids, table).expect("valid")
}

/// Objects `M`, `N` and a single non-identity arrow `f: N -> M`.
pub fn single_arrow() -> FiniteCategory {
    FiniteCategory::new(
        "arrow",
        &["M", "N"],
        &[("id_M", "M", "M"), ("id_N", "N", "N"), ("f", "N", "M")],
        &[("M", "id_M"), ("N", "id_N")],
        &[],
    )
    .expect("valid")
}

/// A one-object category from a monoid table; element 0 is the unit.
pub fn monoid(label: &str, names: &[&str], mul: impl Fn(usize, usize) -> usize) -> FiniteCategory {
    let k = names.len();
    let morphisms = names
        .iter()
        .map(|n| Morphism {
            name: (*n).into(),
            src: 0,
            dst: 0,
        })
        .collect();
    let mut table = vec![None; k * k];
    for g in 0..k {
        for f in 0..k {
            table[g * k + f] = Some(mul(g, f));
        }
    }
    FiniteCategory::from_parts(label, vec!["X".into()], morphisms, vec![0], table)
        .expect("valid monoid")
}

/// Adds a zero object `Z` to a one-object category whose monoid has a zero
/// element `zero`, making it pointed.
pub fn pointed_monoid(
    label: &str,
    names: &[&str],
    zero: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> FiniteCategory {
    let k = names.len();
    let mut morphisms: Vec<Morphism> = names
        .iter()
        .map(|n| Morphism {
            name: (*n).into(),
            src: 0,
            dst: 0,
        })
        .collect();
    let (id_z, zx, xz) = (k, k + 1, k + 2);
    for (name, src, dst) in [("id_Z", 1, 1), ("0_ZX", 1, 0), ("0_XZ", 0, 1)] {
        morphisms.push(Morphism {
            name: name.into(),
            src,
            dst,
        });
    }
    let m = morphisms.len();
    let mut table = vec![None; m * m];
    let mut set = |g: usize, f: usize, h: usize| table[g * m + f] = Some(h);
    for g in 0..k {
        for f in 0..k {
            set(g, f, mul(g, f));
        }
        set(g, zx, zx);
        set(xz, g, xz);
    }
    set(id_z, id_z, id_z);
    set(zx, id_z, zx);
    set(id_z, xz, xz);
    set(zx, xz, zero);
    set(xz, zx, id_z);
    FiniteCategory::from_parts(
        label,
        vec!["X".into(), "Z".into()],
        morphisms,
        vec![0, id_z],
        table,
    )
    .expect("valid pointed monoid")
}

/// All `F_p`-linear maps between spaces of the given dimensions. The
/// morphism named `Xi>Xj:c` is the matrix whose entries are the base-`p`
/// digits of `c`.
pub fn linear(p: u64, dims: &[usize]) -> FiniteCategory {
    let n = dims.len();
    let objects: Vec<String> = (0..n).map(|i| format!("X{i}")).collect();
    let mut morphisms = Vec::new();
    let mut mats: Vec<Vec<u64>> = Vec::new();
    let mut lookup = std::collections::HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let entries = dims[a] * dims[b];
            let count = p.pow(entries as u32);
            for c in 0..count {
                let mut digits = Vec::with_capacity(entries);
                let mut x = c;
                for _ in 0..entries {
                    digits.push(x % p);
                    x /= p;
                }
                lookup.insert((a, b, digits.clone()), morphisms.len());
                morphisms.push(Morphism {
                    name: format!("X{a}>X{b}:{c}"),
                    src: a,
                    dst: b,
                });
                mats.push(digits);
            }
        }
    }
    // matrix of `a -> b` is dims[b] x dims[a], row-major
    let mul = |g: usize, f: usize| -> Vec<u64> {
        let (a, b, c) = (morphisms[f].src, morphisms[f].dst, morphisms[g].dst);
        let (da, db, dc) = (dims[a], dims[b], dims[c]);
        let mut out = vec![0u64; dc * da];
        for r in 0..dc {
            for col in 0..da {
                let mut s = 0;
                for k in 0..db {
                    s += mats[g][r * db + k] * mats[f][k * da + col];
                }
                out[r * da + col] = s % p;
            }
        }
        out
    };
    let m = morphisms.len();
    let mut table = vec![None; m * m];
    for g in 0..m {
        for f in 0..m {
            if morphisms[f].dst == morphisms[g].src {
                let key = (morphisms[f].src, morphisms[g].dst, mul(g, f));
                table[g * m + f] = Some(lookup[&key]);
            }
        }
    }
    let ids = (0..n)
        .map(|a| {
            let d = dims[a];
            let digits: Vec<u64> = (0..d * d).map(|i| u64::from(i % (d + 1) == 0)).collect();
            lookup[&(a, a, digits)]
        })
        .collect();
    let label = format!("Vect_F{p}{dims:?}");
    FiniteCategory::from_parts(label, objects, morphisms, ids, table)
        .expect("valid linear category")
}

/// The corpus categories, all distinct.
pub fn categories() -> Vec<Arc<FiniteCategory>> {
    vec![
        Arc::new(singleton()),
        Arc::new(discrete(2)),
        Arc::new(chain(2)),
        Arc::new(chain(3)),
        Arc::new(single_arrow()),
        Arc::new(monoid("idempotent", &["1", "e"], |g, f| g.max(f))),
        Arc::new(monoid("C2", &["1", "s"], |g, f| g ^ f)),
        Arc::new(pointed_monoid(
            "pointed_idempotent",
            &["1", "e", "0"],
            2,
            |g, f| g.max(f),
        )),
        Arc::new(linear(2, &[0, 1])),
        Arc::new(linear(3, &[0, 1])),
        Arc::new(linear(2, &[0, 1, 1])),
    ]
}

/// A labelled corpus functor with its expected separability, where that
/// follows from the faithfulness and hom-nonemptiness conditions or from
/// being fully faithful.
pub struct CorpusFunctor {
    pub functor: FiniteFunctor,
    pub expected: Option<bool>,
}

fn find(cats: &[Arc<FiniteCategory>], label: &str) -> Arc<FiniteCategory> {
    cats.iter()
        .find(|c| c.label() == label)
        .expect("corpus label")
        .clone()
}

pub fn functors() -> Vec<CorpusFunctor> {
    let cats = categories();
    let mut out: Vec<CorpusFunctor> = cats
        .iter()
        .map(|c| CorpusFunctor {
            functor: FiniteFunctor::identity(c),
            expected: Some(true),
        })
        .collect();
    let mk = |label: &str,
              s: &str,
              t: &str,
              objs: &[(&str, &str)],
              mors: &[(&str, &str)],
              expected| CorpusFunctor {
        functor: FiniteFunctor::from_names(label, find(&cats, s), find(&cats, t), objs, mors)
            .expect("valid functor"),
        expected,
    };
    out.push(mk(
        "collapse2",
        "discrete2",
        "1",
        &[("X0", "X"), ("X1", "X")],
        &[],
        Some(false),
    ));
    out.push(mk(
        "chain2_to_1",
        "chain2",
        "1",
        &[("0", "X"), ("1", "X")],
        &[("a01", "id_X")],
        Some(false),
    ));
    out.push(mk(
        "idem_to_1",
        "idempotent",
        "1",
        &[("X", "X")],
        &[("e", "id_X")],
        Some(false),
    ));
    out.push(mk(
        "c2_to_1",
        "C2",
        "1",
        &[("X", "X")],
        &[("s", "id_X")],
        Some(false),
    ));
    out.push(mk(
        "kill_e",
        "pointed_idempotent",
        "Vect_F2[0, 1]",
        &[("X", "X1"), ("Z", "X0")],
        &[
            ("e", "X1>X1:0"),
            ("0", "X1>X1:0"),
            ("0_ZX", "X0>X1:0"),
            ("0_XZ", "X1>X0:0"),
        ],
        Some(false),
    ));
    out.push(mk(
        "e_to_1",
        "pointed_idempotent",
        "Vect_F2[0, 1]",
        &[("X", "X1"), ("Z", "X0")],
        &[
            ("e", "X1>X1:1"),
            ("0", "X1>X1:0"),
            ("0_ZX", "X0>X1:0"),
            ("0_XZ", "X1>X0:0"),
        ],
        Some(false),
    ));
    out.push(mk(
        "line_into_idempotent",
        "Vect_F2[0, 1]",
        "pointed_idempotent",
        &[("X1", "X"), ("X0", "Z")],
        &[("X1>X1:0", "0"), ("X0>X1:0", "0_ZX"), ("X1>X0:0", "0_XZ")],
        None,
    ));
    out.push(mk(
        "merge_lines",
        "Vect_F2[0, 1, 1]",
        "Vect_F2[0, 1]",
        &[("X0", "X0"), ("X1", "X1"), ("X2", "X1")],
        &[
            ("X0>X1:0", "X0>X1:0"),
            ("X0>X2:0", "X0>X1:0"),
            ("X1>X0:0", "X1>X0:0"),
            ("X2>X0:0", "X1>X0:0"),
            ("X1>X1:0", "X1>X1:0"),
            ("X1>X2:0", "X1>X1:0"),
            ("X1>X2:1", "X1>X1:1"),
            ("X2>X1:0", "X1>X1:0"),
            ("X2>X1:1", "X1>X1:1"),
            ("X2>X2:0", "X1>X1:0"),
        ],
        Some(true),
    ));
    out.push(mk(
        "chain_skip",
        "chain2",
        "chain3",
        &[("0", "0"), ("1", "2")],
        &[("a01", "a02")],
        Some(true),
    ));
    out.push(mk(
        "chain_squash",
        "chain3",
        "chain2",
        &[("0", "0"), ("1", "0"), ("2", "1")],
        &[("a01", "a00"), ("a02", "a01"), ("a12", "a01")],
        Some(false),
    ));
    out.push(mk(
        "arrow_to_1",
        "arrow",
        "1",
        &[("M", "X"), ("N", "X")],
        &[("f", "id_X")],
        Some(false),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_respects_size_caps() {
        for c in categories() {
            assert!(c.object_count() <= 4, "{}", c.label());
            for a in 0..c.object_count() {
                for b in 0..c.object_count() {
                    assert!(c.hom(a, b).len() <= 5, "{}", c.label());
                }
            }
        }
        assert_eq!(functors().len(), categories().len() + 11);
    }

    #[test]
    fn linear_identities() {
        let c = linear(3, &[0, 1]);
        assert_eq!(c.name(c.identity(1)), "X1>X1:1");
        assert_eq!(c.hom(1, 1).len(), 3);
    }
}
