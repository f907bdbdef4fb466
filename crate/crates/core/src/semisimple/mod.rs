//! Semisimplicity: the Jacobson radical, simplicity tests, complements,
//! decompositions into simple summands and the Maschke pipeline.

mod eigen;
mod radical;
mod simple;

pub use eigen::{charpoly_q, eigenvalues, rational_roots};
pub use radical::{is_nilpotent, radical, RadicalMethod, RadicalReport, BRUTE_FORCE_LIMIT};
pub use simple::{find_proper_submodule, is_simple, simplicity, Simplicity, ENUMERATION_LIMIT};

use crate::error::{ModuleError, SemisimpleError};
use crate::linalg::{self, LinearSystem, Mat, Subspace};
use crate::module::{intertwining_system, LeftModule};
use crate::ring::{
    is_left_s_unital_ring, is_locally_unital, FiniteGroup, IdempotentFamily, StructureRing,
};
use crate::scalar::Scalar;
use crate::separability::{MaschkeSetup, SeparabilityCertificate};

/// An `A`-stable complement of the submodule `n` in `m`, if one exists.
///
/// Solved as an `A`-linear projector `π` with `π(M) ⊆ N` and `π|_N = id`;
/// the complement is `ker π`.
pub fn find_complement(m: &LeftModule, n: &Subspace) -> Result<Option<Subspace>, SemisimpleError> {
    m.is_invariant(n)?;
    Ok(complement_unchecked(m, n))
}

fn complement_unchecked(m: &LeftModule, n: &Subspace) -> Option<Subspace> {
    let f = m.field();
    let d = m.dim();
    let pairs: Vec<(Mat, Mat)> = m
        .generator_actions()
        .into_iter()
        .map(|g| (g.clone(), g))
        .collect();
    let mut sys: LinearSystem = intertwining_system(f, &pairs, d, d);
    for w in n.annihilator().basis_vectors() {
        for c in 0..d {
            let terms = (0..d)
                .filter(|r| !w[*r].is_zero())
                .map(|r| (r * d + c, w[r].clone()))
                .collect();
            sys.add_equation(terms, f.zero());
        }
    }
    for v in n.basis_vectors() {
        for r in 0..d {
            let terms = (0..d)
                .filter(|c| !v[*c].is_zero())
                .map(|c| (r * d + c, v[c].clone()))
                .collect();
            sys.add_equation(terms, v[r].clone());
        }
    }
    let pi = sys.solve().ok()?;
    Some(linalg::kernel(&Mat::from_vector(f, d, d, &pi)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Simple submodules whose direct sum is the module, as subspaces of it.
    pub summands: Vec<Subspace>,
    /// False if some summand was declared simple by a non-exhaustive search.
    pub certified: bool,
}

impl Decomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.dim()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSemisimplicity {
    Semisimple(Decomposition),
    /// A submodule with no `A`-stable complement.
    NotSemisimple(Subspace),
}

impl ModuleSemisimplicity {
    pub fn is_semisimple(&self) -> bool {
        matches!(self, ModuleSemisimplicity::Semisimple(_))
    }
}

/// Splits `m` recursively: find a proper submodule, find a complement, and
/// recurse on both. A submodule without a complement inside some summand
/// has none in `m` either, so it is returned as the witness.
pub fn is_semisimple_module(m: &LeftModule) -> Result<ModuleSemisimplicity, SemisimpleError> {
    simple::require_s_unital(m)?;
    let f = m.field();
    let mut work = vec![Subspace::full(f, m.dim())];
    let mut summands = Vec::new();
    let mut certified = true;
    while let Some(w) = work.pop() {
        if w.is_zero() {
            continue;
        }
        let sub = m.submodule_unchecked(&w);
        let to_ambient = |u: &Subspace| {
            let vs: Vec<Vec<Scalar>> = u
                .basis_vectors()
                .iter()
                .map(|x| sub.inclusion.mul_vec(x))
                .collect();
            Subspace::span(f, m.dim(), &vs)
        };
        match simple::search(&sub.module) {
            simple::Simplicity::Zero => {}
            simple::Simplicity::Simple { certified: c } => {
                certified &= c;
                summands.push(w);
            }
            simple::Simplicity::Reducible(u) => match complement_unchecked(&sub.module, &u) {
                Some(c) => {
                    work.push(to_ambient(&c));
                    work.push(to_ambient(&u));
                }
                None => return Ok(ModuleSemisimplicity::NotSemisimple(to_ambient(&u))),
            },
        }
    }
    summands.sort_by_key(|s| s.pivot_cols().to_vec());
    Ok(ModuleSemisimplicity::Semisimple(Decomposition {
        summands,
        certified,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSemisimplicity {
    pub regular: ModuleSemisimplicity,
    /// `None` when the radical is out of reach over this field.
    pub radical: Option<RadicalReport>,
}

impl RingSemisimplicity {
    pub fn is_semisimple(&self) -> bool {
        self.regular.is_semisimple()
    }

    /// Whether the decomposition agrees with `J(A) = 0`, when both are known.
    pub fn radical_agrees(&self) -> Option<bool> {
        self.radical
            .as_ref()
            .map(|r| r.is_zero() == self.is_semisimple())
    }
}

/// Semisimplicity of `A` as a left module over itself.
pub fn is_left_semisimple_ring(a: &StructureRing) -> Result<RingSemisimplicity, SemisimpleError> {
    let regular = is_semisimple_module(&LeftModule::regular(a))?;
    let radical = match radical(a) {
        Ok(r) => Some(r),
        Err(SemisimpleError::UnsupportedCharacteristic(..)) => None,
        Err(e) => return Err(e),
    };
    Ok(RingSemisimplicity { regular, radical })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisEntry {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct MaschkeReport {
    pub base: StructureRing,
    pub group: FiniteGroup,
    pub ring: Option<StructureRing>,
    /// Hypotheses in the order they are checked.
    pub hypotheses: Vec<HypothesisEntry>,
    pub certificate: Option<SeparabilityCertificate>,
    pub conclusion: Option<RingSemisimplicity>,
}

impl MaschkeReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.passed)
    }

    pub fn failed(&self) -> Vec<&HypothesisEntry> {
        self.hypotheses.iter().filter(|h| !h.passed).collect()
    }

    /// `B[G]` is left semisimple, when that was decided.
    pub fn ring_semisimple(&self) -> Option<bool> {
        self.conclusion.as_ref().map(|c| c.is_semisimple())
    }

    /// The hypotheses imply semisimplicity; false only on a counterexample.
    pub fn consistent(&self) -> bool {
        !self.hypotheses_hold() || self.ring_semisimple() != Some(false)
    }
}

/// `n x = e` has a solution in `B`: over a field this needs `n ≠ 0` unless `e = 0`.
fn solvable_multiple(n: &Scalar, e: &[Scalar]) -> bool {
    !n.is_zero() || e.iter().all(|x| x.is_zero())
}

/// Checks the hypotheses for `B[G]` in order and then decides left
/// semisimplicity of `B[G]` independently. Failures become report entries.
pub fn maschke_pipeline(
    base: &StructureRing,
    family: &IdempotentFamily,
    group: &FiniteGroup,
) -> Result<MaschkeReport, SemisimpleError> {
    let f = base.field();
    let mut hyps = Vec::new();
    let basis: Vec<Vec<Scalar>> = (0..base.dim()).map(|i| base.basis_element(i)).collect();

    let lu = is_locally_unital(base, family, &basis).is_some();
    hyps.push(HypothesisEntry {
        name: "B locally unital",
        passed: lu,
        detail: if lu {
            "the idempotent family covers a basis of B".into()
        } else {
            "no family idempotent is a two-sided unit for a basis of B".into()
        },
    });

    let order = f.from_i64(group.order() as i64);
    let bad: Vec<usize> = family
        .members()
        .iter()
        .enumerate()
        .filter(|(_, e)| !solvable_multiple(&order, e))
        .map(|(i, _)| i)
        .collect();
    hyps.push(HypothesisEntry {
        name: "|G|B = B",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!(
                "{} x = e is solvable for every family idempotent",
                group.order()
            )
        } else {
            format!(
                "{} x = e has no solution for family idempotents {:?}",
                group.order(),
                bad
            )
        },
    });

    let base_ss = if is_left_s_unital_ring(base) {
        Some(is_left_semisimple_ring(base)?)
    } else {
        None
    };
    let (passed, detail) = match &base_ss {
        None => (false, "B is not left s-unital".to_string()),
        Some(r) => match &r.regular {
            ModuleSemisimplicity::Semisimple(d) => {
                (true, format!("summand dimensions {:?}", d.dims()))
            }
            ModuleSemisimplicity::NotSemisimple(w) => (
                false,
                format!("a {}-dimensional left ideal has no complement", w.dim()),
            ),
        },
    };
    hyps.push(HypothesisEntry {
        name: "B left semisimple",
        passed,
        detail,
    });

    let setup = MaschkeSetup::new(base, family, group).map_err(|e| match e {
        crate::error::SeparabilityError::Module(m) => SemisimpleError::Module(m),
        other => SemisimpleError::Module(ModuleError::DimensionMismatch(other.to_string())),
    })?;
    let a = setup.ring.clone();

    let unit = is_f_left_s_unital(&setup);
    hyps.push(HypothesisEntry {
        name: "B -> B[G] left s-unital",
        passed: unit,
        detail: if unit {
            "some f(b) acts as a left unit on a basis of B[G]".into()
        } else {
            "no f(b) acts as a left unit on a basis of B[G]".into()
        },
    });

    let (certificate, detail) = match setup.certificate() {
        Ok(c) => (Some(c), "Maschke section verified".to_string()),
        Err(e) => (None, e.to_string()),
    };
    hyps.push(HypothesisEntry {
        name: "B[G]/B separable",
        passed: certificate.is_some(),
        detail,
    });

    let conclusion = if is_left_s_unital_ring(&a) {
        Some(is_left_semisimple_ring(&a)?)
    } else {
        None
    };
    Ok(MaschkeReport {
        base: base.clone(),
        group: group.clone(),
        ring: Some(a),
        hypotheses: hyps,
        certificate,
        conclusion,
    })
}

fn is_f_left_s_unital(setup: &MaschkeSetup) -> bool {
    let a = &setup.ring;
    let fm = &setup.inclusion;
    let field = a.field();
    let mut sys = LinearSystem::new(field, fm.source().dim());
    let images: Vec<Vec<Scalar>> = (0..fm.source().dim())
        .map(|j| fm.image_of_basis(j))
        .collect();
    for x in 0..a.dim() {
        let ex = a.basis_element(x);
        let prods: Vec<Vec<Scalar>> = images.iter().map(|fb| a.mul(fb, &ex)).collect();
        for k in 0..a.dim() {
            let terms = prods
                .iter()
                .enumerate()
                .filter(|(_, p)| !p[k].is_zero())
                .map(|(j, p)| (j, p[k].clone()))
                .collect();
            sys.add_equation(terms, ex[k].clone());
        }
    }
    sys.solve().is_ok()
}
