use crate::error::SemisimpleError;
use crate::linalg::{self, Mat, Subspace};
use crate::module::{hom_basis, is_s_unital_module, spin_with, LeftModule};
use crate::ring::is_left_s_unital_ring;
use crate::scalar::{Scalar, ScalarField};

use super::eigen::eigenvalues;

/// Exhaustive enumerations over finite fields stop at this many vectors.
pub const ENUMERATION_LIMIT: u64 = 1 << 16;
/// Norton candidates examined before falling back to other methods.
const NORTON_CANDIDATES: usize = 64;
/// The radical of the enveloping algebra is only computed up to this dimension.
const ENVELOPE_DIM_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Zero,
    /// `certified` is false when the search found nothing but is not known
    /// to be exhaustive for this module.
    Simple {
        certified: bool,
    },
    Reducible(Subspace),
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple { .. })
    }
}

pub(crate) fn require_s_unital(m: &LeftModule) -> Result<(), SemisimpleError> {
    if is_s_unital_module(m) && is_left_s_unital_ring(m.ring()) {
        Ok(())
    } else {
        Err(SemisimpleError::NotSUnital)
    }
}

pub fn simplicity(m: &LeftModule) -> Result<Simplicity, SemisimpleError> {
    require_s_unital(m)?;
    Ok(search(m))
}

pub fn is_simple(m: &LeftModule) -> Result<bool, SemisimpleError> {
    Ok(simplicity(m)?.is_simple())
}

pub fn find_proper_submodule(m: &LeftModule) -> Result<Option<Subspace>, SemisimpleError> {
    Ok(match simplicity(m)? {
        Simplicity::Reducible(w) => Some(w),
        _ => None,
    })
}

struct Ctx<'a> {
    m: &'a LeftModule,
    f: ScalarField,
    n: usize,
    gens: Vec<Mat>,
    dual_gens: Vec<Mat>,
}

impl Ctx<'_> {
    fn proper(&self, w: &Subspace) -> bool {
        !w.is_zero() && !w.is_full()
    }

    fn spin(&self, vs: &[Vec<Scalar>]) -> Subspace {
        spin_with(self.f, self.n, &self.gens, vs)
    }

    /// A submodule whose annihilator is the dual spin of `vs`.
    fn dual_spin(&self, vs: &[Vec<Scalar>]) -> Option<Subspace> {
        let w = spin_with(self.f, self.n, &self.dual_gens, vs);
        self.proper(&w).then(|| linalg::kernel(w.basis()))
    }

    fn first_proper_spin(&self, vs: &[Vec<Scalar>]) -> Option<Subspace> {
        for v in vs {
            let w = self.spin(std::slice::from_ref(v));
            if self.proper(&w) {
                return Some(w);
            }
        }
        None
    }

    fn finite_count(&self, k: usize) -> Option<Vec<Vec<Scalar>>> {
        let elems = self.f.elements()?;
        let p = elems.len() as u64;
        let total = p
            .checked_pow(k as u32)
            .filter(|t| *t <= ENUMERATION_LIMIT)?;
        Some(
            (1..total as usize)
                .map(|mut idx| {
                    (0..k)
                        .map(|_| {
                            let e = elems[idx % p as usize].clone();
                            idx /= p as usize;
                            e
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Every nonzero vector of `space`, when that is a small enough set.
    fn all_nonzero(&self, space: &Subspace) -> Option<Vec<Vec<Scalar>>> {
        let coeffs = self.finite_count(space.dim())?;
        Some(coeffs.iter().map(|c| space.basis().vec_mul(c)).collect())
    }

    /// Norton's test for a singular `θ`. Returns the outcome and whether it
    /// is exhaustive.
    fn norton(&self, theta: &Mat) -> (Option<Subspace>, bool) {
        let ker = linalg::kernel(theta);
        let coker = linalg::kernel(&theta.transpose());
        if let (Some(kv), Some(cv)) = (self.all_nonzero(&ker), self.all_nonzero(&coker)) {
            if let Some(w) = self.first_proper_spin(&kv) {
                return (Some(w), true);
            }
            for v in &cv {
                if let Some(w) = self.dual_spin(std::slice::from_ref(v)) {
                    return (Some(w), true);
                }
            }
            return (None, true);
        }
        let kv = with_pair_sums(&ker.basis_vectors());
        if let Some(w) = self.first_proper_spin(&kv) {
            return (Some(w), true);
        }
        for v in with_pair_sums(&coker.basis_vectors()) {
            if let Some(w) = self.dual_spin(&[v]) {
                return (Some(w), true);
            }
        }
        (None, ker.dim() == 1)
    }

    /// Nonzero singular shifts `θ - λI` of the given matrices.
    fn singular_shifts<'b>(
        &'b self,
        mats: impl Iterator<Item = Mat> + 'b,
    ) -> impl Iterator<Item = Mat> + 'b {
        mats.flat_map(move |t| {
            let id = Mat::identity(self.f, self.n);
            eigenvalues(&t)
                .into_iter()
                .map(move |l| &t - &id.scale(&l))
                .filter(|s| !s.is_zero())
                .collect::<Vec<_>>()
        })
    }

    fn envelope(&self) -> Subspace {
        let vs: Vec<Vec<Scalar>> = self.m.actions().iter().map(|a| a.to_vector()).collect();
        Subspace::span(self.f, self.n * self.n, &vs)
    }
}

fn with_pair_sums(vs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut out = vs.to_vec();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            out.push(linalg::mat::add_vec(&vs[i], &vs[j]));
        }
    }
    out
}

/// Simplicity search without the s-unitality check. Submodules and
/// quotients of an s-unital module are s-unital, so recursive callers only
/// check once.
pub(crate) fn search(m: &LeftModule) -> Simplicity {
    let n = m.dim();
    if n == 0 {
        return Simplicity::Zero;
    }
    if n == 1 {
        return Simplicity::Simple { certified: true };
    }
    let f = m.field();
    let gens = m.generator_actions();
    let dual_gens = gens.iter().map(|g| g.transpose()).collect();
    let cx = Ctx {
        m,
        f,
        n,
        gens,
        dual_gens,
    };

    let units: Vec<Vec<Scalar>> = (0..n).map(|i| linalg::mat::unit_vec(f, n, i)).collect();
    if let Some(w) = cx.first_proper_spin(&with_pair_sums(&units)) {
        return Simplicity::Reducible(w);
    }

    let ring = m.ring();
    let mut xs: Vec<Vec<Scalar>> = (0..ring.dim()).map(|i| ring.basis_element(i)).collect();
    xs = with_pair_sums(&xs);
    let thetas = cx.singular_shifts(xs.iter().take(NORTON_CANDIDATES).map(|x| m.action_of(x)));
    for theta in thetas.take(NORTON_CANDIDATES) {
        match cx.norton(&theta) {
            (Some(w), _) => return Simplicity::Reducible(w),
            (None, true) => return Simplicity::Simple { certified: true },
            (None, false) => {}
        }
    }

    let env = cx.envelope();
    if f.is_finite() {
        if let Some(coeffs) = cx.finite_count(env.dim()) {
            for c in coeffs {
                let theta = Mat::from_vector(f, n, n, &env.basis().vec_mul(&c));
                if linalg::rank(&theta) == n {
                    continue;
                }
                match cx.norton(&theta) {
                    (Some(w), _) => return Simplicity::Reducible(w),
                    (None, true) => return Simplicity::Simple { certified: true },
                    (None, false) => {}
                }
            }
            // the envelope is a division algebra and `M` is cyclic on `e_0`
            return Simplicity::Simple { certified: true };
        }
    }

    let mut semisimple_envelope = false;
    if f == ScalarField::Rationals && env.dim() <= ENVELOPE_DIM_LIMIT {
        let mats: Vec<Mat> = env
            .basis_vectors()
            .iter()
            .map(|v| Mat::from_vector(f, n, n, v))
            .collect();
        let gram = Mat::from_fn(f, mats.len(), mats.len(), |i, j| {
            let p = &mats[i] * &mats[j];
            let mut t = f.zero();
            for k in 0..n {
                t += p.get(k, k);
            }
            t
        });
        let rad = linalg::kernel(&gram);
        if rad.is_zero() {
            semisimple_envelope = true;
        } else {
            let mut vs = Vec::new();
            for c in rad.basis_vectors() {
                let mut r = Mat::zeros(f, n, n);
                for (k, ck) in c.iter().enumerate() {
                    if !ck.is_zero() {
                        r = &r + &mats[k].scale(ck);
                    }
                }
                vs.extend(r.transpose().row_vectors());
            }
            let w = cx.spin(&vs);
            if cx.proper(&w) {
                return Simplicity::Reducible(w);
            }
        }
    }

    let Ok(ends) = hom_basis(m, m) else {
        return Simplicity::Simple { certified: false };
    };
    if ends.len() == 1 && semisimple_envelope {
        return Simplicity::Simple { certified: true };
    }
    let cands = with_pair_sums(&ends.iter().map(|e| e.to_vector()).collect::<Vec<_>>());
    let phis = cx.singular_shifts(cands.into_iter().map(|v| Mat::from_vector(f, n, n, &v)));
    for phi in phis.take(NORTON_CANDIDATES) {
        let k = linalg::kernel(&phi);
        if cx.proper(&k) {
            return Simplicity::Reducible(k);
        }
    }
    // With a semisimple envelope, `M` is simple iff `End(M)` is a division
    // algebra. `End(M) = Q[φ]` of degree at most 3 without rational roots is a field.
    if semisimple_envelope && ends.len() <= 3 {
        for phi in &ends {
            let mut powers = vec![Mat::identity(f, n)];
            for _ in 1..ends.len() {
                let next = powers.last().expect("nonempty") * phi;
                powers.push(next);
            }
            let vs: Vec<Vec<Scalar>> = powers.iter().map(|p| p.to_vector()).collect();
            if linalg::rank(&Mat::from_rows(f, n * n, vs).expect("rows")) == ends.len()
                && eigenvalues(phi).is_empty()
            {
                return Simplicity::Simple { certified: true };
            }
        }
    }
    Simplicity::Simple { certified: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::*;

    const Q: ScalarField = ScalarField::Rationals;

    #[test]
    fn regular_cyclic_group_ring_is_reducible() {
        let (a, _) = group_ring(&field_as_ring(Q), &FiniteGroup::cyclic(3));
        let m = LeftModule::regular(&a);
        let Simplicity::Reducible(w) = simplicity(&m).unwrap() else {
            panic!("expected a submodule");
        };
        assert!(m.is_invariant(&w).is_ok());
        assert!(w.dim() == 1 || w.dim() == 2);
    }

    #[test]
    fn two_dimensional_irreducible_of_s3() {
        let (a, _) = group_ring(&field_as_ring(Q), &FiniteGroup::symmetric(3));
        let m = LeftModule::regular(&a);
        // the standard representation sits inside the augmentation ideal
        let mut w = m.spin(&[linalg::mat::sub_vec(
            &a.basis_element(0),
            &a.basis_element(1),
        )]);
        while let Simplicity::Reducible(u) = search(&m.submodule_unchecked(&w).module) {
            let sub = m.submodule_unchecked(&w);
            let vs: Vec<Vec<Scalar>> = u
                .basis_vectors()
                .iter()
                .map(|x| sub.inclusion.mul_vec(x))
                .collect();
            w = Subspace::span(Q, m.dim(), &vs);
        }
        assert_eq!(w.dim(), 2);
        assert_eq!(
            search(&m.submodule_unchecked(&w).module),
            Simplicity::Simple { certified: true }
        );
    }

    #[test]
    fn refuses_non_s_unital() {
        let z = square_zero_ring(Q);
        let m = LeftModule::regular(&z);
        assert_eq!(simplicity(&m), Err(SemisimpleError::NotSUnital));
    }

    #[test]
    fn simple_matrix_module() {
        let (m2, _) = matrix_ring(Q, 2);
        let col = LeftModule::new(
            &m2,
            2,
            (0..4)
                .map(|k| {
                    let (i, j) = (k / 2, k % 2);
                    Mat::from_fn(
                        Q,
                        2,
                        2,
                        |r, c| if r == i && c == j { Q.one() } else { Q.zero() },
                    )
                })
                .collect(),
        )
        .unwrap();
        assert!(is_simple(&col).unwrap());
        assert!(find_proper_submodule(&LeftModule::regular(&m2))
            .unwrap()
            .is_some());
    }
}
