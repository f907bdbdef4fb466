use crate::error::SeparabilityError;
use crate::linalg::{LinearSystem, Mat};
use crate::ring::{group_ring, FiniteGroup, IdempotentFamily, RingMorphism, StructureRing};
use crate::scalar::Scalar;
use crate::separability::{verify_certificate, SeparabilityCertificate};
use crate::tensor::{self, ExtensionTensor};

/// `A = B[G]` with its inclusion, `A ⊗_B A`, and the idempotent family of
/// `B` used to pick local units.
#[derive(Clone, Debug)]
pub struct MaschkeSetup {
    pub base: StructureRing,
    pub family: IdempotentFamily,
    pub group: FiniteGroup,
    pub ring: StructureRing,
    pub inclusion: RingMorphism,
    pub extension: ExtensionTensor,
}

impl MaschkeSetup {
    pub fn new(
        base: &StructureRing,
        family: &IdempotentFamily,
        group: &FiniteGroup,
    ) -> Result<Self, SeparabilityError> {
        let (ring, inclusion) = group_ring(base, group);
        let extension = tensor::mu_ring_extension(&inclusion)?;
        Ok(MaschkeSetup {
            base: base.clone(),
            family: family.clone(),
            group: group.clone(),
            ring,
            inclusion,
            extension,
        })
    }

    /// The `B`-coefficients `b_g` of `a = Σ_g (b_g, g)`.
    pub fn coefficients(&self, a: &[Scalar]) -> Vec<Vec<Scalar>> {
        let d = self.base.dim();
        (0..self.group.order())
            .map(|g| a[g * d..(g + 1) * d].to_vec())
            .collect()
    }

    /// The minimal covering idempotent of the family for the coefficients of `a`.
    pub fn local_unit(&self, a: &[Scalar]) -> Result<Vec<Scalar>, SeparabilityError> {
        self.family
            .minimal_cover(&self.coefficients(a))
            .map(|(_, e)| e)
            .ok_or(SeparabilityError::NoLocalUnit)
    }

    /// `(n e)^-1` inside the corner ring `eBe`, `n = |G|`.
    pub fn corner_inverse(&self, e: &[Scalar]) -> Result<Vec<Scalar>, SeparabilityError> {
        let b = &self.base;
        let field = b.field();
        let d = b.dim();
        let ne: Vec<Scalar> = e
            .iter()
            .map(|x| x * &field.from_i64(self.group.order() as i64))
            .collect();
        let mut sys = LinearSystem::new(field, d);
        // (ne) u = e, u (ne) = e, e u = u, u e = u; each linear in u
        let sides: [(&[Scalar], bool, bool); 4] = [
            (&ne, true, false),
            (&ne, false, false),
            (e, true, true),
            (e, false, true),
        ];
        for (x, left, homogeneous) in sides {
            let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
            for i in 0..d {
                let ei = b.basis_element(i);
                let p = if left { b.mul(x, &ei) } else { b.mul(&ei, x) };
                for (k, v) in p.into_iter().enumerate() {
                    if !v.is_zero() {
                        rows[k].push((i, v));
                    }
                }
                if homogeneous {
                    rows[i].push((i, -field.one()));
                }
            }
            for (k, row) in rows.into_iter().enumerate() {
                let rhs = if homogeneous {
                    field.zero()
                } else {
                    e[k].clone()
                };
                sys.add_equation(row, rhs);
            }
        }
        sys.solve().map_err(|_| SeparabilityError::NotInvertible)
    }

    /// `a · g`: translate every group component of `a` on the right by `g`.
    pub fn translate(&self, a: &[Scalar], g: usize) -> Vec<Scalar> {
        let d = self.base.dim();
        let mut out = vec![self.ring.field().zero(); a.len()];
        for (idx, c) in a.iter().enumerate() {
            if !c.is_zero() {
                let (h, i) = (idx / d, idx % d);
                out[self.group.mul(h, g) * d + i] = c.clone();
            }
        }
        out
    }

    /// `(b, g)` as an element of `A`.
    pub fn embed(&self, b: &[Scalar], g: usize) -> Vec<Scalar> {
        let d = self.base.dim();
        let mut out = self.ring.zero_element();
        out[g * d..(g + 1) * d].clone_from_slice(b);
        out
    }

    /// `Σ_g (a g) ⊗ ((ne)^-1, g^-1)` in coset coordinates, using the given
    /// idempotent `e` (which must absorb the coefficients of `a`).
    pub fn sigma_with(&self, a: &[Scalar], e: &[Scalar]) -> Result<Vec<Scalar>, SeparabilityError> {
        let b = &self.base;
        let covers = self
            .coefficients(a)
            .iter()
            .all(|x| b.mul(e, x) == *x && b.mul(x, e) == *x);
        if !covers {
            return Err(SeparabilityError::NoLocalUnit);
        }
        let u = self.corner_inverse(e)?;
        let t = &self.extension.tensor;
        let mut out = vec![self.ring.field().zero(); t.dim()];
        for g in 0..self.group.order() {
            let left = self.translate(a, g);
            let right = self.embed(&u, self.group.inverse(g));
            for (o, v) in out.iter_mut().zip(t.pure(&left, &right)) {
                *o += &v;
            }
        }
        Ok(out)
    }

    pub fn sigma(&self, a: &[Scalar]) -> Result<Vec<Scalar>, SeparabilityError> {
        let e = self.local_unit(a)?;
        self.sigma_with(a, &e)
    }

    /// `σ` on the basis of `A`, checked by the independent verifier.
    pub fn certificate(&self) -> Result<SeparabilityCertificate, SeparabilityError> {
        let field = self.ring.field();
        let t = self.extension.tensor.dim();
        let mut cols = Vec::with_capacity(self.ring.dim());
        for k in 0..self.ring.dim() {
            cols.push(self.sigma(&self.ring.basis_element(k))?);
        }
        let cert = SeparabilityCertificate {
            morphism: self.inclusion.clone(),
            tensor_basis: self.extension.tensor.space().section().clone(),
            sigma: Mat::from_columns(field, t, &cols),
        };
        verify_certificate(&cert)
            .map_err(|v| SeparabilityError::CertificateRejected(v.to_string()))?;
        Ok(cert)
    }
}

/// The Maschke splitting of `B[G] / B` as a verified certificate.
pub fn maschke_certificate(
    base: &StructureRing,
    family: &IdempotentFamily,
    group: &FiniteGroup,
) -> Result<SeparabilityCertificate, SeparabilityError> {
    MaschkeSetup::new(base, family, group)?.certificate()
}
