use crate::error::SeparabilityError;
use crate::linalg::{self, Mat};
use crate::module::{first_non_intertwined, LeftModule};
use crate::separability::SeparabilityCertificate;
use crate::tensor;

/// A firm module together with the blocks of `σ_{A,M} = μ_{A,M}^-1`:
/// `σ_{A,M}(m) = Σ_{i,j} blocks[i][j, ·] e_i ⊗ m_j`.
#[derive(Clone, Debug)]
pub struct FirmModule {
    pub module: LeftModule,
    blocks: Vec<Mat>,
}

impl FirmModule {
    pub fn new(module: &LeftModule) -> Result<Self, SeparabilityError> {
        let (t, mu) = tensor::mu_module(module)?;
        let m = module.dim();
        if t.dim() != m {
            return Err(SeparabilityError::NotFirm);
        }
        let inv = linalg::inverse(&mu).ok_or(SeparabilityError::NotFirm)?;
        let c = t.space().section() * &inv;
        let field = module.field();
        let blocks = (0..module.ring().dim())
            .map(|i| Mat::from_fn(field, m, m, |j, col| c.get(i * m + j, col).clone()))
            .collect();
        Ok(FirmModule {
            module: module.clone(),
            blocks,
        })
    }
}

/// `R(g) = μ_{A,N} ∘ (id ⊗ g) ∘ (id ⊗ μ_{A,M}) ∘ (σ ⊗ id_M) ∘ σ_{A,M}` for a
/// separable extension with certificate `σ`.
#[derive(Clone, Debug)]
pub struct RestrictionOperator {
    cert: SeparabilityCertificate,
    // σ(e_i) = Σ_{k,l} sigma_blocks[i][k, l] e_k ⊗ e_l
    sigma_blocks: Vec<Mat>,
}

impl RestrictionOperator {
    pub fn new(cert: &SeparabilityCertificate) -> Self {
        let n = cert.ring().dim();
        let field = cert.field();
        let sigma_blocks = (0..n)
            .map(|i| {
                let v = cert.ambient_image(i);
                Mat::from_vector(field, n, n, &v)
            })
            .collect();
        RestrictionOperator {
            cert: cert.clone(),
            sigma_blocks,
        }
    }

    pub fn certificate(&self) -> &SeparabilityCertificate {
        &self.cert
    }

    /// Whether `g: M -> N` commutes with the action of `f(B)`.
    pub fn check_b_linear(
        &self,
        m: &LeftModule,
        n: &LeftModule,
        g: &Mat,
    ) -> Result<(), SeparabilityError> {
        let f = &self.cert.morphism;
        for j in 0..f.source().dim() {
            let b = f.image_of_basis(j);
            if &(g * &m.action_of(&b)) != &(&n.action_of(&b) * g) {
                return Err(SeparabilityError::NotBLinear(j));
            }
        }
        Ok(())
    }

    pub fn apply(&self, m: &FirmModule, n: &FirmModule, g: &Mat) -> Result<Mat, SeparabilityError> {
        let (mm, nm) = (&m.module, &n.module);
        if mm.ring() != self.cert.ring() || nm.ring() != self.cert.ring() {
            return Err(SeparabilityError::Shape(
                "modules are not over the extension ring".into(),
            ));
        }
        if g.rows() != nm.dim() || g.cols() != mm.dim() {
            return Err(SeparabilityError::Shape(format!(
                "map is {}x{}, expected {}x{}",
                g.rows(),
                g.cols(),
                nm.dim(),
                mm.dim()
            )));
        }
        self.check_b_linear(mm, nm, g)?;
        let field = mm.field();
        let dim_a = self.cert.ring().dim();
        let g_after: Vec<Mat> = (0..dim_a).map(|l| g * mm.action(l)).collect();
        let mut out = Mat::zeros(field, nm.dim(), mm.dim());
        for (i, s) in self.sigma_blocks.iter().enumerate() {
            let mut t_i = Mat::zeros(field, nm.dim(), mm.dim());
            for k in 0..dim_a {
                let mut inner = Mat::zeros(field, nm.dim(), mm.dim());
                for (l, gl) in g_after.iter().enumerate() {
                    let c = s.get(k, l);
                    if !c.is_zero() {
                        inner = &inner + &gl.scale(c);
                    }
                }
                if !inner.is_zero() {
                    t_i = &t_i + &(nm.action(k) * &inner);
                }
            }
            if !t_i.is_zero() {
                out = &out + &(&t_i * &m.blocks[i]);
            }
        }
        if let Some(i) = first_non_intertwined(mm, nm, &out) {
            return Err(SeparabilityError::OutputNotLinear(i));
        }
        Ok(out)
    }
}

/// Result of checking one instance of a separable-functor axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfOutcome {
    Holds,
    Violated,
    /// The instance's hypothesis is not met, so it asserts nothing.
    NotApplicable,
}

/// One instance of SF1, SF2 or SF3 for restriction along `f`; maps of the
/// form `F(h)` are given by the matrix of `h`.
pub enum SfInstance<'a> {
    /// `R(F(f)) = f` for `A`-linear `f: M -> N`.
    Sf1 {
        m: &'a FirmModule,
        n: &'a FirmModule,
        f: &'a Mat,
    },
    /// `F(g) f' = g' F(f) ⟹ g R(f') = R(g') f` with `f: M -> M'`, `g: N -> N'`.
    Sf2 {
        m: &'a FirmModule,
        m2: &'a FirmModule,
        n: &'a FirmModule,
        n2: &'a FirmModule,
        f: &'a Mat,
        g: &'a Mat,
        f_prime: &'a Mat,
        g_prime: &'a Mat,
    },
    /// `R(v u) = R(v) R(u)` when `u` or `v` is `A`-linear.
    Sf3 {
        m: &'a FirmModule,
        n: &'a FirmModule,
        p: &'a FirmModule,
        u: &'a Mat,
        v: &'a Mat,
    },
}

fn is_a_linear(m: &FirmModule, n: &FirmModule, x: &Mat) -> bool {
    first_non_intertwined(&m.module, &n.module, x).is_none()
}

pub fn check_sf(
    op: &RestrictionOperator,
    inst: &SfInstance<'_>,
) -> Result<SfOutcome, SeparabilityError> {
    let verdict = |b: bool| {
        if b {
            SfOutcome::Holds
        } else {
            SfOutcome::Violated
        }
    };
    match inst {
        SfInstance::Sf1 { m, n, f } => {
            if !is_a_linear(m, n, f) {
                return Ok(SfOutcome::NotApplicable);
            }
            Ok(verdict(op.apply(m, n, f)? == **f))
        }
        SfInstance::Sf2 {
            m,
            m2,
            n,
            n2,
            f,
            g,
            f_prime,
            g_prime,
        } => {
            if !is_a_linear(m, m2, f) || !is_a_linear(n, n2, g) {
                return Ok(SfOutcome::NotApplicable);
            }
            if &(*g * *f_prime) != &(*g_prime * *f) {
                return Ok(SfOutcome::NotApplicable);
            }
            let lhs = *g * &op.apply(m, n, f_prime)?;
            let rhs = &op.apply(m2, n2, g_prime)? * *f;
            Ok(verdict(lhs == rhs))
        }
        SfInstance::Sf3 { m, n, p, u, v } => {
            if !is_a_linear(m, n, u) && !is_a_linear(n, p, v) {
                return Ok(SfOutcome::NotApplicable);
            }
            let lhs = op.apply(m, p, &(*v * *u))?;
            let rhs = &op.apply(n, p, v)? * &op.apply(m, n, u)?;
            Ok(verdict(lhs == rhs))
        }
    }
}
