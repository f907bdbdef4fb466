use std::collections::BTreeMap;

use crate::error::RingError;
use crate::ring::StructureRing;
use crate::scalar::Scalar;

/// Largest family size for which covering sets are searched exhaustively.
const MAX_SEARCH_MEMBERS: usize = 20;

/// A declared family of idempotents of a ring, optionally with explicit
/// dominating idempotents ("sups") for index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentFamily {
    ring: StructureRing,
    idempotents: Vec<Vec<Scalar>>,
    sups: BTreeMap<Vec<usize>, Vec<Scalar>>,
}

impl IdempotentFamily {
    pub fn new(ring: &StructureRing, idempotents: Vec<Vec<Scalar>>) -> Result<Self, RingError> {
        Self::with_sups(ring, idempotents, BTreeMap::new())
    }

    /// Sups are keyed by strictly increasing index sets.
    pub fn with_sups(
        ring: &StructureRing,
        idempotents: Vec<Vec<Scalar>>,
        sups: BTreeMap<Vec<usize>, Vec<Scalar>>,
    ) -> Result<Self, RingError> {
        for (i, e) in idempotents.iter().enumerate() {
            if e.len() != ring.dim() {
                return Err(RingError::Shape(format!("idempotent {i} has wrong length")));
            }
            if ring.mul(e, e) != *e {
                return Err(RingError::NotIdempotent(i));
            }
        }
        for (set, e) in &sups {
            let sorted = set.windows(2).all(|w| w[0] < w[1]);
            if !sorted || set.iter().any(|i| *i >= idempotents.len()) || e.len() != ring.dim() {
                return Err(RingError::BadSup(set.clone()));
            }
            if ring.mul(e, e) != *e {
                return Err(RingError::BadSup(set.clone()));
            }
            for i in set {
                let m = &idempotents[*i];
                if ring.mul(e, m) != *m || ring.mul(m, e) != *m {
                    return Err(RingError::BadSup(set.clone()));
                }
            }
        }
        Ok(IdempotentFamily {
            ring: ring.clone(),
            idempotents,
            sups,
        })
    }

    pub fn empty(ring: &StructureRing) -> Self {
        IdempotentFamily {
            ring: ring.clone(),
            idempotents: Vec::new(),
            sups: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &StructureRing {
        &self.ring
    }

    pub fn members(&self) -> &[Vec<Scalar>] {
        &self.idempotents
    }

    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    pub fn sups(&self) -> &BTreeMap<Vec<usize>, Vec<Scalar>> {
        &self.sups
    }

    /// Idempotent attached to an index set: the member itself for
    /// singletons, the declared sup, or the sum when the members are
    /// pairwise orthogonal. `None` otherwise.
    pub fn idempotent_for(&self, set: &[usize]) -> Option<Vec<Scalar>> {
        match set {
            [] => Some(self.ring.zero_element()),
            [i] => Some(self.idempotents[*i].clone()),
            _ => {
                if let Some(e) = self.sups.get(set) {
                    return Some(e.clone());
                }
                for (a, i) in set.iter().enumerate() {
                    for j in &set[a + 1..] {
                        let (x, y) = (&self.idempotents[*i], &self.idempotents[*j]);
                        let zero = self.ring.zero_element();
                        if self.ring.mul(x, y) != zero || self.ring.mul(y, x) != zero {
                            return None;
                        }
                    }
                }
                let mut sum = self.ring.zero_element();
                for i in set {
                    sum = crate::linalg::mat::add_vec(&sum, &self.idempotents[*i]);
                }
                Some(sum)
            }
        }
    }

    /// The covering idempotent with the fewest family members (ties broken
    /// by lexicographic index order) satisfying `e x = x = x e` for all `x`.
    pub fn minimal_cover(&self, xs: &[Vec<Scalar>]) -> Option<(Vec<usize>, Vec<Scalar>)> {
        let n = self.idempotents.len().min(MAX_SEARCH_MEMBERS);
        for size in 0..=n {
            let mut found = None;
            for_each_combination(n, size, &mut |set| {
                if found.is_some() {
                    return;
                }
                if let Some(e) = self.idempotent_for(set) {
                    let covers = xs
                        .iter()
                        .all(|x| self.ring.mul(&e, x) == *x && self.ring.mul(x, &e) == *x);
                    if covers {
                        found = Some((set.to_vec(), e));
                    }
                }
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}
