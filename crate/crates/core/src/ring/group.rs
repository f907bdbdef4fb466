use crate::error::RingError;
use crate::linalg::Mat;
use crate::ring::{RingMorphism, StructureRing};

/// A finite group as a multiplication table on `0..order`, identity at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    label: String,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>, label: impl Into<String>) -> Result<Self, RingError> {
        let n = table.len();
        if n == 0 {
            return Err(RingError::NotAGroup("empty table".into()));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(RingError::NotAGroup(format!(
                    "row {g} has {} entries",
                    row.len()
                )));
            }
            if let Some(h) = row.iter().find(|h| **h >= n) {
                return Err(RingError::NotAGroup(format!("entry {h} out of range")));
            }
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return Err(RingError::NotAGroup(format!(
                    "index 0 is not an identity for {g}"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(RingError::NotAGroup(format!(
                            "associativity fails on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|h| table[g][*h] == 0 && table[*h][g] == 0) {
                Some(h) => inverses.push(h),
                None => return Err(RingError::NotAGroup(format!("{g} has no inverse"))),
            }
        }
        Ok(FiniteGroup {
            label: label.into(),
            table,
            inverses,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(table, format!("C{n}")).expect("cyclic table is a group")
    }

    /// The symmetric group on `k` points, elements as permutations in
    /// lexicographic order (identity first), product `(st)(i) = s(t(i))`.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&t.iter().map(|i| s[*i]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(table, format!("S{k}")).expect("permutation table is a group")
    }

    pub fn klein_four() -> Self {
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        Self::from_table(table, "V4").expect("xor table is a group")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Whether `map` (indexed by elements of `self`) is a homomorphism into `other`.
    pub fn is_homomorphism(&self, other: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order()
            && map.iter().all(|g| *g < other.order())
            && (0..self.order()).all(|a| {
                (0..self.order()).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b]))
            })
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..k {
        for rest in permutations(k - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

/// `B[G]` with basis `(g, b_i)` at index `g * dim(B) + i`, together with the
/// inclusion `b -> (b, identity)`.
pub fn group_ring(b: &StructureRing, g: &FiniteGroup) -> (StructureRing, RingMorphism) {
    let d = b.dim();
    let label = format!("{}[{}]", b.label(), g.label());
    let ring = StructureRing::from_products(b.field(), d * g.order(), label, |x, y| {
        let (gx, i) = (x / d, x % d);
        let (gy, j) = (y / d, y % d);
        let h = g.mul(gx, gy);
        b.product(i, j)
            .iter()
            .map(|(k, c)| (h * d + k, c.clone()))
            .collect()
    })
    .expect("group ring of an associative ring is associative");
    let f = b.field();
    let incl = Mat::from_fn(
        f,
        ring.dim(),
        d,
        |r, c| {
            if r == c {
                f.one()
            } else {
                f.zero()
            }
        },
    );
    let morphism = RingMorphism {
        source: b.clone(),
        target: ring.clone(),
        matrix: incl,
    };
    (ring, morphism)
}

/// The map `B[H] -> B[G]` induced by a group homomorphism `H -> G`.
pub fn group_ring_map(
    b: &StructureRing,
    h: &FiniteGroup,
    bh: &StructureRing,
    g: &FiniteGroup,
    bg: &StructureRing,
    map: &[usize],
) -> Result<RingMorphism, RingError> {
    if !h.is_homomorphism(g, map) {
        return Err(RingError::NotAGroup(format!(
            "map {map:?} is not a homomorphism {} -> {}",
            h.label(),
            g.label()
        )));
    }
    let d = b.dim();
    let f = b.field();
    let m = Mat::from_fn(f, bg.dim(), bh.dim(), |r, c| {
        let (hc, i) = (c / d, c % d);
        if r == map[hc] * d + i {
            f.one()
        } else {
            f.zero()
        }
    });
    RingMorphism::new(bh.clone(), bg.clone(), m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_of_order_six() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        let abelian = (0..6).all(|a| (0..6).all(|b| s3.mul(a, b) == s3.mul(b, a)));
        assert!(!abelian);
        for g in 0..6 {
            assert_eq!(s3.mul(g, s3.inverse(g)), 0);
        }
    }

    #[test]
    fn bad_tables_are_rejected() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], "x").is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], "x").is_err());
    }
}
