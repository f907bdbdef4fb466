use crate::error::CategoryError;

use super::FiniteFunctor;

/// Default cap on candidate evaluations in the structure search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Functions `R_{M,N}: Hom(F M, F N) -> Hom(M, N)` for a functor `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityStructure {
    functor: FiniteFunctor,
    /// `tables[M * n + N][i]` is `R_{M,N}` of the `i`-th morphism of `Hom(F M, F N)`.
    tables: Vec<Vec<usize>>,
}

impl SeparabilityStructure {
    pub fn functor(&self) -> &FiniteFunctor {
        &self.functor
    }

    fn slot(&self, m: usize, n: usize) -> usize {
        m * self.functor.source().object_count() + n
    }

    pub fn table(&self, m: usize, n: usize) -> &[usize] {
        &self.tables[self.slot(m, n)]
    }

    /// `R_{M,N}(d)` for a target morphism `d: F M -> F N`.
    pub fn apply(&self, m: usize, n: usize, d: usize) -> usize {
        let (fm, fn_) = (self.functor.object(m), self.functor.object(n));
        let pos = self
            .functor
            .target()
            .hom(fm, fn_)
            .iter()
            .position(|x| *x == d)
            .expect("morphism in Hom(F M, F N)");
        self.table(m, n)[pos]
    }

    /// A copy with `R_{M,N}(d) = f`, for exercising the checks.
    pub fn with_value(&self, m: usize, n: usize, d: usize, f: usize) -> Self {
        let mut out = self.clone();
        let (fm, fn_) = (self.functor.object(m), self.functor.object(n));
        let pos = self
            .functor
            .target()
            .hom(fm, fn_)
            .iter()
            .position(|x| *x == d)
            .expect("in hom");
        let slot = self.slot(m, n);
        out.tables[slot][pos] = f;
        out
    }

    /// `(M, N, d, R(d))` by names, in table order.
    pub fn entries(&self) -> Vec<(String, String, String, String)> {
        let c = self.functor.source();
        let d = self.functor.target();
        let n = c.object_count();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let hom = d.hom(self.functor.object(a), self.functor.object(b));
                for (i, x) in hom.iter().enumerate() {
                    out.push((
                        c.objects()[a].clone(),
                        c.objects()[b].clone(),
                        d.name(*x).to_string(),
                        c.name(self.table(a, b)[i]).to_string(),
                    ));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Link {
    /// `R(x) = R(y) ∘ p`
    Right(usize),
    /// `R(x) = q ∘ R(y)`
    Left(usize),
}

struct Constraint {
    x: usize,
    y: usize,
    link: Link,
}

/// Backtracking over all `R` tables in lexicographic order (object pairs,
/// then morphisms in hom-set order, candidates in hom-set order). Values on
/// `F(f)` are forced by SF1 and pairs are pruned with SF3. Returns the first
/// table satisfying SF1 and SF2.
pub fn find_separability_structure(
    functor: &FiniteFunctor,
    budget: u64,
) -> Result<Option<SeparabilityStructure>, CategoryError> {
    let c = functor.source();
    let d = functor.target();
    let n = c.object_count();

    // variable ids
    let mut var_of = vec![Vec::new(); n * n];
    let mut domain: Vec<&[usize]> = Vec::new();
    let mut fixed: Vec<Option<usize>> = Vec::new();
    let mut slot_of = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let hom_d = d.hom(functor.object(a), functor.object(b));
            let hom_c = c.hom(a, b);
            if !hom_d.is_empty() && hom_c.is_empty() {
                return Ok(None);
            }
            for &t in hom_d {
                let pre: Vec<usize> = hom_c
                    .iter()
                    .copied()
                    .filter(|f| functor.map(*f) == t)
                    .collect();
                if pre.len() > 1 {
                    return Ok(None);
                }
                var_of[a * n + b].push(domain.len());
                domain.push(hom_c);
                fixed.push(pre.first().copied());
                slot_of.push(a * n + b);
            }
        }
    }
    let var = |a: usize, b: usize, t: usize| -> usize {
        let hom = d.hom(functor.object(a), functor.object(b));
        var_of[a * n + b][hom.iter().position(|x| *x == t).expect("in hom")]
    };

    let mut constraints = Vec::new();
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let (fu, fv, fw) = (functor.object(u), functor.object(v), functor.object(w));
                for &p in c.hom(u, v) {
                    for &t in d.hom(fv, fw) {
                        constraints.push(Constraint {
                            x: var(u, w, d.compose(t, functor.map(p))),
                            y: var(v, w, t),
                            link: Link::Right(p),
                        });
                    }
                }
                for &q in c.hom(v, w) {
                    for &t in d.hom(fu, fv) {
                        constraints.push(Constraint {
                            x: var(u, w, d.compose(functor.map(q), t)),
                            y: var(u, v, t),
                            link: Link::Left(q),
                        });
                    }
                }
            }
        }
    }
    let total = domain.len();
    let mut watch: Vec<Vec<usize>> = vec![Vec::new(); total];
    for (i, k) in constraints.iter().enumerate() {
        watch[k.x].push(i);
        if k.y != k.x {
            watch[k.y].push(i);
        }
    }
    let holds = |k: &Constraint, vals: &[usize]| -> bool {
        let (rx, ry) = (vals[k.x], vals[k.y]);
        match k.link {
            Link::Right(p) => rx == c.compose(ry, p),
            Link::Left(q) => rx == c.compose(q, ry),
        }
    };

    // fixed values first; a violation among them means no structure
    let mut vals = vec![usize::MAX; total];
    let mut assigned = vec![false; total];
    for (i, f) in fixed.iter().enumerate() {
        if let Some(f) = f {
            vals[i] = *f;
            assigned[i] = true;
        }
    }
    for k in &constraints {
        if assigned[k.x] && assigned[k.y] && !holds(k, &vals) {
            return Ok(None);
        }
    }

    let free: Vec<usize> = (0..total).filter(|i| !assigned[*i]).collect();
    let mut choice = vec![0usize; free.len()];
    let mut depth = 0usize;
    let mut spent = 0u64;
    loop {
        if depth == free.len() {
            break;
        }
        let v = free[depth];
        let dom = domain[v];
        let mut placed = false;
        while choice[depth] < dom.len() {
            spent += 1;
            if spent > budget {
                return Err(CategoryError::SearchBudgetExceeded(budget));
            }
            vals[v] = dom[choice[depth]];
            assigned[v] = true;
            let ok = watch[v]
                .iter()
                .map(|i| &constraints[*i])
                .all(|k| !(assigned[k.x] && assigned[k.y]) || holds(k, &vals));
            if ok {
                placed = true;
                break;
            }
            assigned[v] = false;
            choice[depth] += 1;
        }
        if placed {
            depth += 1;
        } else {
            choice[depth] = 0;
            if depth == 0 {
                return Ok(None);
            }
            depth -= 1;
            assigned[free[depth]] = false;
            choice[depth] += 1;
        }
    }

    let mut tables = vec![Vec::new(); n * n];
    for (i, val) in vals.into_iter().enumerate() {
        tables[slot_of[i]].push(val);
    }
    let s = SeparabilityStructure {
        functor: functor.clone(),
        tables,
    };
    debug_assert!(verify_structure(&s).is_separability());
    Ok(Some(s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SfReport {
    pub sf1: bool,
    pub sf2: bool,
    pub sf3: bool,
}

impl SfReport {
    pub fn is_separability(&self) -> bool {
        self.sf1 && self.sf2
    }
}

/// Checks SF1, SF2 and SF3 directly from their definitions.
pub fn verify_structure(s: &SeparabilityStructure) -> SfReport {
    let f = s.functor();
    let c = f.source();
    let d = f.target();
    let n = c.object_count();
    let r = |a: usize, b: usize, t: usize| s.apply(a, b, t);

    let sf1 = (0..c.morphism_count()).all(|x| {
        let m = c.morphism(x);
        r(m.src, m.dst, f.map(x)) == x
    });

    // F(g) f' = g' F(f)  =>  g R(f') = R(g') f
    let mut sf2 = true;
    'outer: for m in 0..n {
        for m2 in 0..n {
            for nn in 0..n {
                for n2 in 0..n {
                    for &ff in c.hom(m, m2) {
                        for &gg in c.hom(nn, n2) {
                            for &fp in d.hom(f.object(m), f.object(nn)) {
                                for &gp in d.hom(f.object(m2), f.object(n2)) {
                                    if d.compose(f.map(gg), fp) == d.compose(gp, f.map(ff))
                                        && c.compose(gg, r(m, nn, fp))
                                            != c.compose(r(m2, n2, gp), ff)
                                    {
                                        sf2 = false;
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // R(g f) = R(g) R(f) when f or g lies in the image of F
    let in_image = |a: usize, b: usize, t: usize| c.hom(a, b).iter().any(|x| f.map(*x) == t);
    let mut sf3 = true;
    'outer3: for m in 0..n {
        for nn in 0..n {
            for p in 0..n {
                for &u in d.hom(f.object(m), f.object(nn)) {
                    for &v in d.hom(f.object(nn), f.object(p)) {
                        if (in_image(m, nn, u) || in_image(nn, p, v))
                            && r(m, p, d.compose(v, u)) != c.compose(r(nn, p, v), r(m, nn, u))
                        {
                            sf3 = false;
                            break 'outer3;
                        }
                    }
                }
            }
        }
    }
    SfReport { sf1, sf2, sf3 }
}

/// Under SF1, SF2 holds exactly when SF3 does. Returns whether the
/// structure agrees with that; vacuously true when SF1 fails.
pub fn check_sf2_iff_sf3(s: &SeparabilityStructure) -> bool {
    let rep = verify_structure(s);
    !rep.sf1 || rep.sf2 == rep.sf3
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompositionReport {
    pub f_separable: bool,
    pub g_separable: bool,
    pub composite_separable: bool,
}

impl CompositionReport {
    /// `F` and `G` separable imply `G ∘ F` separable.
    pub fn part_a(&self) -> bool {
        !(self.f_separable && self.g_separable) || self.composite_separable
    }

    /// `G ∘ F` separable implies `F` separable.
    pub fn part_b(&self) -> bool {
        !self.composite_separable || self.f_separable
    }
}

/// Searches `F`, `G` and `G ∘ F`.
pub fn compose_and_check(
    f: &FiniteFunctor,
    g: &FiniteFunctor,
    budget: u64,
) -> Result<CompositionReport, CategoryError> {
    let h = g.compose(f)?;
    Ok(CompositionReport {
        f_separable: find_separability_structure(f, budget)?.is_some(),
        g_separable: find_separability_structure(g, budget)?.is_some(),
        composite_separable: find_separability_structure(&h, budget)?.is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::corpus;
    use std::sync::Arc;

    #[test]
    fn identity_structure_is_identity() {
        let c = Arc::new(corpus::chain(3));
        let id = FiniteFunctor::identity(&c);
        let s = find_separability_structure(&id, DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        for x in 0..c.morphism_count() {
            let m = c.morphism(x);
            assert_eq!(s.apply(m.src, m.dst, x), x);
        }
        assert!(check_sf2_iff_sf3(&s));
    }

    #[test]
    fn corpus_functors_match_expectations() {
        for cf in corpus::functors() {
            let found = find_separability_structure(&cf.functor, DEFAULT_BUDGET).unwrap();
            if let Some(e) = cf.expected {
                assert_eq!(found.is_some(), e, "{}", cf.functor.label());
            }
            if !cf.functor.is_faithful() {
                assert!(found.is_none());
            }
            if let Some(s) = found {
                let rep = verify_structure(&s);
                assert!(rep.is_separability() && rep.sf3, "{}", cf.functor.label());
            }
        }
    }

    #[test]
    fn corrupted_value_breaks_both_conditions() {
        let cf = corpus::functors()
            .into_iter()
            .find(|f| f.functor.label() == "line_into_idempotent")
            .unwrap();
        let s = find_separability_structure(&cf.functor, DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        let src = cf.functor.source();
        let tgt = cf.functor.target();
        let x = src.object_index("X1").unwrap();
        let e = tgt.morphism_index("e").unwrap();
        for &v in src.hom(x, x) {
            let t = s.with_value(x, x, e, v);
            assert!(check_sf2_iff_sf3(&t));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let cf = corpus::functors()
            .into_iter()
            .find(|f| f.functor.label() == "line_into_idempotent")
            .unwrap();
        assert_eq!(
            find_separability_structure(&cf.functor, 0),
            Err(CategoryError::SearchBudgetExceeded(0))
        );
    }

    #[test]
    fn composition_identities() {
        let c = Arc::new(corpus::single_arrow());
        let id = FiniteFunctor::identity(&c);
        let rep = compose_and_check(&id, &id, DEFAULT_BUDGET).unwrap();
        assert!(rep.f_separable && rep.g_separable && rep.composite_separable);
    }
}
