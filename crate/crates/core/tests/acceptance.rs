//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach stdout.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use rand::seq::SliceRandom;
use rand::Rng;
use ringlab::category::{
    check_sf2_iff_sf3, corpus, find_separability_structure, is_subobject_semisimple,
    pointed_equivalences, subobject_table, verify_structure, FiniteFunctor, DEFAULT_BUDGET,
};
use ringlab::format::CertificateFile;
use ringlab::linalg::Mat;
use ringlab::module::{self, hom_basis, is_s_unital_module, is_unitary, restrict, LeftModule};
use ringlab::ring::{
    field_as_ring, first_row_ring, group_ring, is_left_s_unital_ring, matrix_ring,
    square_zero_ring, truncated_sequence_ring, unit_family, upper_triangular_ring, FiniteGroup,
    IdempotentFamily, RingMorphism, StructureRing,
};
use ringlab::semisimple::{
    is_left_semisimple_ring, is_semisimple_module, is_simple, maschke_pipeline, radical,
    ModuleSemisimplicity,
};
use ringlab::separability::{
    check_sf, ind_separability, maschke_certificate, solve_separability, verify_certificate,
    verify_ind_splitting, FirmModule, RestrictionOperator, SfInstance, SfOutcome,
};
use ringlab::{Scalar, ScalarField};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bases(field: ScalarField) -> Vec<(StructureRing, IdempotentFamily)> {
    let k = field_as_ring(field);
    let fam = unit_family(&k, vec![field.one()]);
    vec![
        (k, fam),
        truncated_sequence_ring(field, 3),
        truncated_sequence_ring(field, 5),
    ]
}

fn groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::symmetric(3),
    ]
}

fn maschke_suite() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for (b, fam) in bases(Q) {
        for g in groups() {
            let tag = format!("{}[{}]", b.label(), g.label());
            let cert = maschke_certificate(&b, &fam, &g).map_err(|e| format!("{tag}: {e}"))?;
            verify_certificate(&cert).map_err(|v| format!("{tag}: {v}"))?;
            ensure(cert.ring().dim() == b.dim() * g.order(), || {
                format!("{tag}: wrong ring")
            })?;
            let report = maschke_pipeline(&b, &fam, &g).map_err(|e| format!("{tag}: {e}"))?;
            ensure(report.hypotheses_hold(), || {
                format!("{tag}: hypotheses {:?}", report.failed())
            })?;
            ensure(report.ring_semisimple() == Some(true), || {
                format!("{tag}: not semisimple")
            })?;
            let concl = report.conclusion.as_ref().unwrap();
            ensure(concl.radical_agrees() == Some(true), || {
                format!("{tag}: radical disagrees")
            })?;
            n += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:.2?}"))?;
    Ok(format!(
        "{n} extensions certified and semisimple in {t:.2?}"
    ))
}

fn characteristic_obstruction() -> Outcome {
    let mut details = Vec::new();
    for p in [2u64, 3] {
        let k = fp(p);
        let (a, f) = group_ring(&field_as_ring(k), &FiniteGroup::cyclic(p as usize));
        let tag = a.label().to_string();
        ensure(matches!(solve_separability(&f), Ok(Err(_))), || {
            format!("{tag}: solver did not report infeasible")
        })?;
        let rad = radical(&a).map_err(|e| e.to_string())?;
        ensure(!rad.is_zero(), || format!("{tag}: zero radical"))?;
        if p == 2 {
            ensure(rad.radical.dim() == 1, || {
                format!("{tag}: radical dim {}", rad.radical.dim())
            })?;
            let x = vec![k.one(), k.one()];
            ensure(a.mul(&x, &x).iter().all(Scalar::is_zero), || {
                "(1+g)^2 != 0".into()
            })?;
            ensure(rad.radical.member(&x), || "1+g not in radical".into())?;
        }
        let verdict = is_left_semisimple_ring(&a).map_err(|e| e.to_string())?;
        let ModuleSemisimplicity::NotSemisimple(w) = &verdict.regular else {
            return Err(format!("{tag}: reported semisimple"));
        };
        let lattice = FpLattice::new(&LeftModule::regular(&a));
        let w = lattice
            .contains(w)
            .ok_or_else(|| format!("{tag}: witness is not a submodule"))?;
        ensure(!lattice.has_complement(w), || {
            format!("{tag}: witness has a complement")
        })?;
        details.push(format!("{tag} radical dim {}", rad.radical.dim()));
    }
    Ok(details.join(", "))
}

fn unitality_equivalence() -> Outcome {
    let mut rng = rng(3);
    let k2 = fp(2);
    let rings: Vec<StructureRing> = vec![
        field_as_ring(Q),
        truncated_sequence_ring(Q, 3).0,
        matrix_ring(Q, 2).0,
        group_ring(&field_as_ring(Q), &FiniteGroup::cyclic(2)).0,
        upper_triangular_ring(Q, 2),
        first_row_ring(Q, 2),
        group_ring(&field_as_ring(k2), &FiniteGroup::cyclic(2)).0,
    ];
    let (mut yes, mut no) = (0, 0);
    for a in &rings {
        ensure(is_left_s_unital_ring(a), || {
            format!("{} is not s-unital", a.label())
        })?;
        let pieces = module_pieces(a, &mut rng, 4);
        for _ in 0..50 {
            let m = random_module(a, &pieces, 6, true, &mut rng);
            let u = is_unitary(&m);
            let s = is_s_unital_module(&m);
            let f = module::is_firm(&m);
            let columns: Vec<Vec<Scalar>> = m
                .actions()
                .iter()
                .flat_map(|x| x.transpose().row_vectors())
                .collect();
            let oracle_u = m.dim() == 0 || oracle_rank(&columns) == m.dim();
            ensure(u == s && s == f && u == oracle_u, || {
                format!(
                    "{} dim {}: unitary {u}, s-unital {s}, firm {f}, oracle {oracle_u}",
                    a.label(),
                    m.dim()
                )
            })?;
            if u {
                yes += 1;
            } else {
                no += 1;
            }
        }
    }
    let z = square_zero_ring(Q);
    let reg = LeftModule::regular(&z);
    ensure(!module::is_firm(&reg) && !is_unitary(&reg), || {
        "square-zero regular module".into()
    })?;
    Ok(format!("{} rings x 50 modules agree ({yes} unitary, {no} not); square-zero regular neither firm nor unitary", rings.len()))
}

fn random_combination(
    basis: &[Mat],
    rows: usize,
    cols: usize,
    field: ScalarField,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Mat {
    let mut out = Mat::zeros(field, rows, cols);
    for b in basis {
        out = &out + &b.scale(&random_scalar(field, rng));
    }
    out
}

fn restriction_operator() -> Outcome {
    let mut rng = rng(4);
    let (m2, _) = matrix_ring(Q, 2);
    let unit = RingMorphism::new(
        field_as_ring(Q),
        m2.clone(),
        Mat::from_i64(Q, &[&[1], &[0], &[0], &[1]]),
    )
    .map_err(|e| e.to_string())?;
    let (_, c2) = group_ring(&field_as_ring(Q), &FiniteGroup::cyclic(2));
    let mut details = Vec::new();
    for f in [unit, c2] {
        let a = f.target().clone();
        let cert = solve_separability(&f)
            .map_err(|e| e.to_string())?
            .map_err(|_| "infeasible".to_string())?;
        verify_certificate(&cert).map_err(|v| v.to_string())?;
        let op = RestrictionOperator::new(&cert);
        let pieces = module_pieces(&a, &mut rng, 3);
        let modules: Vec<FirmModule> = (0..6)
            .map(|_| FirmModule::new(&random_module(&a, &pieces, 4, false, &mut rng)).unwrap())
            .collect();
        let hom_a = |x: &FirmModule, y: &FirmModule, rng: &mut rand_chacha::ChaCha8Rng| {
            let basis = hom_basis(&x.module, &y.module).unwrap();
            random_combination(&basis, y.module.dim(), x.module.dim(), Q, rng)
        };
        let hom_b = |x: &FirmModule, y: &FirmModule, rng: &mut rand_chacha::ChaCha8Rng| {
            let basis = hom_basis(
                &restrict(&f, &x.module).unwrap(),
                &restrict(&f, &y.module).unwrap(),
            )
            .unwrap();
            random_combination(&basis, y.module.dim(), x.module.dim(), Q, rng)
        };
        let (mut sf1, mut case1, mut case2) = (0, 0, 0);
        while sf1 < 100 {
            let m = modules.choose(&mut rng).unwrap();
            let n = modules.choose(&mut rng).unwrap();
            let g = hom_a(m, n, &mut rng);
            let out = check_sf(&op, &SfInstance::Sf1 { m, n, f: &g }).map_err(|e| e.to_string())?;
            ensure(out == SfOutcome::Holds, || {
                format!("SF1 {out:?} on {}", a.label())
            })?;
            let b_map = hom_b(m, n, &mut rng);
            let r = op.apply(m, n, &b_map).map_err(|e| e.to_string())?;
            ensure(oracle_intertwines(&m.module, &n.module, &r), || {
                "R output not A-linear".into()
            })?;
            sf1 += 1;
        }
        while case1 < 100 || case2 < 100 {
            let m = modules.choose(&mut rng).unwrap();
            let n = modules.choose(&mut rng).unwrap();
            let p = modules.choose(&mut rng).unwrap();
            let first = rng.gen_bool(0.5);
            let (u, v) = if first {
                (hom_a(m, n, &mut rng), hom_b(n, p, &mut rng))
            } else {
                (hom_b(m, n, &mut rng), hom_a(n, p, &mut rng))
            };
            let out = check_sf(
                &op,
                &SfInstance::Sf3 {
                    m,
                    n,
                    p,
                    u: &u,
                    v: &v,
                },
            )
            .map_err(|e| e.to_string())?;
            ensure(out == SfOutcome::Holds, || {
                format!("SF3 {out:?} on {}", a.label())
            })?;
            if first {
                case1 += 1;
            } else {
                case2 += 1;
            }
        }
        details.push(format!("{}: SF1 {sf1}, SF3 {case1}+{case2}", a.label()));
    }
    Ok(details.join("; "))
}

fn bimodule_retraction_holds(f: &RingMorphism, s: &Mat) -> bool {
    let (b, a) = (f.source(), f.target());
    let sf = s * f.matrix();
    if !sf.is_identity() {
        return false;
    }
    (0..b.dim()).all(|j| {
        let fb = f.matrix().column(j);
        let eb = b.basis_element(j);
        (0..a.dim()).all(|x| {
            let ex = a.basis_element(x);
            let sx = s.mul_vec(&ex);
            s.mul_vec(&a.mul(&fb, &ex)) == b.mul(&eb, &sx)
                && s.mul_vec(&a.mul(&ex, &fb)) == b.mul(&sx, &eb)
        })
    })
}

fn ind_splitting() -> Outcome {
    let (m2, _) = matrix_ring(Q, 2);
    let (_, c2) = group_ring(&field_as_ring(Q), &FiniteGroup::cyclic(2));
    let (q2, _) = truncated_sequence_ring(Q, 2);
    let diag = RingMorphism::new(
        q2,
        m2.clone(),
        Mat::from_i64(Q, &[&[1, 0], &[0, 0], &[0, 0], &[0, 1]]),
    )
    .map_err(|e| e.to_string())?;
    for f in [&c2, &diag] {
        let s = ind_separability(f)
            .ok_or_else(|| format!("no splitting for {}", f.target().label()))?;
        ensure(
            verify_ind_splitting(f, &s) && bimodule_retraction_holds(f, &s),
            || "splitting fails".into(),
        )?;
    }
    // e21 = e22 e21 e11 forces s(e21) = 0, but then s(e12 e21) = e12 s(e21) = 0 != e11
    let t2 = upper_triangular_ring(Q, 2);
    let incl = RingMorphism::new(
        t2,
        m2,
        Mat::from_i64(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0], &[0, 0, 1]]),
    )
    .map_err(|e| e.to_string())?;
    ensure(ind_separability(&incl).is_none(), || {
        "T2 -> M2 split".into()
    })?;
    Ok("Q -> Q[C2] and diag Q^2 -> M2(Q) split; T2(Q) -> M2(Q) has no retraction".into())
}

fn semisimplicity_oracle() -> Outcome {
    let mut rng = rng(6);
    let k = fp(2);
    let rings: Vec<StructureRing> = vec![
        group_ring(&field_as_ring(k), &FiniteGroup::cyclic(2)).0,
        group_ring(&field_as_ring(k), &FiniteGroup::cyclic(3)).0,
        group_ring(&field_as_ring(k), &FiniteGroup::cyclic(4)).0,
        truncated_sequence_ring(k, 2).0,
        upper_triangular_ring(k, 2),
        matrix_ring(k, 2).0,
    ];
    let pieces: Vec<Vec<LeftModule>> = rings
        .iter()
        .map(|a| module_pieces(a, &mut rng, 6))
        .collect();
    let (mut ss, mut simple, mut total) = (0, 0, 0);
    while total < 240 {
        let i = rng.gen_range(0..rings.len());
        let m = random_module(&rings[i], &pieces[i], 4, false, &mut rng);
        let lattice = FpLattice::new(&m);
        let lib = is_semisimple_module(&m).map_err(|e| e.to_string())?;
        ensure(lib.is_semisimple() == lattice.is_semisimple(), || {
            format!(
                "{} dim {}: semisimple {} vs oracle {}",
                rings[i].label(),
                m.dim(),
                lib.is_semisimple(),
                lattice.is_semisimple()
            )
        })?;
        match &lib {
            ModuleSemisimplicity::NotSemisimple(w) => {
                let w = lattice.contains(w).ok_or("witness is not a submodule")?;
                ensure(!lattice.has_complement(w), || {
                    "witness has a complement".into()
                })?;
            }
            ModuleSemisimplicity::Semisimple(d) => {
                ensure(d.dims().iter().sum::<usize>() == m.dim(), || {
                    "summand dims".into()
                })?;
                ensure(d.certified, || "uncertified over F2".into())?;
                ss += 1;
            }
        }
        let s = is_simple(&m).map_err(|e| e.to_string())?;
        ensure(s == lattice.is_simple(), || {
            format!("{} dim {}: simple {s}", rings[i].label(), m.dim())
        })?;
        simple += s as usize;
        total += 1;
    }
    Ok(format!(
        "{total} modules agree with enumeration ({ss} semisimple, {simple} simple)"
    ))
}

fn category_engine() -> Outcome {
    let start = Instant::now();
    let cats = corpus::categories();
    let mut found = 0;
    for c in &cats {
        let id = FiniteFunctor::identity(c);
        let s = find_separability_structure(&id, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(s.is_some(), || {
            format!("identity on {} not separable", c.label())
        })?;
    }
    let functors = corpus::functors();
    for cf in &functors {
        let f = &cf.functor;
        let s = find_separability_structure(f, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        if !f.is_faithful() {
            ensure(s.is_none(), || {
                format!("non-faithful {} separable", f.label())
            })?;
        }
        if let Some(exp) = cf.expected {
            ensure(s.is_some() == exp, || {
                format!("{} expected {exp}", f.label())
            })?;
        }
        if let Some(s) = s {
            let rep = verify_structure(&s);
            ensure(rep.sf1 && rep.sf2 && rep.sf3, || {
                format!("{}: {rep:?}", f.label())
            })?;
            ensure(check_sf2_iff_sf3(&s), || {
                format!("{}: SF2 iff SF3", f.label())
            })?;
            found += 1;
        }
    }
    let mut pointed = 0;
    for c in &cats {
        if let Some(rows) = pointed_equivalences(c) {
            pointed += 1;
            for (o, row) in rows.iter().enumerate() {
                ensure(row.iter().all(|b| *b == row[0]), || {
                    format!("{} object {o}: {row:?}", c.label())
                })?;
            }
        }
    }
    let arrow = corpus::single_arrow();
    let m = arrow.object_index("M").unwrap();
    ensure(subobject_table(&arrow, m).len() == 2, || {
        "|Sub(M)| != 2".into()
    })?;
    ensure(!is_subobject_semisimple(&arrow, m), || {
        "f has a retraction".into()
    })?;
    let arrow = Arc::new(arrow);
    ensure(
        find_separability_structure(&FiniteFunctor::identity(&arrow), DEFAULT_BUDGET).is_ok(),
        || "arrow".into(),
    )?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:.2?}"))?;
    Ok(format!(
        "{} categories, {} functors ({found} separable), {pointed} pointed, |Sub(M)| = 2 in {t:.2?}",
        cats.len(),
        functors.len()
    ))
}

fn transcript() -> String {
    let mut out = String::new();
    for (b, fam) in bases(Q) {
        for g in groups() {
            let cert = maschke_certificate(&b, &fam, &g).unwrap();
            out += &CertificateFile::from_certificate(&cert).to_json();
            let report = maschke_pipeline(&b, &fam, &g).unwrap();
            out += &format!(
                "{:?}\n{:?}\n",
                report.hypotheses,
                report.conclusion.map(|c| c.regular)
            );
        }
    }
    let (m2, _) = matrix_ring(Q, 2);
    let unit = RingMorphism::new(
        field_as_ring(Q),
        m2,
        Mat::from_i64(Q, &[&[1], &[0], &[0], &[1]]),
    )
    .unwrap();
    out +=
        &CertificateFile::from_certificate(&solve_separability(&unit).unwrap().unwrap()).to_json();
    for cf in corpus::functors() {
        if let Some(s) = find_separability_structure(&cf.functor, DEFAULT_BUDGET).unwrap() {
            out += &format!("{}: {:?}\n", cf.functor.label(), s.entries());
        }
    }
    out
}

fn determinism() -> Outcome {
    let a = transcript();
    let b = transcript();
    ensure(a == b, || "transcripts differ".into())?;
    Ok(format!(
        "two runs produce identical {}-byte transcripts",
        a.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Maschke certificate suite", maschke_suite),
        ("characteristic obstruction", characteristic_obstruction),
        (
            "unitary / s-unital / firm equivalence",
            unitality_equivalence,
        ),
        ("restriction operator SF1 and SF3", restriction_operator),
        ("induction splitting", ind_splitting),
        ("semisimplicity oracle over F2", semisimplicity_oracle),
        ("category engine", category_engine),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
