use std::fmt::Write as _;
use std::path::Path;

use ringlab::category::{
    check_reflection, check_sf2_iff_sf3, compose_and_check, epimorphisms,
    find_separability_structure, is_initial, is_injective, is_projective, is_quotient_semisimple,
    is_subobject_semisimple, is_terminal, is_zero_object, monomorphisms, pointed_equivalences,
    quotient_table, simple_implies_semisimple, subobject_table, verify_structure, FiniteCategory,
    Property,
};
use ringlab::format::{AnyModule, CertificateFile, FormatError, Workspace};
use ringlab::module::{self, common_unit_action, is_s_unital_module, is_unitary, LeftModule};
use ringlab::ring::{is_left_s_unital_ring, is_locally_unital, is_unital, is_unitary_ring};
use ringlab::semisimple::{self, maschke_pipeline, ModuleSemisimplicity, RingSemisimplicity};
use ringlab::separability::{solve_separability, verify_certificate};
use ringlab::tensor::tensor_over;
use ringlab::{
    CategoryError, RingError, Scalar, ScalarField, SemisimpleError, StructureRing, Subspace,
};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Negative = 2,
    Hypothesis = 3,
    Input = 4,
    Budget = 5,
}

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub exit: Exit,
}

#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            exit: Exit::Input,
            message: message.into(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<CategoryError> for Failure {
    fn from(e: CategoryError) -> Self {
        let exit = match e {
            CategoryError::SearchBudgetExceeded(_) => Exit::Budget,
            _ => Exit::Input,
        };
        Failure {
            exit,
            message: e.to_string(),
        }
    }
}

impl From<SemisimpleError> for Failure {
    fn from(e: SemisimpleError) -> Self {
        let exit = match e {
            SemisimpleError::UnsupportedCharacteristic(..) => Exit::Budget,
            SemisimpleError::NotSUnital => Exit::Hypothesis,
            SemisimpleError::Module(_) => Exit::Input,
        };
        Failure {
            exit,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path, field: Option<ScalarField>) -> Result<Workspace, Failure> {
    let text = read(path)?;
    Workspace::from_json(&text, field)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn wire(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_wire).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                let _ = write!(s, "{c:<w$}  ", w = *w);
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

const PREDICATES: [&str; 5] = ["unital", "s-unital", "unitary", "firm", "locally-unital"];

fn ring_predicates(
    ws: &Workspace,
    label: &str,
    ring: &StructureRing,
) -> Result<[Option<bool>; 5], Failure> {
    let basis: Vec<Vec<Scalar>> = (0..ring.dim()).map(|i| ring.basis_element(i)).collect();
    let fam = ws.family(label)?;
    Ok([
        Some(is_unital(ring).is_some() || ring.dim() == 0),
        Some(is_left_s_unital_ring(ring)),
        Some(is_unitary_ring(ring)),
        Some(module::is_firm(&LeftModule::regular(ring))),
        Some(is_locally_unital(ring, fam, &basis).is_some()),
    ])
}

fn module_predicates(m: &LeftModule) -> [Option<bool>; 5] {
    [
        Some(common_unit_action(m).is_some()),
        Some(is_s_unital_module(m)),
        Some(is_unitary(m)),
        Some(module::is_firm(m)),
        None,
    ]
}

pub fn check(
    path: &Path,
    field: Option<ScalarField>,
    targets: &[String],
    asserts: &[String],
) -> Result<Outcome, Failure> {
    let ws = load(path, field)?;
    let targets: Vec<String> = if targets.is_empty() {
        ws.rings
            .keys()
            .chain(
                ws.modules
                    .iter()
                    .filter(|(_, m)| matches!(m, AnyModule::Left(_)))
                    .map(|(k, _)| k),
            )
            .cloned()
            .collect()
    } else {
        targets.to_vec()
    };
    let mut rows = Vec::new();
    let mut report = Vec::new();
    let mut all_hold = true;
    for t in &targets {
        let (kind, preds) = if let Some(r) = ws.rings.get(t) {
            ("ring", ring_predicates(&ws, t, r)?)
        } else {
            match ws.module(t)? {
                AnyModule::Left(m) => ("module", module_predicates(m)),
                AnyModule::Right(_) => {
                    return Err(Failure::input(format!("`{t}` is a right module")))
                }
            }
        };
        for a in asserts {
            let i = PREDICATES
                .iter()
                .position(|p| p == a)
                .expect("validated by clap");
            if preds[i] != Some(true) {
                all_hold = false;
            }
        }
        let cell = |p: Option<bool>| p.map_or("n/a", yes_no).to_string();
        let mut row = vec![t.clone(), kind.to_string()];
        row.extend(preds.iter().map(|p| cell(*p)));
        rows.push(row);
        let mut obj = serde_json::Map::new();
        obj.insert("target".into(), json!(t));
        obj.insert("kind".into(), json!(kind));
        for (name, p) in PREDICATES.iter().zip(preds) {
            obj.insert((*name).into(), json!(p));
        }
        report.push(Value::Object(obj));
    }
    let mut headers = vec!["target", "kind"];
    headers.extend(PREDICATES);
    let mut text = render_table(&headers, &rows);
    if !asserts.is_empty() {
        let _ = writeln!(
            text,
            "assertions {}: {}",
            asserts.join(", "),
            if all_hold { "hold" } else { "FAIL" }
        );
    }
    Ok(Outcome {
        text,
        json: json!({ "targets": report, "assertions": asserts, "assertions_hold": all_hold }),
        exit: if all_hold { Exit::Ok } else { Exit::Negative },
    })
}

pub enum MorphismPick {
    Label(String),
    Between(String, String),
}

pub fn separability_solve(
    path: &Path,
    field: Option<ScalarField>,
    pick: &MorphismPick,
    output: Option<&Path>,
) -> Result<Outcome, Failure> {
    let ws = load(path, field)?;
    let f = match pick {
        MorphismPick::Label(l) => ws.morphism(l)?.clone(),
        MorphismPick::Between(r, b) => match ws.morphism_between(r, b) {
            Some(f) => f.clone(),
            None => {
                return Err(Failure::input(format!(
                    "no unique morphism `{b}` -> `{r}` declared"
                )))
            }
        },
    };
    let desc = format!("{}/{}", f.target().label(), f.source().label());
    let solved = solve_separability(&f).map_err(|e| Failure::input(e.to_string()))?;
    match solved {
        Err(inf) => Ok(Outcome {
            text: format!(
                "{desc}: infeasible (constraint rank {}, augmented rank {})\n",
                inf.rank, inf.augmented_rank
            ),
            json: json!({ "extension": desc, "separable": false, "rank": inf.rank, "augmented_rank": inf.augmented_rank }),
            exit: Exit::Negative,
        }),
        Ok(cert) => {
            let file = CertificateFile::from_certificate(&cert);
            let body = file.to_json();
            let mut text = String::new();
            match output {
                Some(p) => {
                    write(p, &body)?;
                    let _ = writeln!(
                        text,
                        "{desc}: separable, certificate written to {}",
                        p.display()
                    );
                }
                None => text = body.clone(),
            }
            let cert_json: Value = serde_json::from_str(&body).expect("certificate is JSON");
            Ok(Outcome {
                text,
                json: json!({
                    "extension": desc,
                    "separable": true,
                    "tensor_dim": cert.tensor_basis.cols(),
                    "output": output.map(|p| p.display().to_string()),
                    "certificate": cert_json,
                }),
                exit: Exit::Ok,
            })
        }
    }
}

pub fn separability_verify(
    path: &Path,
    field: Option<ScalarField>,
    cert_path: &Path,
) -> Result<Outcome, Failure> {
    let ws = load(path, field)?;
    let file = CertificateFile::from_json(&read(cert_path)?)
        .map_err(|e| Failure::input(format!("{}: {e}", cert_path.display())))?;
    let negative = |constraint: String| Outcome {
        text: format!("certificate rejected: {constraint}\n"),
        json: json!({ "valid": false, "violation": constraint }),
        exit: Exit::Negative,
    };
    let cert = match file.resolve(&ws) {
        Ok(c) => c,
        Err(FormatError::Ring(_, e @ RingError::NotMultiplicative { .. })) => {
            return Ok(negative(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    Ok(match verify_certificate(&cert) {
        Ok(()) => Outcome {
            text: format!("certificate valid for {}/{}\n", file.ring, file.base),
            json: json!({ "valid": true, "ring": file.ring, "base": file.base }),
            exit: Exit::Ok,
        },
        Err(v) => negative(v.to_string()),
    })
}

fn subspace_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": s.basis_vectors().iter().map(|v| wire(v)).collect::<Vec<_>>() })
}

fn semisimplicity_json(r: &RingSemisimplicity) -> Value {
    let regular = match &r.regular {
        ModuleSemisimplicity::Semisimple(d) => json!({
            "semisimple": true,
            "summand_dims": d.dims(),
            "certified": d.certified,
        }),
        ModuleSemisimplicity::NotSemisimple(w) => json!({
            "semisimple": false,
            "witness": subspace_json(w),
        }),
    };
    json!({
        "regular": regular,
        "radical": r.radical.as_ref().map(|rad| json!({
            "dim": rad.radical.dim(),
            "method": format!("{:?}", rad.method),
        })),
        "radical_agrees": r.radical_agrees(),
    })
}

fn semisimplicity_text(r: &RingSemisimplicity) -> String {
    let mut s = String::new();
    match &r.regular {
        ModuleSemisimplicity::Semisimple(d) => {
            let _ = write!(
                s,
                "left semisimple: yes, summand dims {:?}{}",
                d.dims(),
                if d.certified {
                    ""
                } else {
                    " (simplicity of summands not certified)"
                }
            );
        }
        ModuleSemisimplicity::NotSemisimple(w) => {
            let _ = write!(
                s,
                "left semisimple: no, submodule of dim {} has no complement",
                w.dim()
            );
        }
    }
    if let Some(rad) = &r.radical {
        let _ = write!(s, "; radical dim {} ({:?})", rad.radical.dim(), rad.method);
    }
    s.push('\n');
    s
}

pub fn maschke(
    path: &Path,
    field: Option<ScalarField>,
    base: &str,
    group: &str,
    cert_path: Option<&Path>,
) -> Result<Outcome, Failure> {
    let ws = load(path, field)?;
    let b = ws.ring(base)?;
    let fam = ws.family(base)?;
    let g = ws.group(group)?;
    let report = maschke_pipeline(b, fam, g)?;
    let mut text = format!("{}[{}]\n", b.label(), g.label());
    for h in &report.hypotheses {
        let _ = writeln!(
            text,
            "  [{}] {}: {}",
            if h.passed { "pass" } else { "FAIL" },
            h.name,
            h.detail
        );
    }
    let mut cert_json = Value::Null;
    if let Some(cert) = &report.certificate {
        let body = CertificateFile::from_certificate(cert).to_json();
        match cert_path {
            Some(p) => {
                write(p, &body)?;
                let _ = writeln!(text, "certificate: {}", p.display());
                cert_json = json!(p.display().to_string());
            }
            None => {
                let _ = writeln!(
                    text,
                    "certificate: verified (tensor dim {})",
                    cert.tensor_basis.cols()
                );
                cert_json = json!("verified");
            }
        }
    }
    if let Some(c) = &report.conclusion {
        text += &semisimplicity_text(c);
    }
    let exit = if !report.hypotheses_hold() {
        Exit::Hypothesis
    } else if report.ring_semisimple() != Some(true) {
        Exit::Negative
    } else {
        Exit::Ok
    };
    let json = json!({
        "base": b.label(),
        "group": g.label(),
        "hypotheses": report.hypotheses.iter().map(|h| json!({
            "name": h.name, "passed": h.passed, "detail": h.detail,
        })).collect::<Vec<_>>(),
        "failed": report.failed().iter().map(|h| h.name).collect::<Vec<_>>(),
        "certificate": cert_json,
        "semisimplicity": report.conclusion.as_ref().map(semisimplicity_json),
        "consistent": report.consistent(),
    });
    Ok(Outcome { text, json, exit })
}

pub fn radical(path: &Path, field: Option<ScalarField>, label: &str) -> Result<Outcome, Failure> {
    let ws = load(path, field)?;
    let ring = ws.ring(label)?;
    let rad = semisimple::radical(ring)?;
    let mut text = format!(
        "radical of {label}: dim {} ({:?})\n",
        rad.radical.dim(),
        rad.method
    );
    for v in rad.radical.basis_vectors() {
        let _ = writeln!(text, "  [{}]", wire(&v).join(", "));
    }
    Ok(Outcome {
        text,
        json: json!({ "ring": label, "method": format!("{:?}", rad.method), "radical": subspace_json(&rad.radical) }),
        exit: if rad.is_zero() {
            Exit::Ok
        } else {
            Exit::Negative
        },
    })
}

pub fn tensor(
    path: &Path,
    field: Option<ScalarField>,
    right: &str,
    left: &str,
) -> Result<Outcome, Failure> {
    let ws = load(path, field)?;
    let x = match ws.module(right)? {
        AnyModule::Right(x) => x,
        AnyModule::Left(_) => {
            return Err(Failure::input(format!("`{right}` is not a right module")))
        }
    };
    let y = match ws.module(left)? {
        AnyModule::Left(y) => y,
        AnyModule::Right(_) => {
            return Err(Failure::input(format!("`{left}` is not a left module")))
        }
    };
    let t = tensor_over(x, y).map_err(|e| Failure::input(e.to_string()))?;
    let pairs = t.coset_pairs();
    let mut text = format!(
        "{right} (x) {left} over {}: dim {} (ambient {}, relations {})\n",
        t.base().label(),
        t.dim(),
        t.ambient_dim(),
        t.relations().dim()
    );
    for (i, j) in &pairs {
        let _ = writeln!(text, "  x{i} (x) y{j}");
    }
    Ok(Outcome {
        text,
        json: json!({
            "right": right,
            "left": left,
            "dim": t.dim(),
            "ambient_dim": t.ambient_dim(),
            "relations_dim": t.relations().dim(),
            "coset_basis": pairs,
        }),
        exit: Exit::Ok,
    })
}

fn names(c: &FiniteCategory, fs: &[usize]) -> Vec<String> {
    fs.iter().map(|f| c.name(*f).to_string()).collect()
}

fn category_report(c: &FiniteCategory) -> (String, Value) {
    let headers = [
        "object",
        "|Sub|",
        "|Quot|",
        "sub-simple",
        "sub-semisimple",
        "quot-simple",
        "quot-semisimple",
        "initial",
        "terminal",
        "zero",
        "projective",
        "injective",
    ];
    let mut rows = Vec::new();
    let mut objs = Vec::new();
    for o in 0..c.object_count() {
        let sub = subobject_table(c, o);
        let quot = quotient_table(c, o);
        let sub_ss = is_subobject_semisimple(c, o);
        let quot_ss = is_quotient_semisimple(c, o);
        let flags = [
            sub.len() == 2,
            sub_ss,
            quot.len() == 2,
            quot_ss,
            is_initial(c, o),
            is_terminal(c, o),
            is_zero_object(c, o),
            is_projective(c, o),
            is_injective(c, o),
        ];
        let mut row = vec![
            c.objects()[o].clone(),
            sub.len().to_string(),
            quot.len().to_string(),
        ];
        row.extend(flags.iter().map(|b| yes_no(*b).to_string()));
        rows.push(row);
        objs.push(json!({
            "object": c.objects()[o],
            "subobjects": sub.iter().map(|cl| names(c, cl)).collect::<Vec<_>>(),
            "quotients": quot.iter().map(|cl| names(c, cl)).collect::<Vec<_>>(),
            "subobject_simple": flags[0],
            "subobject_semisimple": flags[1],
            "quotient_simple": flags[2],
            "quotient_semisimple": flags[3],
            "initial": flags[4],
            "terminal": flags[5],
            "zero": flags[6],
            "projective": flags[7],
            "injective": flags[8],
        }));
    }
    let monos = names(c, &monomorphisms(c));
    let epis = names(c, &epimorphisms(c));
    let mut text = format!("category {}\n", c.label());
    text += &render_table(&headers, &rows);
    let _ = writeln!(text, "monomorphisms: {}", monos.join(", "));
    let _ = writeln!(text, "epimorphisms: {}", epis.join(", "));
    let pointed = pointed_equivalences(c);
    let agree = pointed
        .as_ref()
        .map(|rows| rows.iter().all(|r| r.iter().all(|b| *b == r[0])));
    let boundary = simple_implies_semisimple(c);
    match (&agree, &boundary) {
        (Some(a), Some(v)) => {
            let _ = writeln!(
                text,
                "pointed: zero-object conditions {}",
                if *a { "agree" } else { "DISAGREE" }
            );
            let _ = writeln!(
                text,
                "simple implies semisimple: {}",
                if v.is_empty() {
                    "holds".to_string()
                } else {
                    format!("fails at {}", v.join(", "))
                }
            );
        }
        _ => text += "not pointed\n",
    }
    let json = json!({
        "label": c.label(),
        "objects": objs,
        "monomorphisms": monos,
        "epimorphisms": epis,
        "pointed": pointed.is_some(),
        "zero_conditions": pointed,
        "zero_conditions_agree": agree,
        "simple_not_semisimple": boundary,
    });
    (text, json)
}

pub fn category_tables(path: &Path, only: Option<&str>) -> Result<Outcome, Failure> {
    let ws = load(path, None)?;
    let cats: Vec<_> = match only {
        Some(l) => vec![ws.category(l)?.clone()],
        None => ws.categories.values().cloned().collect(),
    };
    let mut text = String::new();
    let mut reports = Vec::new();
    for c in &cats {
        let (t, j) = category_report(c);
        text += &t;
        reports.push(j);
    }
    Ok(Outcome {
        text,
        json: json!({ "categories": reports }),
        exit: Exit::Ok,
    })
}

pub fn category_search(path: &Path, functor: &str, budget: u64) -> Result<Outcome, Failure> {
    let ws = load(path, None)?;
    let f = ws.functor(functor)?;
    match find_separability_structure(f, budget)? {
        None => Ok(Outcome {
            text: format!("{functor}: no separability structure\n"),
            json: json!({ "functor": functor, "separable": false }),
            exit: Exit::Negative,
        }),
        Some(s) => {
            let sf = verify_structure(&s);
            let equiv = check_sf2_iff_sf3(&s);
            let entries = s.entries();
            let mut text = format!(
                "{functor}: separable (SF1 {}, SF2 {}, SF3 {}, SF2 iff SF3 {})\n",
                yes_no(sf.sf1),
                yes_no(sf.sf2),
                yes_no(sf.sf3),
                yes_no(equiv)
            );
            for (m, n, d, r) in &entries {
                let _ = writeln!(text, "  R[{m},{n}]({d}) = {r}");
            }
            Ok(Outcome {
                text,
                json: json!({
                    "functor": functor,
                    "separable": true,
                    "sf1": sf.sf1, "sf2": sf.sf2, "sf3": sf.sf3,
                    "sf2_iff_sf3": equiv,
                    "structure": entries.iter().map(|(m, n, d, r)| json!([m, n, d, r])).collect::<Vec<_>>(),
                }),
                exit: Exit::Ok,
            })
        }
    }
}

pub fn category_reflect(
    path: &Path,
    functor: &str,
    props: &[Property],
    budget: u64,
) -> Result<Outcome, Failure> {
    let ws = load(path, None)?;
    let f = ws.functor(functor)?;
    let Some(s) = find_separability_structure(f, budget)? else {
        return Ok(Outcome {
            text: format!("{functor}: no separability structure, nothing to reflect\n"),
            json: json!({ "functor": functor, "separable": false }),
            exit: Exit::Negative,
        });
    };
    let props = if props.is_empty() {
        Property::ALL.to_vec()
    } else {
        props.to_vec()
    };
    let mut text = format!("{functor}: separable\n");
    let mut reports = Vec::new();
    let mut all = true;
    for p in props {
        let r = check_reflection(&s, p);
        let status = if !r.applicable() {
            format!(
                "not applicable ({} fails)",
                r.side_condition.map_or("", |(n, _)| n)
            )
        } else if r.holds() {
            format!("reflected ({} instances)", r.instances)
        } else {
            all = false;
            format!("VIOLATED at {}", r.violations.join(", "))
        };
        let _ = writeln!(text, "  {p}: {status}");
        reports.push(json!({
            "property": p.name(),
            "applicable": r.applicable(),
            "side_condition": r.side_condition.map(|(n, ok)| json!({ "name": n, "holds": ok })),
            "instances": r.instances,
            "violations": r.violations,
        }));
    }
    Ok(Outcome {
        text,
        json: json!({ "functor": functor, "separable": true, "reports": reports }),
        exit: if all { Exit::Ok } else { Exit::Negative },
    })
}

pub fn category_compose(
    path: &Path,
    first: &str,
    second: &str,
    budget: u64,
) -> Result<Outcome, Failure> {
    let ws = load(path, None)?;
    let f = ws.functor(first)?;
    let g = ws.functor(second)?;
    let r = compose_and_check(f, g, budget)?;
    let text = format!(
        "{first}: {}\n{second}: {}\n{second} o {first}: {}\nboth separable => composite separable: {}\ncomposite separable => {first} separable: {}\n",
        yes_no(r.f_separable),
        yes_no(r.g_separable),
        yes_no(r.composite_separable),
        yes_no(r.part_a()),
        yes_no(r.part_b()),
    );
    Ok(Outcome {
        text,
        json: json!({
            "first": first, "second": second,
            "first_separable": r.f_separable,
            "second_separable": r.g_separable,
            "composite_separable": r.composite_separable,
            "part_a": r.part_a(), "part_b": r.part_b(),
        }),
        exit: if r.part_a() && r.part_b() {
            Exit::Ok
        } else {
            Exit::Negative
        },
    })
}
