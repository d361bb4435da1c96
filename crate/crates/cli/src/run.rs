use std::fmt::Write as _;
use std::path::Path;

use leavitt_wreath::action::{associativity_probe, CorruptedBiset, MatrixUnitBiset, PointedBiset};
use leavitt_wreath::affinization::prop3::{prop3_check, AffineGenerators};
use leavitt_wreath::affinization::radical::radical_check;
use leavitt_wreath::affinization::{relations_check, Affinization, LazyAlgebra};
use leavitt_wreath::coeff::{A0Algebra, CoefficientAlgebra, DiagonalAlgebra, LocalRationalAlgebra, PolyAlgebra, ScalarAlgebra};
use leavitt_wreath::cohn;
use leavitt_wreath::expr::{eval_str, CohnRing, CoeffRing, NamedElements, WreathRing};
use leavitt_wreath::graph::{Graph, VertexSubset};
use leavitt_wreath::leavitt::Leavitt;
use leavitt_wreath::report::Report;
use leavitt_wreath::scalar::Field;
use leavitt_wreath::wreath::lemmas::{action_closure_check, ck_annihilation_check, j_reduction_check};
use leavitt_wreath::wreath::prop1::prop1_check;
use leavitt_wreath::wreath::prop2::{balloon_iso_check, prop2_verify};
use leavitt_wreath::wreath::samples::{loop_wreath, three_vertex_w, toeplitz_w};
use leavitt_wreath::wreath::{ExtendedGraph, Extension};
use leavitt_wreath::Error;

use crate::args::*;

/// Text to print and whether the checked property holds.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn value(text: String) -> Self {
        Outcome { text, passed: true }
    }

    fn report(r: &Report) -> Self {
        Outcome {
            text: r.to_string(),
            passed: r.passed(),
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, unreadable or malformed input: exit status 2.
    Usage(String),
    /// A precondition of the checked statement fails: exit status 1.
    Property(String),
}

type CliResult<T> = Result<T, Failure>;

fn core_error(context: &str, e: Error) -> Failure {
    let msg = if context.is_empty() { e.to_string() } else { format!("{context}: {e}") };
    match e {
        Error::NotBalloon(_) | Error::NotHereditarySaturated => Failure::Property(msg),
        _ => Failure::Usage(msg),
    }
}

fn lift<T>(r: leavitt_wreath::Result<T>) -> CliResult<T> {
    r.map_err(|e| core_error("", e))
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> CliResult<Graph> {
    Graph::parse(&read(path)?).map_err(|e| core_error(&path.display().to_string(), e))
}

fn load_extension(path: &Path) -> CliResult<Extension> {
    Extension::parse(&read(path)?).map_err(|e| core_error(&path.display().to_string(), e))
}

fn parse_set(g: &Graph, text: &str) -> CliResult<VertexSubset> {
    let names: Vec<&str> = text.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
    lift(g.subset(&names))
}

fn format_set(g: &Graph, w: &VertexSubset) -> String {
    format!("{{{}}}", g.subset_names(w).join(", "))
}

fn expression<T>(text: &str, r: leavitt_wreath::Result<T>) -> CliResult<T> {
    r.map_err(|e| Failure::Usage(format!("expression `{text}`: {e}")))
}

fn at_least_two(exprs: &[String]) -> CliResult<()> {
    if exprs.len() < 2 {
        return Err(Failure::Usage("`mul` needs at least two `--expr` factors".into()));
    }
    Ok(())
}

fn prefixed(name: &str, r: Report) -> Report {
    let mut out = Report::new();
    for c in r.checks {
        out.push(format!("[{name}] {}", c.name), c.passed, c.detail);
    }
    out
}

pub fn execute<F: Field>(cmd: &Command, seed: u64) -> CliResult<Outcome> {
    match cmd {
        Command::Graph(GraphCmd::Check { file }) => graph_check(&load_graph(file)?),
        Command::Hsat(c) => hsat(c),
        Command::Cohn(c) => cohn_cmd::<F>(c),
        Command::Lpa(c) => lpa::<F>(c),
        Command::Wreath(c) => wreath::<F>(c),
        Command::Lemma(LemmaCmd::Probe {
            probe,
            graph,
            ext,
            samples,
            slen,
            xlen,
        }) => {
            let opts = ProbeOptions {
                probe: *probe,
                samples: *samples,
                slen: *slen,
                xlen: *xlen,
                seed,
            };
            lemma::<F>(&opts, graph.as_deref(), ext.as_deref())
        }
        Command::Prop1(Prop1Cmd::Check {
            index_len,
            entry_len,
            max_word,
        }) => {
            let eg = loop_wreath::<F, _>(PolyAlgebra, "1");
            let x = CoefficientAlgebra::<F>::generator(&PolyAlgebra, 0).expect("x");
            Ok(Outcome::report(&prop1_check(&eg, &[x], *index_len, *entry_len, *max_word)))
        }
        Command::Prop2(Prop2Cmd::Verify { set, maxlen, samples }) => {
            let g = load_graph(&set.file)?;
            let w = parse_set(&g, &set.set)?;
            Ok(Outcome::report(&lift(prop2_verify::<F>(&g, &w, *maxlen, *samples, seed))?))
        }
        Command::Balloon(BalloonCmd::Check {
            file,
            vertex,
            maxlen,
            samples,
        }) => {
            let g = load_graph(file)?;
            Ok(Outcome::report(&lift(balloon_iso_check::<F>(&g, vertex, *maxlen, *samples, seed))?))
        }
        Command::Affinize(a) => affinize::<F>(a, seed),
    }
}

fn graph_check(g: &Graph) -> CliResult<Outcome> {
    let mut out = String::new();
    let names = |vs: Vec<String>| if vs.is_empty() { "none".to_string() } else { vs.join(", ") };
    let vertices: Vec<String> = g.vertices().map(|v| g.vertex_name(v).to_string()).collect();
    let edges: Vec<String> = g
        .edges()
        .map(|e| format!("{}: {} -> {}", g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e))))
        .collect();
    let sinks: Vec<String> = g.vertices().filter(|&v| g.is_sink(v)).map(|v| g.vertex_name(v).to_string()).collect();
    writeln!(out, "vertices: {} ({})", g.vertex_count(), names(vertices)).unwrap();
    writeln!(out, "edges: {} ({})", g.edge_count(), names(edges)).unwrap();
    write!(out, "sinks: {}", names(sinks)).unwrap();
    Ok(Outcome::value(out))
}

fn hsat(c: &HsatCmd) -> CliResult<Outcome> {
    match c {
        HsatCmd::Check(a) => {
            let g = load_graph(&a.file)?;
            let w = parse_set(&g, &a.set)?;
            let (h, s) = lift(g.hereditary_saturated_check(&w))?;
            let mut r = Report::new();
            r.push("hereditary", h, format_set(&g, &w));
            r.push("saturated", s, "");
            Ok(Outcome::report(&r))
        }
        HsatCmd::Closure(a) => {
            let g = load_graph(&a.file)?;
            let w = parse_set(&g, &a.set)?;
            Ok(Outcome::value(format_set(&g, &lift(g.hsat_closure(&w))?)))
        }
        HsatCmd::Enumerate { file, bound } => {
            let g = load_graph(file)?;
            let all = lift(g.enumerate_hsat(*bound))?;
            let lines: Vec<String> = all.iter().map(|w| format_set(&g, w)).collect();
            Ok(Outcome::value(lines.join("\n")))
        }
    }
}

fn cohn_cmd<F: Field>(c: &AlgebraCmd) -> CliResult<Outcome> {
    let (file, exprs) = match c {
        AlgebraCmd::Nf(a) => (&a.file, std::slice::from_ref(&a.expr)),
        AlgebraCmd::Mul(a) => {
            at_least_two(&a.exprs)?;
            (&a.file, a.exprs.as_slice())
        }
    };
    let g = load_graph(file)?;
    let ring = CohnRing::<F>::new(&g);
    let mut acc: Option<cohn::CohnElement<F>> = None;
    for text in exprs {
        let x = expression(text, eval_str(&ring, text))?;
        acc = Some(match acc {
            None => x,
            Some(y) => cohn::mul(&y, &x),
        });
    }
    Ok(Outcome::value(cohn::format(&g, &acc.expect("at least one factor"))))
}

fn lpa<F: Field>(c: &LpaCmd) -> CliResult<Outcome> {
    let (file, exprs) = match c {
        LpaCmd::Nf(a) | LpaCmd::Graded { expr: a, .. } => (&a.file, std::slice::from_ref(&a.expr)),
        LpaCmd::Mul(a) => {
            at_least_two(&a.exprs)?;
            (&a.file, a.exprs.as_slice())
        }
    };
    let l = Leavitt::new(load_graph(file)?);
    let ring = CoeffRing::<F, _>::new(&l);
    let mut acc = None;
    for text in exprs {
        let x = expression(text, eval_str(&ring, text))?;
        acc = Some(match acc {
            None => x,
            Some(y) => l.mul(&y, &x),
        });
    }
    let x = acc.expect("at least one factor");
    let text = match c {
        LpaCmd::Graded { degree: Some(n), .. } => l.format(&l.graded_component(&x, *n)),
        LpaCmd::Graded { degree: None, .. } => {
            let degrees: std::collections::BTreeSet<i64> = x.terms().keys().map(|m| m.degree()).collect();
            if degrees.is_empty() {
                "0".to_string()
            } else {
                let lines: Vec<String> = degrees
                    .into_iter()
                    .map(|n| format!("degree {n}: {}", l.format(&l.graded_component(&x, n))))
                    .collect();
                lines.join("\n")
            }
        }
        _ => l.format(&x),
    };
    Ok(Outcome::value(text))
}

fn wreath<F: Field>(c: &WreathCmd) -> CliResult<Outcome> {
    let (files, exprs) = match c {
        WreathCmd::Nf { files, expr } => (files, std::slice::from_ref(expr)),
        WreathCmd::Mul { files, exprs } => {
            at_least_two(exprs)?;
            (files, exprs.as_slice())
        }
    };
    let g = load_graph(&files.graph)?;
    let ext = load_extension(&files.ext)?;
    match files.algebra {
        WreathAlgebra::Diagonal => {
            let eg = lift(ExtendedGraph::<F, _>::new(g, DiagonalAlgebra::new(ext.idempotents), &ext.bridges))?;
            wreath_eval(&eg, exprs)
        }
        WreathAlgebra::Poly => {
            if let Some(bad) = ext.idempotents.iter().find(|n| *n != "1") {
                return Err(Failure::Usage(format!("F[x] has the single idempotent `1`, found `{bad}`")));
            }
            let eg = lift(ExtendedGraph::<F, _>::new(g, PolyAlgebra, &ext.bridges))?;
            wreath_eval(&eg, exprs)
        }
    }
}

fn wreath_eval<F: Field, A: NamedElements<F>>(eg: &ExtendedGraph<F, A>, exprs: &[String]) -> CliResult<Outcome> {
    let ring = WreathRing { wreath: eg };
    let mut acc = None;
    for text in exprs {
        let x = expression(text, eval_str(&ring, text))?;
        acc = Some(match acc {
            None => x,
            Some(y) => eg.mul(&y, &x),
        });
    }
    Ok(Outcome::value(eg.format(&acc.expect("at least one factor"))))
}

struct ProbeOptions {
    probe: Probe,
    samples: usize,
    slen: usize,
    xlen: usize,
    seed: u64,
}

fn probe_wreath<F: Field, A: CoefficientAlgebra<F>>(eg: &ExtendedGraph<F, A>, o: &ProbeOptions, k: u64) -> Report {
    let seed = o.seed.wrapping_add(k);
    match o.probe {
        Probe::Assoc => assoc_report::<F, _, _>(&eg.biset(), eg.algebra(), o.samples, seed),
        Probe::Actions => action_closure_check(eg, o.slen, o.xlen),
        Probe::Ck => ck_annihilation_check(eg, o.xlen, seed),
        Probe::Jcapi => j_reduction_check(eg, o.samples, seed),
    }
}

fn assoc_report<F: Field, A: CoefficientAlgebra<F>, B: PointedBiset>(b: &B, a: &A, samples: usize, seed: u64) -> Report {
    let p = associativity_probe::<F, A, B>(b, a, samples, seed);
    let mut r = Report::new();
    r.push(
        "associativity",
        p.passed(),
        p.counterexample.unwrap_or_else(|| format!("{} triples", p.checked)),
    );
    r
}

fn lemma<F: Field>(o: &ProbeOptions, graph: Option<&Path>, ext: Option<&Path>) -> CliResult<Outcome> {
    let mut report = Report::new();
    match (graph, ext) {
        (Some(g), Some(e)) => {
            let g = load_graph(g)?;
            let ext = load_extension(e)?;
            let eg = lift(ExtendedGraph::<F, _>::new(g, DiagonalAlgebra::new(ext.idempotents), &ext.bridges))?;
            report.extend(probe_wreath(&eg, o, 0));
        }
        (None, None) => {
            if o.probe == Probe::Assoc {
                let mu = MatrixUnitBiset { n: 3 };
                report.extend(prefixed("matrix units", assoc_report::<F, _, _>(&mu, &ScalarAlgebra, o.samples, o.seed)));
                let bad = CorruptedBiset { inner: mu, fixed: 1 };
                let p = associativity_probe::<F, _, _>(&bad, &ScalarAlgebra, o.samples, o.seed);
                report.push(
                    "[corrupted] associativity fails",
                    !p.passed(),
                    p.counterexample.unwrap_or_else(|| format!("no failure in {} triples", p.checked)),
                );
            }
            report.extend(prefixed("loop", probe_wreath(&loop_wreath::<F, _>(ScalarAlgebra, "1"), o, 1)));
            report.extend(prefixed("loop F[x]", probe_wreath(&loop_wreath::<F, _>(PolyAlgebra, "1"), o, 2)));
            report.extend(prefixed("toeplitz/W", probe_wreath(&toeplitz_w::<F>(), o, 3)));
            report.extend(prefixed("three-vertex/W", probe_wreath(&three_vertex_w::<F>(), o, 4)));
        }
        _ => return Err(Failure::Usage("give both a graph file and an extension file, or neither".into())),
    }
    Ok(Outcome::report(&report))
}

fn affinize<F: Field>(a: &AffinizeArgs, seed: u64) -> CliResult<Outcome> {
    match a.algebra {
        AffineAlgebra::Scalar => affine_task(&lift(Affinization::<F, _>::new(ScalarAlgebra))?, a, seed),
        AffineAlgebra::Poly => affine_task(&lift(Affinization::<F, _>::new(PolyAlgebra))?, a, seed),
        AffineAlgebra::Local => {
            let alg = LocalRationalAlgebra::new(A0Algebra::default());
            affine_task(&lift(Affinization::<F, _>::new(alg))?, a, seed)
        }
    }
}

fn affine_task<F: Field, A: LazyAlgebra<F>>(aff: &Affinization<F, A>, a: &AffinizeArgs, seed: u64) -> CliResult<Outcome> {
    let report = match a.task {
        AffineTask::Relations => relations_check(aff, a.window, seed),
        AffineTask::Prop3 => prop3_check(aff, &AffineGenerators::standard(aff), a.degree, a.window),
        AffineTask::Radical => {
            if a.max_size == 0 {
                return Err(Failure::Usage("--max-size must be positive".into()));
            }
            radical_check::<F>(a.elements, a.matrices, a.max_size, a.powers, seed)
        }
    };
    Ok(Outcome::report(&report))
}
