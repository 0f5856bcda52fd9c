use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use eulerweft::circuit::{gate_angle, tensor_string, validate, GateForm, GateSpec};
use eulerweft::corpus::{FixtureKind, FIXTURES};
use eulerweft::enumerators::{eulerian_genfunc, multivariate_genfunc, qwgt_table, signed_genfunc, QwgtInstance};
use eulerweft::graphs::{
    euler_condition_exhaustive, euler_condition_poly, find_euler_circuit, graph_from_circuit, incidence_matrix,
    lift_to_circuit, ch_kernel, LiftChoice, SearchOutcome, SearchParams, SearchStrategy,
};
use eulerweft::ising::{partition_all, partition_direct, partition_qwgt, partition_vdw, IsingInstance};
use eulerweft::simulator::{
    amplitude_via_expansion, amplitude_zero, circuit_ops, expansion_normalization, hadamard_test, run_decision,
};
use eulerweft::{BitMatrix, CircuitMatrix, EnumerationCap, Hypergraph, SignedPolynomial, Sign};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::{CircuitCmd, Cli, Command, EvalCmd, FormArg, GateArgs, GraphCmd, IsingCmd, SimCmd, StrategyArg};

/// What a command prints in each output mode, plus its exit code.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, code: 0 }
    }
}

/// Shortest round-trip form, identical to what the JSON output carries.
fn num(v: f64) -> String {
    if v.is_finite() {
        serde_json::to_string(&v).expect("finite")
    } else {
        v.to_string()
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_circuit(path: &Path) -> Result<CircuitMatrix, CliError> {
    Ok(CircuitMatrix::parse(&read(path)?)?)
}

fn read_graph(path: &Path) -> Result<Hypergraph, CliError> {
    Ok(Hypergraph::parse(&read(path)?)?)
}

fn form(f: FormArg) -> GateForm {
    match f {
        FormArg::Paper => GateForm::IdentityWeight,
        FormArg::Edge => GateForm::EdgeWeight,
    }
}

fn form_name(f: FormArg) -> &'static str {
    match f {
        FormArg::Paper => "paper",
        FormArg::Edge => "edge",
    }
}

fn gate_spec(args: &GateArgs, gates: usize) -> Result<GateSpec<f64>, CliError> {
    if !(args.lambda > 0.0 && args.lambda.is_finite()) {
        return Err(CliError::Usage(format!("--lambda must be positive, got {}", args.lambda)));
    }
    let mut g = GateSpec::from_form(args.lambda, form(args.form));
    if let Some(s) = &args.signs {
        if s.chars().count() != gates {
            return Err(CliError::Usage(format!("--signs has {} entries for {gates} gates", s.chars().count())));
        }
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                other => Err(CliError::Usage(format!("--signs accepts only + and -, got {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        g = g.with_signs(signs);
    }
    Ok(g)
}

fn poly_json(p: &SignedPolynomial, lambda: Option<f64>) -> Value {
    json!({
        "coeffs": p,
        "polynomial": p.to_string(),
        "value_at": lambda.map(|l| json!({"lambda": l, "value": p.evaluate(&l)})),
    })
}

fn poly_text(p: &SignedPolynomial, lambda: Option<f64>) -> String {
    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    let mut s = format!("coeffs {}\npolynomial {}\n", coeffs.join(" "), p);
    if let Some(l) = lambda {
        let _ = writeln!(s, "value at {} = {}", num(l), num(p.evaluate(&l)));
    }
    s
}

fn choice_json(choice: &LiftChoice) -> Value {
    let one_based = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
    Value::Array(
        choice
            .columns
            .iter()
            .enumerate()
            .map(|(k, c)| json!({"edge": k + 1, "y": one_based(&c.y), "z": one_based(&c.z)}))
            .collect(),
    )
}

pub fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let cap = EnumerationCap(cli.cap_override.unwrap_or(eulerweft::gf2::DEFAULT_ENUMERATION_CAP));
    match &cli.command {
        Command::Circuit(c) => circuit(c),
        Command::Graph(g) => graph(g, cap),
        Command::Eval(e) => eval(e, cap),
        Command::Ising(i) => ising(i, cap),
        Command::Sim(s) => sim(s, cap),
        Command::Corpus { write } => corpus(write.as_deref()),
    }
}

fn gate_listing(c: &CircuitMatrix, spec: Option<&GateSpec<f64>>) -> (String, Vec<Value>) {
    let mut text = String::new();
    let mut rows = Vec::new();
    for (k, w) in c.words().iter().enumerate() {
        let angle = spec.and_then(|g| g.rotation_angle(k, w.y_count()));
        let ts = tensor_string(w);
        match angle {
            Some(a) => {
                let _ = writeln!(text, "{} {} {}", k + 1, ts, num(a));
            }
            None => {
                let _ = writeln!(text, "{} {}", k + 1, ts);
            }
        }
        rows.push(json!({"index": k + 1, "pauli_string": ts, "angle": angle}));
    }
    (text, rows)
}

fn circuit(cmd: &CircuitCmd) -> Result<Output, CliError> {
    match cmd {
        CircuitCmd::Validate { file, graph_restricted } => {
            let c = read_circuit(file)?;
            let r = validate(&c, *graph_restricted);
            let mut text = String::new();
            for v in &r.violations {
                let _ = writeln!(text, "gate {}: {}", v.column + 1, v.reason);
            }
            text.push_str(if r.is_ok() { "valid\n" } else { "invalid\n" });
            let violations: Vec<Value> = r
                .violations
                .iter()
                .map(|v| json!({"gate": v.column + 1, "reason": v.reason.to_string()}))
                .collect();
            Ok(Output {
                text,
                json: json!({"valid": r.is_ok(), "graph_restricted": graph_restricted, "violations": violations}),
                code: if r.is_ok() { 0 } else { 2 },
            })
        }
        CircuitCmd::Show { file, lambda, form: f } => {
            let c = read_circuit(file)?;
            let spec = match lambda {
                Some(l) => Some(gate_spec(
                    &GateArgs {
                        lambda: *l,
                        form: *f,
                        signs: None,
                    },
                    c.gates(),
                )?),
                None => None,
            };
            let (list, rows) = gate_listing(&c, spec.as_ref());
            Ok(Output::ok(
                format!("qubits {} gates {}\n{list}", c.qubits(), c.gates()),
                json!({"qubits": c.qubits(), "gates": c.gates(), "gate_list": rows}),
            ))
        }
        CircuitCmd::Angle { file, gate } => match file {
            None => {
                let a = gate_angle(gate.lambda, form(gate.form))?;
                Ok(Output::ok(
                    format!("{}\n", num(a)),
                    json!({"lambda": gate.lambda, "form": form_name(gate.form), "angle": a}),
                ))
            }
            Some(file) => {
                let c = read_circuit(file)?;
                let spec = gate_spec(gate, c.gates())?;
                let (list, rows) = gate_listing(&c, Some(&spec));
                Ok(Output::ok(list, json!({"lambda": gate.lambda, "form": form_name(gate.form), "gate_list": rows})))
            }
        },
    }
}

fn graph_json(g: &Hypergraph) -> Value {
    let edges: Vec<Vec<usize>> = g.edges().iter().map(|e| e.iter().map(|v| v + 1).collect()).collect();
    json!({"vertex_count": g.vertex_count(), "edges": edges, "incidence": incidence_matrix(g).to_rows()})
}

fn circuit_json(c: &CircuitMatrix) -> Value {
    let words: Vec<String> = c.words().iter().map(|w| w.to_string()).collect();
    json!({"qubits": c.qubits(), "gates": c.gates(), "h": c.h().to_rows(), "words": words})
}

fn graph(cmd: &GraphCmd, cap: EnumerationCap) -> Result<Output, CliError> {
    match cmd {
        GraphCmd::ToCircuit { file } => {
            let g = read_graph(file)?;
            let c = lift_to_circuit(&g, &LiftChoice::lowest_endpoint(&g))?;
            Ok(Output::ok(c.to_text(), circuit_json(&c)))
        }
        GraphCmd::FromCircuit { file } => {
            let c = read_circuit(file)?;
            let g = graph_from_circuit(&c);
            let inc = incidence_matrix(&g);
            let mut text = g.to_text();
            let _ = writeln!(text, "# incidence {} {}", inc.rows(), inc.cols());
            for row in inc.to_rows() {
                let cells: Vec<String> = row.iter().map(u8::to_string).collect();
                let _ = writeln!(text, "# {}", cells.join(" "));
            }
            Ok(Output::ok(text, graph_json(&g)))
        }
        GraphCmd::EulerCheck { file, exhaustive } => {
            let c = read_circuit(file)?;
            let r = validate(&c, false);
            if !r.is_valid() {
                return Err(CliError::Validation(format!("circuit has {} invalid gate(s)", r.violations.len())));
            }
            let kdim = ch_kernel(&c).free_count();
            let (ok, method) = if *exhaustive {
                (euler_condition_exhaustive(&c, cap)?, "exhaustive")
            } else {
                (euler_condition_poly(&c), "basis")
            };
            Ok(Output::ok(
                format!("{} (kernel dimension {kdim})\n", if ok { "satisfied" } else { "violated" }),
                json!({"satisfied": ok, "kernel_dim": kdim, "method": method}),
            ))
        }
        GraphCmd::EulerSearch {
            file,
            strategy,
            seed,
            budget,
            z_cap,
        } => {
            let g = read_graph(file)?;
            let params = SearchParams {
                strategy: match strategy {
                    StrategyArg::Exhaustive => SearchStrategy::Exhaustive,
                    StrategyArg::Randomized => SearchStrategy::Randomized { seed: *seed },
                    StrategyArg::Solve => SearchStrategy::Solve,
                },
                budget: *budget,
                z_cap: *z_cap,
            };
            match find_euler_circuit(&g, &params)? {
                SearchOutcome::Found { choice, trials } => {
                    let c = lift_to_circuit(&g, &choice)?;
                    Ok(Output::ok(
                        format!("# found after {trials} candidate(s)\n{}", c.to_text()),
                        json!({"outcome": "found", "trials": trials, "choice": choice_json(&choice), "circuit": circuit_json(&c)}),
                    ))
                }
                SearchOutcome::Absent { trials } => {
                    let text = if *strategy == StrategyArg::Solve {
                        "# no lift satisfies the condition\n".to_string()
                    } else {
                        format!("# no lift satisfies the condition with at most {z_cap} Z per gate ({trials} candidate(s))\n")
                    };
                    Ok(Output::ok(text, json!({"outcome": "absent", "trials": trials, "z_cap": z_cap})))
                }
            }
        }
    }
}

fn eval(cmd: &EvalCmd, cap: EnumerationCap) -> Result<Output, CliError> {
    match cmd {
        EvalCmd::Qwgt { a, b, x, y } => {
            let a = BitMatrix::parse(&read(a)?)?;
            let b = match b {
                Some(p) => BitMatrix::parse(&read(p)?)?,
                None => BitMatrix::zeros(a.cols(), a.cols()),
            };
            let inst = QwgtInstance { a, b, x: *x, y: *y };
            let table = qwgt_table(&inst, cap)?;
            let value = table.evaluate_bivariate(x, y);
            let coeffs: Vec<String> = table.coeffs().iter().map(|c| c.to_string()).collect();
            Ok(Output::ok(
                format!("coeffs {}\nvalue at x={} y={} = {}\n", coeffs.join(" "), num(*x), num(*y), num(value)),
                json!({"coeffs": table, "value_at": {"lambda": x, "y": y, "value": value}}),
            ))
        }
        EvalCmd::E { file, lambda } => {
            let p = eulerian_genfunc(&read_graph(file)?, cap)?;
            Ok(Output::ok(poly_text(&p, *lambda), poly_json(&p, *lambda)))
        }
        EvalCmd::Eprime { file, lambda } => {
            let p = signed_genfunc(&read_circuit(file)?, cap)?;
            Ok(Output::ok(poly_text(&p, *lambda), poly_json(&p, *lambda)))
        }
        EvalCmd::Multi { file, weights } => {
            let v = multivariate_genfunc(&read_graph(file)?, weights, cap)?;
            Ok(Output::ok(format!("{}\n", num(v)), json!({"weights": weights, "value": v})))
        }
    }
}

fn ising(cmd: &IsingCmd, cap: EnumerationCap) -> Result<Output, CliError> {
    let (file, method) = match cmd {
        IsingCmd::Direct { file } => (file, "direct"),
        IsingCmd::Vdw { file } => (file, "vdw"),
        IsingCmd::Qwgt { file } => (file, "qwgt"),
        IsingCmd::All { file } => (file, "all"),
    };
    let inst = IsingInstance::parse(&read(file)?)?;
    let single = |z: f64| Output::ok(format!("{}\n", num(z)), json!({"method": method, "value": z}));
    match method {
        "direct" => Ok(single(partition_direct(&inst)?)),
        "vdw" => Ok(single(partition_vdw(&inst, cap)?)),
        "qwgt" => Ok(single(partition_qwgt(&inst, cap)?)),
        _ => {
            let r = partition_all(&inst, cap)?;
            let mut text = String::new();
            for (name, v) in [("direct", r.direct), ("vdw", r.vdw), ("qwgt", r.qwgt)] {
                match v {
                    Some(z) => {
                        let _ = writeln!(text, "{name} {}", num(z));
                    }
                    None => {
                        let _ = writeln!(text, "{name} n/a");
                    }
                }
            }
            let _ = writeln!(text, "max relative deviation {}", num(r.max_relative_deviation));
            Ok(Output::ok(text, serde_json::to_value(&r).expect("serializable")))
        }
    }
}

fn sim(cmd: &SimCmd, cap: EnumerationCap) -> Result<Output, CliError> {
    match cmd {
        SimCmd::Amplitude { file, gate } => {
            let c = read_circuit(file)?;
            let g = gate_spec(gate, c.gates())?;
            let a = amplitude_zero(&c, &g)?;
            Ok(Output::ok(
                format!("{}\n", num(a)),
                json!({"amplitude": a, "lambda": gate.lambda, "form": form_name(gate.form), "qubits": c.qubits(), "gates": c.gates()}),
            ))
        }
        SimCmd::Expansion { file, gate } => {
            let c = read_circuit(file)?;
            let g = gate_spec(gate, c.gates())?;
            let a = amplitude_via_expansion(&c, &g, cap)?;
            let norm = expansion_normalization(&g, c.gates());
            Ok(Output::ok(
                format!("amplitude {}\nnormalization {}\nkernel sum {}\n", num(a), num(norm), num(a * norm)),
                json!({"amplitude": a, "normalization": norm, "kernel_sum": a * norm, "lambda": gate.lambda, "form": form_name(gate.form)}),
            ))
        }
        SimCmd::Hadamard {
            file,
            gate,
            epsilon,
            delta,
            seed,
        } => {
            let c = read_circuit(file)?;
            let g = gate_spec(gate, c.gates())?;
            let r = hadamard_test(&circuit_ops(&c, &g)?, c.qubits(), *epsilon, *delta, *seed)?;
            let norm = expansion_normalization(&g, c.gates());
            let mut j = serde_json::to_value(&r).expect("serializable");
            j["normalization"] = json!(norm);
            Ok(Output::ok(
                format!(
                    "estimate {}\nexact {}\nsamples {}\nepsilon {}\ndelta {}\nseed {}\nnormalization {}\n",
                    num(r.estimate), num(r.exact), r.samples, num(r.epsilon), num(r.delta), r.seed, num(norm)
                ),
                j,
            ))
        }
        SimCmd::Decision {
            file,
            gate,
            decision_qubit,
        } => {
            let c = read_circuit(file)?;
            if *decision_qubit == 0 || *decision_qubit > c.qubits() {
                return Err(CliError::Usage(format!(
                    "--decision-qubit must be in 1..={}, got {decision_qubit}",
                    c.qubits()
                )));
            }
            let g = gate_spec(gate, c.gates())?;
            let ops = circuit_ops(&c, &g)?;
            let wrapped = eulerweft::circuit::decision_wrap(&ops, c.qubits(), decision_qubit - 1)?;
            let r = run_decision(&wrapped, c.qubits() + 1)?;
            let mut j = serde_json::to_value(&r).expect("serializable");
            j["decision_qubit"] = json!(decision_qubit);
            Ok(Output::ok(
                format!("p(0) {}\np(1) {}\nresidual {}\n", num(r.p_zero), num(r.p_one), num(r.residual)),
                j,
            ))
        }
    }
}

fn corpus(write: Option<&Path>) -> Result<Output, CliError> {
    let kind = |k: FixtureKind| match k {
        FixtureKind::Graph => "graph",
        FixtureKind::Circuit => "circuit",
        FixtureKind::Ising => "ising",
    };
    if let Some(dir) = write {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        for f in FIXTURES {
            let path = dir.join(f.file_name());
            fs::write(&path, f.text).map_err(|source| CliError::Io { path, source })?;
        }
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    for f in FIXTURES {
        let _ = writeln!(text, "{:<14} {:<8} {}", f.name, kind(f.kind), f.summary);
        rows.push(json!({"name": f.name, "kind": kind(f.kind), "file": f.file_name(), "summary": f.summary}));
    }
    Ok(Output::ok(text, Value::Array(rows)))
}
