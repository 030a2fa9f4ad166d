//! One function per subcommand. Each builds all three output renderings
//! (canonical JSON, CSV, pretty text); the caller picks one.
//!
//! Exit-code contract: 0 success, 1 identity failure (dims), 2
//! bounds/usage, 3 input-data error.

use std::fmt::Write as _;
use std::io::Read;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use entsym::entangle::{
    classify_all, ghz_basis, pair_basis, verify_entanglement, EntanglementReport, PairSource,
    PairedState,
};
use entsym::hilbert::{index_word, SpaceSpec, StateJson, StateVector};
use entsym::symmetry::{
    character_table, coupled_basis, sector_basis, sector_membership, Convention, CoupledLabel,
};
use entsym::tableaux::{enumerate_partitions, schur_weyl_identity, Partition};

use crate::output::{fmt_amp, fmt_f64, to_canonical_json};

pub enum CliError {
    /// exit 2
    Usage(String),
    /// exit 3
    Input(String),
    /// exit 1
    Output(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Output(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Output(m) => m,
        }
    }
}

fn usage(err: entsym::Error) -> CliError {
    CliError::Usage(err.to_string())
}

fn input(err: entsym::Error) -> CliError {
    CliError::Input(err.to_string())
}

/// The three renderings of one command's result.
pub struct Rendered {
    pub json: String,
    pub csv: String,
    pub pretty: String,
}

fn csv_from_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("in-memory csv");
    for row in rows {
        writer.write_record(row).expect("in-memory csv");
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv")).expect("csv is utf8")
}

fn word_string(letters: &[u8]) -> String {
    letters.iter().map(|l| l.to_string()).collect()
}

// ---------------------------------------------------------------- partitions

pub fn cmd_partitions(particles: u32) -> Result<Rendered, CliError> {
    let partitions = enumerate_partitions(particles).map_err(usage)?;
    let json = to_canonical_json(json!({
        "N": particles,
        "count": partitions.len(),
        "partitions": partitions,
    }));

    let rows: Vec<Vec<String>> = partitions
        .iter()
        .enumerate()
        .map(|(i, p)| vec![i.to_string(), p.to_string()])
        .collect();
    let csv = csv_from_rows(&["index", "partition"], &rows);

    let mut pretty = format!(
        "partitions of N = {particles} ({} total)\n",
        partitions.len()
    );
    for p in &partitions {
        let _ = writeln!(pretty, "  {p}");
    }
    Ok(Rendered { json, csv, pretty })
}

// ---------------------------------------------------------------------- dims

pub fn cmd_dims(particles: u32, levels: u32) -> Result<(Rendered, bool), CliError> {
    let check = schur_weyl_identity(particles, levels).map_err(usage)?;
    let json = to_canonical_json(json!({
        "N": particles,
        "n": levels,
        "terms": check.terms,
        "total": check.total,
        "expected": check.expected,
        "holds": check.holds,
    }));

    let rows: Vec<Vec<String>> = check
        .terms
        .iter()
        .map(|t| {
            vec![
                t.partition.to_string(),
                t.irrep_dim.to_string(),
                t.weyl_dim.to_string(),
                t.product.to_string(),
            ]
        })
        .collect();
    let csv = csv_from_rows(&["lambda", "irrep_dim", "weyl_dim", "product"], &rows);

    let mut pretty = format!(
        "{:<12} {:>9} {:>9} {:>9}\n",
        "lambda", "irrep_dim", "weyl_dim", "product"
    );
    for t in &check.terms {
        let _ = writeln!(
            pretty,
            "{:<12} {:>9} {:>9} {:>9}",
            t.partition.to_string(),
            t.irrep_dim,
            t.weyl_dim,
            t.product
        );
    }
    let verdict = if check.holds { "holds" } else { "FAILS" };
    let _ = writeln!(
        pretty,
        "total {} vs {}^{} = {}: identity {}",
        check.total, levels, particles, check.expected, verdict
    );
    Ok((Rendered { json, csv, pretty }, check.holds))
}

// --------------------------------------------------------------------- basis

struct LabeledState {
    label_json: Value,
    label_text: String,
    state: StateVector,
}

fn coupled_label_json(label: &CoupledLabel) -> Value {
    serde_json::to_value(label).expect("label serializes")
}

fn render_states(
    header: Value,
    items: &[LabeledState],
    extra_per_state: Option<&[Value]>,
) -> Rendered {
    let mut states = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let mut obj = serde_json::Map::new();
        obj.insert("label".into(), item.label_json.clone());
        obj.insert(
            "state".into(),
            serde_json::to_value(item.state.to_json()).expect("state serializes"),
        );
        if let Some(extras) = extra_per_state {
            obj.insert("report".into(), extras[i].clone());
        }
        states.push(Value::Object(obj));
    }
    let mut top = header.as_object().cloned().expect("header is an object");
    top.insert("count".into(), json!(items.len()));
    top.insert("states".into(), Value::Array(states));
    let json = to_canonical_json(Value::Object(top));

    let mut rows = Vec::new();
    for (i, item) in items.iter().enumerate() {
        let state_json = item.state.to_json();
        for amp in &state_json.amplitudes {
            rows.push(vec![
                i.to_string(),
                item.label_text.clone(),
                word_string(&amp.word),
                fmt_f64(amp.re),
                fmt_f64(amp.im),
            ]);
        }
    }
    let csv = csv_from_rows(&["state", "label", "word", "re", "im"], &rows);

    let mut pretty = String::new();
    for item in items {
        let terms: Vec<String> = item
            .state
            .to_json()
            .amplitudes
            .iter()
            .map(|a| {
                format!(
                    "{} |{}>",
                    fmt_amp(Complex64::new(a.re, a.im)),
                    word_string(&a.word)
                )
            })
            .collect();
        let _ = writeln!(pretty, "{:<24} {}", item.label_text, terms.join("  "));
    }
    Rendered { json, csv, pretty }
}

pub fn cmd_basis(
    particles: u32,
    levels: u32,
    lambda: Option<Partition>,
    convention: Convention,
) -> Result<Rendered, CliError> {
    let space = SpaceSpec::new(levels, particles).map_err(usage)?;
    let convention_name = match convention {
        Convention::SequentialCoupling => "sequential-coupling",
        Convention::PaperFixtures => "paper-fixtures",
    };

    if let Some(lambda) = lambda {
        let basis = sector_basis(&lambda, space).map_err(usage)?;
        let items: Vec<LabeledState> = basis
            .vectors
            .into_iter()
            .enumerate()
            .map(|(i, state)| LabeledState {
                label_json: json!({"lambda": lambda, "index": i}),
                label_text: format!("{lambda}#{i}"),
                state,
            })
            .collect();
        let header = json!({"n": levels, "N": particles, "lambda": lambda});
        return Ok(render_states(header, &items, None));
    }

    if levels == 2 {
        let basis = coupled_basis(particles, convention).map_err(usage)?;
        let items: Vec<LabeledState> = basis
            .into_iter()
            .map(|(label, state)| LabeledState {
                label_json: coupled_label_json(&label),
                label_text: label.to_string(),
                state,
            })
            .collect();
        let header = json!({"n": levels, "N": particles, "convention": convention_name});
        return Ok(render_states(header, &items, None));
    }

    if convention == Convention::PaperFixtures {
        return Err(CliError::Usage(
            "the paper-fixtures tables exist only for qubits (n = 2); \
             pass --lambda to get a sector basis from the isotypic projector"
                .into(),
        ));
    }

    // n > 2 without a sector: emit every sector's basis
    let mut items = Vec::new();
    for lambda in enumerate_partitions(particles).map_err(usage)? {
        let basis = sector_basis(&lambda, space).map_err(usage)?;
        for (i, state) in basis.vectors.into_iter().enumerate() {
            items.push(LabeledState {
                label_json: json!({"lambda": lambda, "index": i}),
                label_text: format!("{lambda}#{i}"),
                state,
            });
        }
    }
    let header = json!({"n": levels, "N": particles});
    Ok(render_states(header, &items, None))
}

// ------------------------------------------------------------------ entangle

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Method {
    PaperPairs,
    Ghz,
    Sectors,
}

fn pair_label_text(paired: &PairedState) -> String {
    let source = match &paired.source {
        PairSource::Coupled(label) => label.to_string(),
        PairSource::Word(word) => word.to_string(),
    };
    let phase = if (paired.phase - Complex64::ONE).norm() < 1e-9 {
        "+".to_string()
    } else if (paired.phase + Complex64::ONE).norm() < 1e-9 {
        "-".to_string()
    } else {
        format!("{:+.4}{:+.4}i *", paired.phase.re, paired.phase.im)
    };
    format!("{source} {phase} conj")
}

pub fn cmd_entangle(
    particles: u32,
    levels: u32,
    method: Method,
    tolerance: f64,
) -> Result<Rendered, CliError> {
    let space = SpaceSpec::new(levels, particles).map_err(usage)?;
    let (method_name, items): (&str, Vec<LabeledState>) = match method {
        Method::PaperPairs => {
            if levels != 2 {
                return Err(CliError::Usage(
                    "paper-pairs builds on the coupled qubit basis; it needs n = 2 \
                     (use --method ghz for general n)"
                        .into(),
                ));
            }
            let basis = pair_basis(particles).map_err(usage)?;
            let items = basis
                .into_iter()
                .map(|paired| LabeledState {
                    label_json: json!({
                        "source": serde_json::to_value(&paired.source).expect("source serializes"),
                        "phase": {"re": paired.phase.re, "im": paired.phase.im},
                    }),
                    label_text: pair_label_text(&paired),
                    state: paired.vector,
                })
                .collect();
            ("paper-pairs", items)
        }
        Method::Ghz => {
            let basis = ghz_basis(space).map_err(usage)?;
            let n = levels as usize;
            let shift_count = space.dim() / n;
            let items = basis
                .into_iter()
                .enumerate()
                .map(|(idx, state)| {
                    let k = idx / shift_count;
                    let offsets: Vec<u8> = index_word(idx % shift_count, {
                        // offsets are the base-n digits of the residue;
                        // reuse word digits (1-indexed) shifted back down
                        SpaceSpec::new(levels, particles - 1).expect("one particle fewer")
                    })
                    .letters()
                    .iter()
                    .map(|l| l - 1)
                    .collect();
                    LabeledState {
                        label_json: json!({"k": k, "offsets": offsets}),
                        label_text: format!(
                            "k={k} a=[{}]",
                            offsets
                                .iter()
                                .map(|o| o.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        ),
                        state,
                    }
                })
                .collect();
            ("ghz", items)
        }
        Method::Sectors => {
            let decomposition = classify_all(space, tolerance).map_err(usage)?;
            let mut items = Vec::new();
            for sector in decomposition.sectors {
                for (i, candidate) in sector.candidates.into_iter().enumerate() {
                    let sign = if candidate.phase.re >= 0.0 { "+" } else { "-" };
                    items.push(LabeledState {
                        label_json: json!({
                            "lambda": sector.partition,
                            "candidate": i,
                            "phase": {"re": candidate.phase.re, "im": candidate.phase.im},
                        }),
                        label_text: format!("{}#{i} {sign} conj", sector.partition),
                        state: candidate.state,
                    });
                }
            }
            ("sectors", items)
        }
    };

    let reports: Vec<EntanglementReport> = items
        .iter()
        .map(|item| verify_entanglement(&item.state, tolerance).map_err(usage))
        .collect::<Result<_, _>>()?;
    let report_values: Vec<Value> = reports
        .iter()
        .map(|r| serde_json::to_value(r).expect("report serializes"))
        .collect();

    let mut max_cross: f64 = 0.0;
    for i in 0..items.len() {
        for j in (i + 1)..items.len() {
            let overlap =
                entsym::hilbert::inner_product(&items[i].state, &items[j].state).map_err(usage)?;
            max_cross = max_cross.max(overlap.norm());
        }
    }
    let min_entropy = reports
        .iter()
        .map(|r| r.min_entropy)
        .fold(f64::INFINITY, f64::min);
    let max_entropy = reports.iter().map(|r| r.max_entropy).fold(0.0, f64::max);
    let maximal_count = reports.iter().filter(|r| r.maximal).count();

    let header = json!({"n": levels, "N": particles, "method": method_name});
    let mut rendered = render_states(header, &items, Some(&report_values));

    // splice the summary into the JSON object
    let mut top: Value = serde_json::from_str(&rendered.json).expect("own json parses");
    top.as_object_mut().expect("object").insert(
        "summary".into(),
        json!({
            "count": items.len(),
            "max_cross_inner": max_cross,
            "min_entropy": min_entropy,
            "max_entropy": max_entropy,
            "maximal_count": maximal_count,
        }),
    );
    rendered.json = to_canonical_json(top);

    let mut pretty = String::new();
    for (item, report) in items.iter().zip(&reports) {
        let entropies: Vec<String> = report
            .per_particle_entropy
            .iter()
            .map(|s| format!("{s:.6}"))
            .collect();
        let _ = writeln!(
            pretty,
            "{:<28} maximal={:<5} entropies=[{}] rdm_dev={:.3e}",
            item.label_text,
            report.maximal,
            entropies.join(", "),
            report.rdm_deviation
        );
    }
    let _ = writeln!(
        pretty,
        "count {}  maximal {}  max cross |<i|j>| {:.3e}  entropy range [{:.6}, {:.6}]",
        items.len(),
        maximal_count,
        max_cross,
        min_entropy,
        max_entropy
    );
    rendered.pretty = pretty;
    Ok(rendered)
}

// -------------------------------------------------------------------- verify

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {path}: {e}")))
    }
}

fn parse_state_value(value: &Value) -> Result<StateVector, CliError> {
    let state_json: StateJson = serde_json::from_value(value.clone())
        .map_err(|e| CliError::Input(format!("state schema error: {e}")))?;
    StateVector::from_json(&state_json).map_err(input)
}

/// Accepts a single state object, or the output of `basis`/`entangle`
/// (an object with a `states` array whose items carry a `state` field).
fn load_states(path: &str) -> Result<Vec<StateVector>, CliError> {
    let text = read_input(path)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("JSON parse error: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Input("input must be a JSON object".into()))?;
    if obj.contains_key("amplitudes") {
        return Ok(vec![parse_state_value(&value)?]);
    }
    if let Some(states) = obj.get("states") {
        let items = states
            .as_array()
            .ok_or_else(|| CliError::Input("\"states\" must be an array".into()))?;
        return items
            .iter()
            .enumerate()
            .map(|(i, item)| {
                let inner = if item.get("state").is_some() {
                    item.get("state").unwrap()
                } else if item.get("amplitudes").is_some() {
                    item
                } else {
                    return Err(CliError::Input(format!(
                        "states[{i}] has neither a \"state\" nor an \"amplitudes\" field"
                    )));
                };
                parse_state_value(inner)
            })
            .collect();
    }
    Err(CliError::Input(
        "unrecognized schema: expected {n, N, amplitudes} or an object with \"states\"".into(),
    ))
}

fn renormalize_input(state: StateVector) -> Result<StateVector, CliError> {
    let norm = state.norm();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(CliError::Input(format!(
            "state norm {norm} differs from 1 by more than 1e-6"
        )));
    }
    state.into_normalized().map_err(input)
}

fn report_csv_rows(state_index: Option<usize>, report: &EntanglementReport) -> Vec<Vec<String>> {
    report
        .per_particle_entropy
        .iter()
        .enumerate()
        .map(|(p, s)| {
            let mut row = Vec::new();
            if let Some(i) = state_index {
                row.push(i.to_string());
            }
            row.extend([
                (p + 1).to_string(),
                fmt_f64(*s),
                report.maximal.to_string(),
                fmt_f64(report.tolerance_used),
                fmt_f64(report.rdm_deviation),
            ]);
            row
        })
        .collect()
}

fn report_pretty(report: &EntanglementReport) -> String {
    let mut pretty = String::new();
    for (p, s) in report.per_particle_entropy.iter().enumerate() {
        let _ = writeln!(pretty, "particle {:<2} entropy {:.6} bits", p + 1, s);
    }
    let _ = writeln!(
        pretty,
        "maximal: {} (tolerance {:.1e}, rdm deviation {:.3e})",
        report.maximal, report.tolerance_used, report.rdm_deviation
    );
    pretty
}

pub struct VerifySource {
    pub input: Option<String>,
    pub seed: Option<u64>,
    pub levels: Option<u32>,
    pub particles: Option<u32>,
}

pub fn cmd_verify(source: VerifySource, tolerance: f64) -> Result<Rendered, CliError> {
    let states: Vec<StateVector> = if let Some(seed) = source.seed {
        let (levels, particles) = match (source.levels, source.particles) {
            (Some(n), Some(big_n)) => (n, big_n),
            _ => {
                return Err(CliError::Usage(
                    "--seed needs --n and --N to fix the space of the random state".into(),
                ))
            }
        };
        let space = SpaceSpec::new(levels, particles).map_err(usage)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        vec![StateVector::random(space, &mut rng)]
    } else if let Some(path) = &source.input {
        load_states(path)?
    } else {
        return Err(CliError::Usage(
            "verify needs --input FILE (or '-' for stdin), or --seed with --n/--N".into(),
        ));
    };

    let reports: Vec<EntanglementReport> = states
        .into_iter()
        .map(|s| verify_entanglement(&renormalize_input(s)?, tolerance).map_err(input))
        .collect::<Result<_, _>>()?;

    if reports.len() == 1 {
        let report = &reports[0];
        let json = to_canonical_json(serde_json::to_value(report).expect("report serializes"));
        let csv = csv_from_rows(
            &[
                "particle",
                "entropy",
                "maximal",
                "tolerance",
                "rdm_deviation",
            ],
            &report_csv_rows(None, report),
        );
        let pretty = report_pretty(report);
        Ok(Rendered { json, csv, pretty })
    } else {
        let json = to_canonical_json(json!({
            "count": reports.len(),
            "reports": reports,
        }));
        let mut rows = Vec::new();
        for (i, report) in reports.iter().enumerate() {
            rows.extend(report_csv_rows(Some(i), report));
        }
        let csv = csv_from_rows(
            &[
                "state",
                "particle",
                "entropy",
                "maximal",
                "tolerance",
                "rdm_deviation",
            ],
            &rows,
        );
        let mut pretty = String::new();
        for (i, report) in reports.iter().enumerate() {
            let _ = writeln!(pretty, "state {i}:");
            pretty.push_str(&report_pretty(report));
        }
        Ok(Rendered { json, csv, pretty })
    }
}

// ------------------------------------------------------------------- project

pub fn cmd_project(path: &str, lambda: Option<Partition>) -> Result<Rendered, CliError> {
    let states = load_states(path)?;
    if states.len() != 1 {
        return Err(CliError::Input(format!(
            "project expects a single state; the input carries {}",
            states.len()
        )));
    }
    let state = renormalize_input(states.into_iter().next().unwrap())?;
    let space = state.space();

    let lambdas = match lambda {
        Some(l) => {
            if l.total() != space.particles() {
                return Err(CliError::Usage(format!(
                    "partition {l} labels sectors of {} particles; the state has {}",
                    l.total(),
                    space.particles()
                )));
            }
            vec![l]
        }
        None => enumerate_partitions(space.particles()).map_err(usage)?,
    };

    let mut weights = Vec::with_capacity(lambdas.len());
    for l in &lambdas {
        weights.push(sector_membership(&state, l).map_err(usage)?);
    }
    let total: f64 = weights.iter().sum();

    let json = to_canonical_json(json!({
        "n": space.levels(),
        "N": space.particles(),
        "weights": lambdas.iter().zip(&weights)
            .map(|(l, w)| json!({"lambda": l, "weight": w}))
            .collect::<Vec<Value>>(),
        "total": total,
    }));

    let rows: Vec<Vec<String>> = lambdas
        .iter()
        .zip(&weights)
        .map(|(l, w)| vec![l.to_string(), fmt_f64(*w)])
        .collect();
    let csv = csv_from_rows(&["lambda", "weight"], &rows);

    let mut pretty = String::new();
    for (l, w) in lambdas.iter().zip(&weights) {
        let _ = writeln!(pretty, "{:<12} {:.12}", l.to_string(), w);
    }
    let _ = writeln!(pretty, "total        {total:.12}");
    Ok(Rendered { json, csv, pretty })
}

// ---------------------------------------------------------------- characters

pub fn cmd_characters(particles: u32) -> Result<Rendered, CliError> {
    let table = character_table(particles).map_err(usage)?;
    let json = to_canonical_json(json!({
        "N": particles,
        "classes": table.classes.iter()
            .map(|c| json!({"cycle_type": c.cycle_type, "size": c.size}))
            .collect::<Vec<Value>>(),
        "rows": table.partitions.iter().zip(&table.values)
            .map(|(l, vals)| json!({"lambda": l, "values": vals}))
            .collect::<Vec<Value>>(),
    }));

    let mut header: Vec<String> = vec!["lambda".to_string()];
    header.extend(table.classes.iter().map(|c| c.cycle_type.to_string()));
    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    let rows: Vec<Vec<String>> = table
        .partitions
        .iter()
        .zip(&table.values)
        .map(|(l, vals)| {
            let mut row = vec![l.to_string()];
            row.extend(vals.iter().map(|v| v.to_string()));
            row
        })
        .collect();
    let csv = csv_from_rows(&header_refs, &rows);

    let width = 10usize;
    let mut pretty = format!("{:<12}", "lambda");
    for c in &table.classes {
        let _ = write!(pretty, "{:>width$}", c.cycle_type.to_string());
    }
    pretty.push('\n');
    let _ = writeln!(
        pretty,
        "{:<12}{}",
        "class size",
        table
            .classes
            .iter()
            .map(|c| format!("{:>width$}", c.size))
            .collect::<String>()
    );
    for (l, vals) in table.partitions.iter().zip(&table.values) {
        let _ = write!(pretty, "{:<12}", l.to_string());
        for v in vals {
            let _ = write!(pretty, "{v:>width$}");
        }
        pretty.push('\n');
    }
    Ok(Rendered { json, csv, pretty })
}
