use std::fmt::Write as _;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use viennot_core::characters::{character_table_bounded, strata, verify_graded_decomposition, CharacterTable};
use viennot_core::orbit::{check_vanishing, verify_basis};
use viennot_core::perm::{ColoredPermutation, Permutation};
use viennot_core::shadow::{iterated_decompositions, iterated_shadows, schensted_insert, shadow_monomial, Tableau};
use viennot_core::stats::{
    analyze, colored_statistic, count_enumerate, count_fast, write_histogram_csv, CountPath, GradedSeries, StatKind,
    StatTable, DEFAULT_FAST_BOUND,
};

use crate::{Cli, CliError, Command, Format, KindArg, PathChoice, Report};

/// Known reference series, lowest degree first.
const REFERENCE_SERIES: &[(usize, usize, &[u64])] = &[(3, 1, &[1, 4, 1]), (3, 2, &[1, 9, 22, 9, 1])];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    /// The computation disagrees with a reference value it was compared to.
    ReferenceMismatch,
    /// Two independent computations in this program disagree.
    Inconsistency,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::ReferenceMismatch => "reference_mismatch",
            Status::Inconsistency => "inconsistency",
        }
    }
}

struct Check {
    name: &'static str,
    status: Status,
    detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, failure: Status, detail: impl Into<String>) -> Check {
        Check { name, status: if ok { Status::Pass } else { failure }, detail: detail.into() }
    }

    fn json(&self) -> Value {
        json!({ "name": self.name, "status": self.status.as_str(), "detail": self.detail })
    }
}

fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status == Status::Pass)
}

fn checks_text(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let _ = writeln!(s, "[{}] {}: {}", c.status.as_str(), c.name, c.detail);
    }
    s
}

fn checks_json(checks: &[Check]) -> Value {
    Value::Array(checks.iter().map(Check::json).collect())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Usage(format!("--format {format:?} is not available for `{command}`").to_lowercase())
}

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let r = cli.r as usize;
    match &cli.command {
        Command::Schensted { word } => schensted(cli, word),
        Command::Hilbert => hilbert(cli, cli.n, r),
        Command::Analyze => analyze_cmd(cli, cli.n, r),
        Command::Strata => strata_cmd(cli, cli.n, r),
        Command::Verify => verify(cli, cli.n, r),
        Command::Histogram { kind } => histogram(cli, *kind, cli.n, r),
        Command::Chartable => chartable(cli, cli.n, r),
    }
}

fn tableau_text(t: &Tableau) -> String {
    t.iter().map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

fn points_text(points: &[(usize, usize)]) -> String {
    let inner: Vec<String> = points.iter().map(|(x, y)| format!("({x},{y})")).collect();
    format!("{{{}}}", inner.join(", "))
}

fn schensted(cli: &Cli, word: &str) -> Result<Report, CliError> {
    let explicit_r = (cli.r > 1).then_some(cli.r as usize);
    let w = ColoredPermutation::parse(word, explicit_r)?;
    let sigma = w.sigma();
    let pair = schensted_insert(sigma);
    let shadows = iterated_shadows(&sigma.points());
    let agree = pair == shadows;
    let levels = iterated_decompositions(&sigma.points());
    let diagram = w.diagram();
    let monomial = shadow_monomial(&w);
    let checks = vec![Check::new(
        "shadows_equal_insertion",
        agree,
        Status::Inconsistency,
        if agree { "iterated shadows reproduce (P, Q)" } else { "iterated shadows differ from row insertion" },
    )];
    let body = match cli.format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "w = {w}");
            let _ = writeln!(s, "P:\n{}", tableau_text(&pair.p));
            let _ = writeln!(s, "Q:\n{}", tableau_text(&pair.q));
            for (i, d) in levels.iter().enumerate() {
                let _ = writeln!(s, "level {}: {} shadow lines", i + 1, d.lines.len());
                for line in &d.lines {
                    let _ = writeln!(s, "  line {} corners {}", points_text(&line.points), points_text(&line.corners));
                }
                let _ = writeln!(s, "  shadow set {}", points_text(d.shadow_set.points()));
            }
            if w.r() > 1 {
                for (c, layer) in diagram.layers().iter().enumerate() {
                    let _ = writeln!(s, "layer {c}: {}", points_text(layer.points()));
                }
            }
            let _ = writeln!(s, "monomial: {monomial}");
            let _ = writeln!(s, "degree: {}", monomial.degree());
            s.push_str(&checks_text(&checks));
            s
        }
        Format::Json => pretty(&json!({
            "schema": 1,
            "w": w.to_string(),
            "r": w.r(),
            "p": pair.p,
            "q": pair.q,
            "levels": levels,
            "layers": diagram.layers().iter().map(|l| l.points().to_vec()).collect::<Vec<_>>(),
            "monomial": monomial.to_string(),
            "degree": monomial.degree(),
            "colored_statistic": colored_statistic(&w),
            "checks": checks_json(&checks),
        })),
        Format::Csv => return Err(unsupported(cli.format, "schensted")),
    };
    Ok(Report { body, passed: all_pass(&checks) })
}

fn tables_for(cli: &Cli, kind: StatKind, n: usize, r: usize) -> Result<Vec<StatTable>, CliError> {
    let mut out = Vec::new();
    if matches!(cli.path, PathChoice::Enumerate | PathChoice::Both) {
        out.push(count_enumerate(kind, n, r, cli.cap)?);
    }
    if matches!(cli.path, PathChoice::Fast | PathChoice::Both) {
        out.push(count_fast(kind, n, r, DEFAULT_FAST_BOUND)?);
    }
    Ok(out)
}

fn path_agreement(tables: &[StatTable]) -> Option<Check> {
    let [a, b] = tables else { return None };
    let same = a.same_counts(b);
    Some(Check::new(
        "paths_agree",
        same,
        Status::Inconsistency,
        if same { "enumeration and closed form give identical counts" } else { "enumeration and closed form differ" },
    ))
}

fn series_json(s: &GradedSeries) -> Value {
    Value::Array(s.coeffs.iter().map(|c| Value::String(c.to_string())).collect())
}

fn hilbert(cli: &Cli, n: usize, r: usize) -> Result<Report, CliError> {
    let tables = tables_for(cli, StatKind::C, n, r)?;
    let series: Vec<GradedSeries> = tables.iter().map(GradedSeries::from_table).collect();
    let mut checks = Vec::new();
    checks.extend(path_agreement(&tables));
    let order = viennot_core::group_order(n, r);
    for (t, s) in tables.iter().zip(&series) {
        let total = s.total();
        checks.push(Check::new(
            if t.path == CountPath::Enumerate { "total_enumerate" } else { "total_fast" },
            total == order,
            Status::Inconsistency,
            format!("coefficients sum to {total}, group order {order}"),
        ));
    }
    if let Some((_, _, reference)) = REFERENCE_SERIES.iter().find(|(rn, rr, _)| *rn == n && *rr == r) {
        let s = &series[0];
        let len = reference.len().max(s.coeffs.len());
        let diffs: Vec<String> = (0..len)
            .filter_map(|d| {
                let want = BigUint::from(reference.get(d).copied().unwrap_or(0));
                let got = s.coeff(d);
                (want != got).then(|| format!("q^{d}: computed {got}, reference {want}"))
            })
            .collect();
        let printed: Vec<String> = reference.iter().map(ToString::to_string).collect();
        checks.push(Check::new(
            "reference_series",
            diffs.is_empty(),
            Status::ReferenceMismatch,
            if diffs.is_empty() {
                format!("matches reference [{}]", printed.join(", "))
            } else {
                format!("differs from reference [{}]: {}", printed.join(", "), diffs.join("; "))
            },
        ));
    }
    let body = match cli.format {
        Format::Text => {
            let mut s = String::new();
            for (t, ser) in tables.iter().zip(&series) {
                let _ = writeln!(s, "{}: {ser}", t.path);
            }
            s.push_str(&checks_text(&checks));
            s
        }
        Format::Csv => {
            let mut s = String::from("degree");
            for t in &tables {
                let _ = write!(s, ",{}", t.path);
            }
            s.push('\n');
            for d in 0..=r * n {
                let _ = write!(s, "{d}");
                for ser in &series {
                    let _ = write!(s, ",{}", ser.coeff(d));
                }
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let mut by_path = serde_json::Map::new();
            for (t, ser) in tables.iter().zip(&series) {
                by_path.insert(t.path.to_string(), series_json(ser));
            }
            pretty(&json!({ "schema": 1, "n": n, "r": r, "series": by_path, "checks": checks_json(&checks) }))
        }
    };
    Ok(Report { body, passed: all_pass(&checks) })
}

fn analyze_cmd(cli: &Cli, n: usize, r: usize) -> Result<Report, CliError> {
    let tables = tables_for(cli, StatKind::C, n, r)?;
    let mut checks = Vec::new();
    checks.extend(path_agreement(&tables));
    let table = tables.last().expect("at least one path");
    let a = analyze(table);
    checks.push(Check::new(
        "reflection_consistent",
        a.consistent,
        Status::Inconsistency,
        "series violations mirror table violations under d = rn - k",
    ));
    let body = match cli.format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "n = {n}, r = {r}, counts from {}", table.path);
            let _ = writeln!(s, "log-concave: {}", a.table.is_log_concave());
            let _ = writeln!(s, "violations at k: {:?}", a.table.violations);
            let _ = writeln!(s, "unimodal: {}", a.unimodality.unimodal);
            if let Some(p) = a.unimodality.peak {
                let _ = writeln!(s, "peak at k: {p}");
            }
            if let Some(w) = a.unimodality.witness {
                let _ = writeln!(s, "rises again at k = {} -> {}", w.0, w.1);
            }
            s.push_str(&checks_text(&checks));
            s
        }
        Format::Json => pretty(&json!({
            "schema": 1,
            "n": n,
            "r": r,
            "path": table.path,
            "log_concavity": a.table,
            "series_log_concavity": a.series,
            "unimodality": a.unimodality,
            "checks": checks_json(&checks),
        })),
        Format::Csv => {
            let mut s = String::from("k,count,log_concave_violation\n");
            for (k, v) in &table.values {
                let _ = writeln!(s, "{k},{v},{}", a.table.violations.contains(k));
            }
            s
        }
    };
    Ok(Report { body, passed: all_pass(&checks) })
}

fn counting_path(cli: &Cli) -> CountPath {
    match cli.path {
        PathChoice::Enumerate => CountPath::Enumerate,
        PathChoice::Fast | PathChoice::Both => CountPath::Fast,
    }
}

fn strata_cmd(cli: &Cli, n: usize, r: usize) -> Result<Report, CliError> {
    let report = verify_graded_decomposition(n, r, counting_path(cli), cli.cap)?;
    let checks = vec![
        Check::new(
            "degree_dimensions",
            report.rows.iter().all(|row| row.matches),
            Status::Inconsistency,
            "sum of dim^2 over each stratum equals the Hilbert coefficient",
        ),
        Check::new(
            "filtration",
            report.filtration_matches,
            Status::Inconsistency,
            "cumulative strata agree with partial sums of the series",
        ),
        Check::new(
            "strata_partition",
            report.strata_partition_ok,
            Status::Inconsistency,
            "every label lies in exactly one degree",
        ),
    ];
    let body = match cli.format {
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf).expect("writing to memory");
            String::from_utf8(buf).expect("csv is ascii")
        }
        Format::Text => {
            let mut s = String::new();
            for row in &report.rows {
                let labels: Vec<String> = strata(n, r, row.k).iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    s,
                    "k={}: {} labels, sum dim^2 = {}, Hilbert {} [{}] {}",
                    row.k,
                    row.num_lambdas,
                    row.sum_dim_sq,
                    row.hilbert_coeff,
                    if row.matches { "match" } else { "MISMATCH" },
                    labels.join(" ")
                );
            }
            s.push_str(&checks_text(&checks));
            s
        }
        Format::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "k": row.k,
                        "labels": strata(n, r, row.k).iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "sum_dim_sq": row.sum_dim_sq.to_string(),
                        "hilbert_coeff": row.hilbert_coeff.to_string(),
                        "match": row.matches,
                    })
                })
                .collect();
            pretty(&json!({ "schema": 1, "n": n, "r": r, "rows": rows, "checks": checks_json(&checks) }))
        }
    };
    Ok(Report { body, passed: all_pass(&checks) })
}

const RANDOM_TRIALS: usize = 200;

fn verify(cli: &Cli, n: usize, r: usize) -> Result<Report, CliError> {
    let mut checks = Vec::new();

    let basis = verify_basis(n, r, cli.matrix_cap)?;
    checks.push(Check::new(
        "monomials_distinct",
        basis.monomials_distinct,
        Status::Inconsistency,
        match basis.collisions.first() {
            None => format!("{} distinct shadow monomials", basis.matrix_size),
            Some((u, v, m)) => format!("{u} and {v} share {m}"),
        },
    ));
    checks.push(Check::new(
        "evaluation_matrix_invertible",
        basis.invertible && basis.inverse_checked,
        Status::Inconsistency,
        format!("{0}x{0} exact elimination", basis.matrix_size),
    ));

    let vanishing = check_vanishing(n, r, cli.cap)?;
    checks.push(Check::new(
        "generators_vanish",
        vanishing.passed(),
        Status::Inconsistency,
        match vanishing.failures.first() {
            None => format!("{} generators vanish at {} points", vanishing.generators, vanishing.points),
            Some((g, w)) => format!("{g} is nonzero at {w}"),
        },
    ));

    let decomposition = verify_graded_decomposition(n, r, CountPath::Enumerate, cli.cap)?;
    checks.push(Check::new(
        "graded_decomposition",
        decomposition.passed(),
        Status::Inconsistency,
        format!("{} degrees compared", decomposition.rows.len()),
    ));

    let enumerated = count_enumerate(StatKind::C, n, r, cli.cap)?;
    let fast = count_fast(StatKind::C, n, r, DEFAULT_FAST_BOUND)?;
    checks.push(Check::new(
        "paths_agree",
        enumerated.same_counts(&fast),
        Status::Inconsistency,
        "enumeration against closed form",
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut bad = None;
    for _ in 0..RANDOM_TRIALS {
        let mut v: Vec<usize> = (1..=n).collect();
        v.shuffle(&mut rng);
        let kappa: Vec<usize> = (0..n).map(|_| rng.gen_range(0..r)).collect();
        let sigma = Permutation::new(v)?;
        let w = ColoredPermutation::new(sigma.clone(), kappa, r)?;
        let agree = iterated_shadows(&sigma.points()) == schensted_insert(&sigma);
        let degree_ok = shadow_monomial(&w).degree() as usize == r * n - colored_statistic(&w);
        if !(agree && degree_ok) {
            bad = Some(w.to_string());
            break;
        }
    }
    checks.push(Check::new(
        "random_insertion_and_degree",
        bad.is_none(),
        Status::Inconsistency,
        match &bad {
            None => format!("{RANDOM_TRIALS} seeded samples (seed {})", cli.seed),
            Some(w) => format!("fails at {w}"),
        },
    ));

    let body = match cli.format {
        Format::Text => format!("verify n = {n}, r = {r}\n{}", checks_text(&checks)),
        Format::Json => pretty(&json!({
            "schema": 1,
            "n": n,
            "r": r,
            "seed": cli.seed,
            "passed": all_pass(&checks),
            "checks": checks_json(&checks),
        })),
        Format::Csv => {
            let mut s = String::from("check,status\n");
            for c in &checks {
                let _ = writeln!(s, "{},{}", c.name, c.status.as_str());
            }
            s
        }
    };
    Ok(Report { body, passed: all_pass(&checks) })
}

fn histogram(cli: &Cli, kind: KindArg, n: usize, r: usize) -> Result<Report, CliError> {
    let kind = match kind {
        KindArg::A => StatKind::A,
        KindArg::B => StatKind::B,
        KindArg::C => StatKind::C,
    };
    let bound = DEFAULT_FAST_BOUND.max(n);
    let tables = match cli.path {
        PathChoice::Enumerate => vec![count_enumerate(kind, n, r, cli.cap)?],
        PathChoice::Fast => vec![count_fast(kind, n, r, bound)?],
        PathChoice::Both => vec![count_enumerate(kind, n, r, cli.cap)?, count_fast(kind, n, r, bound)?],
    };
    let agree = path_agreement(&tables);
    let passed = agree.as_ref().is_none_or(|c| c.status == Status::Pass);
    let table = tables.last().expect("at least one path");
    let body = match cli.format {
        Format::Csv | Format::Text => {
            let mut buf = Vec::new();
            write_histogram_csv(table, &mut buf).expect("writing to memory");
            String::from_utf8(buf).expect("csv is ascii")
        }
        Format::Json => {
            let mut v = table.to_json(Some(cli.cap));
            if let Some(c) = agree {
                v["checks"] = checks_json(&[c]);
            }
            pretty(&v)
        }
    };
    Ok(Report { body, passed })
}

fn chartable_text(t: &CharacterTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "classes:");
    for (mu, size) in t.classes.iter().zip(&t.class_sizes) {
        let _ = writeln!(s, "  {mu} size {size}");
    }
    for (lambda, row) in t.irreducibles.iter().zip(&t.values) {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{lambda}: {}", cells.join(" | "));
    }
    s
}

fn chartable(cli: &Cli, n: usize, r: usize) -> Result<Report, CliError> {
    let t = character_table_bounded(
        n,
        r,
        viennot_core::characters::CHARACTER_TABLE_MAX_N,
        viennot_core::characters::CHARACTER_TABLE_MAX_R,
    )?;
    let bad = t.orthogonality_failures();
    let checks = vec![Check::new(
        "row_orthogonality",
        bad.is_empty(),
        Status::Inconsistency,
        format!("{} rows, {} failing pairs", t.irreducibles.len(), bad.len()),
    )];
    let body = match cli.format {
        Format::Json => {
            let mut v = t.to_json();
            v["checks"] = checks_json(&checks);
            pretty(&v)
        }
        Format::Text => {
            let mut s = chartable_text(&t);
            s.push_str(&checks_text(&checks));
            s
        }
        Format::Csv => return Err(unsupported(cli.format, "chartable")),
    };
    Ok(Report { body, passed: all_pass(&checks) })
}
