use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};
use symex_core::bigcomb::{choose, stirling_first_row};
use symex_core::coeffs::{coeff_closed_sequence, coeff_recurrence, verify_convolution};
use symex_core::esp::{esp_by, time_median};
use symex_core::verify::{random_root_sets, run_all, run_suite, Check, Suite, VerifyConfig};
use symex_core::{
    esp_extraction_with, specialize as specialize_rows, Error, ExtractionOptions, Family, Method,
    RootSet, SieveShape, Strategy,
};

use crate::{MethodArg, Outcome, SuiteArg};

const USAGE: u8 = 2;
const DOMAIN: u8 = 3;

fn ok(stdout: String) -> Outcome {
    Outcome {
        stdout,
        stderr: String::new(),
        code: 0,
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
        code,
    }
}

fn json_line(value: &Value) -> String {
    format!("{value}\n")
}

fn dec(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

pub fn compute(
    roots: &RootSet,
    i: usize,
    method: MethodArg,
    explain: bool,
    json: bool,
    explain_limit: usize,
) -> Outcome {
    let single = match method {
        MethodArg::Direct => Some(Method::Direct),
        MethodArg::Dp => Some(Method::Dp),
        MethodArg::Extraction => Some(Method::Extraction),
        MethodArg::All => None,
    };
    match single {
        Some(Method::Extraction) => compute_extraction(roots, i, explain, json, explain_limit),
        Some(m) => {
            let value = esp_by(m, roots, i, Strategy::default()).expect("only extraction refuses");
            let mut out = if json {
                json_line(&json!({ "value": dec(&value), "method": m.name() }))
            } else {
                format!("{value}\n")
            };
            if explain && !json {
                out.push_str("# --explain applies to --method extraction only\n");
            }
            ok(out)
        }
        None => {
            let mut values = Vec::new();
            for m in Method::ALL {
                match esp_by(m, roots, i, Strategy::default()) {
                    Ok(v) => values.push((m, v)),
                    Err(e) => return fail(DOMAIN, e),
                }
            }
            let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
            let out = if json {
                let per: serde_json::Map<String, Value> = values
                    .iter()
                    .map(|(m, v)| (m.name().to_string(), dec(v)))
                    .collect();
                json_line(&json!({
                    "value": dec(&values[0].1),
                    "method": "all",
                    "values": per,
                    "agree": agree,
                }))
            } else {
                let mut s = String::new();
                for (m, v) in &values {
                    let _ = writeln!(s, "{:<10} {v}", m.name());
                }
                s
            };
            Outcome {
                stdout: out,
                stderr: if agree {
                    String::new()
                } else {
                    "error: methods disagree\n".into()
                },
                code: if agree { 0 } else { 1 },
            }
        }
    }
}

fn compute_extraction(
    roots: &RootSet,
    i: usize,
    explain: bool,
    json: bool,
    explain_limit: usize,
) -> Outcome {
    let opts = ExtractionOptions {
        explain_limit,
        ..ExtractionOptions::default()
    };
    let (value, breakdown) = match esp_extraction_with(roots, i, &opts) {
        Ok(r) => r,
        Err(e @ Error::OrderExceedsSize { .. }) => {
            return fail(
                DOMAIN,
                format!("{e}; the extraction sieve needs i <= n (use --method direct)"),
            )
        }
        Err(e) => return fail(DOMAIN, e),
    };
    if json {
        let terms: Vec<Value> = breakdown
            .terms
            .iter()
            .map(|t| {
                json!({
                    "h": t.h,
                    "weight": dec(&t.weight),
                    "bracket_total": dec(&t.bracket_total),
                })
            })
            .collect();
        return ok(json_line(&json!({
            "value": dec(&value),
            "method": "extraction",
            "breakdown": { "head": dec(&breakdown.head), "terms": terms },
        })));
    }
    if !explain {
        return ok(format!("{value}\n"));
    }
    let mut s = String::new();
    let _ = writeln!(s, "e_{i} of {roots} = {value}");
    let _ = writeln!(s, "head: C({}, {i}) = {}", roots.sum(), breakdown.head);
    for t in &breakdown.terms {
        let _ = writeln!(
            s,
            "h={} weight={} bracket over {}-subsets: total {}",
            t.h,
            t.weight,
            i - t.h,
            t.bracket_total
        );
        match &t.bracket {
            Some(entries) => {
                for (subset, v) in entries {
                    let sum: u64 = subset.indices().iter().map(|&j| roots.get(j)).sum();
                    let _ = writeln!(s, "  {subset} C({sum}, {i}) = {v}");
                }
            }
            None => {
                let _ = writeln!(
                    s,
                    "  (entries omitted: n = {} > explain-limit)",
                    roots.len()
                );
            }
        }
    }
    let _ = writeln!(s, "total: {}", breakdown.total);
    ok(s)
}

pub fn coeffs(n: usize, i: usize, h_max: usize, json: bool) -> Outcome {
    let shape = match SieveShape::new(n, i) {
        Ok(s) => s,
        Err(e) => return fail(USAGE, e),
    };
    if h_max == 0 {
        return fail(USAGE, "--h-max must be at least 1");
    }
    let rec = coeff_recurrence(shape, h_max);
    let closed = coeff_closed_sequence(shape, h_max);
    let conv = verify_convolution(shape, h_max, &closed);
    let rows: Vec<(usize, &BigInt, &BigInt, &BigInt)> = (1..=h_max)
        .map(|h| {
            (
                h,
                &rec.values[h - 1],
                &closed.values[h - 1],
                &conv.rows[h - 1].sum,
            )
        })
        .collect();
    let consistent = rec.values == closed.values && conv.passed();
    let stdout = if json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|(h, r, c, s)| json!({ "h": h, "recurrence": dec(r), "closed": dec(c), "convolution": dec(s) }))
            .collect();
        json_line(&json!({ "n": n, "i": i, "rows": rows, "consistent": consistent }))
    } else {
        let mut s = format!(
            "{:>3} {:>14} {:>14} {:>12}\n",
            "h", "recurrence", "closed", "convolution"
        );
        for (h, r, c, sum) in &rows {
            let _ = writeln!(s, "{h:>3} {r:>14} {c:>14} {sum:>12}");
        }
        s
    };
    Outcome {
        stdout,
        stderr: if consistent {
            String::new()
        } else {
            "error: routes disagree\n".into()
        },
        code: if consistent { 0 } else { 1 },
    }
}

fn check_json(c: &Check) -> Value {
    json!({
        "suite": c.suite.name(),
        "name": c.name,
        "passed": c.passed(),
        "instances": c.instances,
        "failure": c.failure,
        "note": c.note,
    })
}

pub fn verify(suite: SuiteArg, seed: u64, truncation: usize, json: bool) -> Outcome {
    let cfg = VerifyConfig {
        seed,
        truncation,
        ..VerifyConfig::default()
    };
    let (label, checks) = match suite {
        SuiteArg::All => ("all", run_all(&cfg)),
        other => {
            let s = match other {
                SuiteArg::Equivalence => Suite::Equivalence,
                SuiteArg::Convolution => Suite::Convolution,
                SuiteArg::Vandermonde => Suite::Vandermonde,
                SuiteArg::Gf => Suite::Gf,
                SuiteArg::Layers => Suite::Layers,
                SuiteArg::Multiplicity => Suite::Multiplicity,
                SuiteArg::All => unreachable!(),
            };
            (s.name(), run_suite(s, &cfg))
        }
    };
    let failed = checks.iter().filter(|c| !c.passed()).count();
    let stdout = if json {
        json_line(&json!({
            "suite": label,
            "seed": seed,
            "truncation": truncation,
            "checks": checks.iter().map(check_json).collect::<Vec<_>>(),
            "passed": failed == 0,
        }))
    } else {
        let mut s = format!("# symex verify suite={label} seed={seed} truncation={truncation}\n");
        for c in &checks {
            let _ = writeln!(s, "{c}");
        }
        let _ = writeln!(
            s,
            "# {} checks, {} passed, {failed} failed",
            checks.len(),
            checks.len() - failed
        );
        s
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: u8::from(failed > 0),
    }
}

pub struct BenchArgs {
    pub n: Option<usize>,
    pub i: Option<usize>,
    pub methods: Vec<Method>,
    pub roots: Option<RootSet>,
    pub seed: u64,
    pub reps: usize,
    pub json: bool,
}

struct Cell {
    n: usize,
    i: usize,
    value: BigInt,
    agree: bool,
    timings: Vec<(Method, std::time::Duration)>,
}

pub fn bench(args: BenchArgs) -> Outcome {
    use rand::SeedableRng;

    if args.methods.is_empty() {
        return fail(
            USAGE,
            "--methods must name at least one of dp, extraction, direct",
        );
    }
    let mut methods = args.methods.clone();
    methods.dedup();
    let reps = args.reps.max(3);
    let sizes: Vec<usize> = match (&args.roots, args.n) {
        (Some(r), _) => vec![r.len()],
        (None, Some(n)) => vec![n],
        (None, None) => vec![6, 10, 14, 18],
    };
    if sizes.contains(&0) {
        return fail(USAGE, "--n must be at least 1");
    }
    let orders: Vec<usize> = args.i.map_or_else(|| vec![2, 3, 4], |i| vec![i]);
    if let (Some(r), Some(n)) = (&args.roots, args.n) {
        if r.len() != n {
            return fail(USAGE, format!("--n {n} conflicts with {} roots", r.len()));
        }
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
    let mut cells = Vec::new();
    for &n in &sizes {
        let roots = match &args.roots {
            Some(r) => r.clone(),
            None => random_root_sets(&mut rng, 1, n..=n, 9).remove(0),
        };
        for &i in &orders {
            if i > n {
                continue;
            }
            let mut values = Vec::new();
            let mut timings = Vec::new();
            for &m in &methods {
                let (value, median) =
                    time_median(reps, || esp_by(m, &roots, i, Strategy::default()));
                match value {
                    Ok(v) => values.push(v),
                    Err(e) => return fail(DOMAIN, e),
                }
                timings.push((m, median));
            }
            let agree = values.windows(2).all(|w| w[0] == w[1]);
            cells.push(Cell {
                n,
                i,
                value: values.swap_remove(0),
                agree,
                timings,
            });
        }
    }
    if cells.is_empty() {
        return fail(USAGE, "no (n, i) cell with i <= n in the requested grid");
    }
    let all_agree = cells.iter().all(|c| c.agree);
    let names: Vec<&str> = methods.iter().map(|m| m.name()).collect();
    let stdout = if args.json {
        let records: Vec<Value> = cells
            .iter()
            .map(|c| {
                let t: serde_json::Map<String, Value> = c
                    .timings
                    .iter()
                    .map(|(m, d)| (m.name().to_string(), json!(d.as_nanos() as u64)))
                    .collect();
                json!({ "n": c.n, "i": c.i, "value": dec(&c.value), "agree": c.agree, "median_ns": t })
            })
            .collect();
        json_line(&Value::Array(records))
    } else {
        let mut s = format!(
            "# symex bench seed={} reps={reps} methods={}\n",
            args.seed,
            names.join(",")
        );
        let _ = write!(s, "{:>4} {:>4} {:>24}", "n", "i", "value");
        for name in &names {
            let _ = write!(s, " {:>14}", format!("{name}_us"));
        }
        s.push_str("  agree\n");
        for c in &cells {
            let _ = write!(s, "{:>4} {:>4} {:>24}", c.n, c.i, c.value);
            for (_, d) in &c.timings {
                let _ = write!(s, " {:>14.1}", d.as_secs_f64() * 1e6);
            }
            let _ = writeln!(s, "  {}", if c.agree { "yes" } else { "NO" });
        }
        s
    };
    Outcome {
        stdout,
        stderr: if all_agree {
            String::new()
        } else {
            "error: methods disagree\n".into()
        },
        code: u8::from(!all_agree),
    }
}

pub fn specialize(family: Family, rows: usize, json: bool) -> Outcome {
    if rows == 0 {
        return fail(USAGE, "--rows must be at least 1");
    }
    let triangle = specialize_rows(family, rows);
    // cross-check against independent recurrences
    let mut mismatch = None;
    for (idx, row) in triangle.iter().enumerate() {
        let n = idx + 1;
        let expected: Vec<BigInt> = match family {
            Family::Pascal => (0..=n).map(|k| choose(n as i64, k)).collect(),
            Family::Stirling1 => {
                let s = stirling_first_row(n + 1);
                (0..=n)
                    .map(|k| s[n + 1 - k].magnitude().clone().into())
                    .collect()
            }
        };
        if row != &expected && mismatch.is_none() {
            mismatch = Some(n);
        }
    }
    let stdout = if json {
        let rows: Vec<Vec<Value>> = triangle
            .iter()
            .map(|row| row.iter().map(dec).collect())
            .collect();
        let name = match family {
            Family::Pascal => "pascal",
            Family::Stirling1 => "stirling1",
        };
        json_line(&json!({ "family": name, "rows": rows }))
    } else {
        let mut s = String::new();
        for row in &triangle {
            let line: Vec<String> = row.iter().map(BigInt::to_string).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    };
    match mismatch {
        None => ok(stdout),
        Some(n) => Outcome {
            stdout,
            stderr: format!("error: row {n} disagrees with the reference recurrence\n"),
            code: 1,
        },
    }
}
