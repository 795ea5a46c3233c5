use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use finitetop::classes::classify;
use finitetop::enumerate::{enumerate_topologies, EnumerationMode};
use finitetop::io::{load_operator, load_space, operator_to_json, parse_subset_list, space_to_json, subset_to_json};
use finitetop::laws::{self, Report, Status, VerifyOptions};
use finitetop::mine::{census, mine_str};
use finitetop::{BiOperatorSpace, NamedOperator, Operator, Subset, Topology};

#[derive(Parser)]
#[command(name = "finitetop", version, about = "Finite bi-operator topological spaces")]
struct Cli {
    /// Output format; `count` applies to `enumerate` only
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for sampled table operators
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads (0 = one per core); never changes the output
    #[arg(long, global = true, env = "FINITETOP_JOBS", default_value_t = 0)]
    jobs: usize,

    /// Upper bound on the number of points
    #[arg(long, global = true)]
    max_points: Option<usize>,

    /// First operator: a name or a table file
    #[arg(long, global = true, default_value = "int_cl")]
    t1: String,

    /// Second operator: a name or a table file
    #[arg(long, global = true, default_value = "cl_int")]
    t2: String,

    /// Further chain operators T3, T4, ...
    #[arg(long, global = true)]
    tn: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Count,
}

#[derive(Subcommand)]
enum Command {
    /// Class membership of every subset of a space
    Classify {
        /// Space file
        space: PathBuf,
        /// Only this subset, as comma-separated labels ("" for the empty set)
        #[arg(long)]
        subset: Option<String>,
    },
    /// All topologies on a number of points
    Enumerate {
        #[arg(long)]
        points: usize,
        /// Keep one representative per isomorphism class
        #[arg(long)]
        canonical: bool,
    },
    /// Check registered laws on every small instance
    Verify {
        #[arg(long, conflicts_with_all = ["all", "list"])]
        law: Option<String>,
        #[arg(long, conflicts_with = "list")]
        all: bool,
        /// Print the registry and exit
        #[arg(long)]
        list: bool,
    },
    /// Search (topology, subset) pairs satisfying a predicate
    Mine {
        #[arg(long)]
        predicate: String,
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Class-membership counts per number of points
    Census,
}

fn main() -> ExitCode {
    let code = exec(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code)
}

/// Parses `args`, runs the command and returns the process exit code.
fn exec<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e:#}");
            2
        }
    }
}

fn run(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<u8> {
    if cli.format == Format::Count && !matches!(cli.command, Command::Enumerate { .. }) {
        bail!("--format count is only valid for enumerate");
    }
    match &cli.command {
        Command::Classify { space, subset } => classify_cmd(cli, out, space, subset.as_deref()),
        Command::Enumerate { points, canonical } => enumerate_cmd(cli, out, *points, *canonical),
        Command::Verify { law, all, list } => verify_cmd(cli, out, law.as_deref(), *all, *list),
        Command::Mine { predicate, limit } => mine_cmd(cli, out, predicate, *limit),
        Command::Census => census_cmd(cli, out),
    }
}

fn print_json(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable"))
}

fn operator_args(cli: &Cli) -> Vec<&str> {
    [cli.t1.as_str(), cli.t2.as_str()]
        .into_iter()
        .chain(cli.tn.iter().map(String::as_str))
        .collect()
}

fn resolve_operator(arg: &str, t: &Topology) -> anyhow::Result<Operator> {
    match NamedOperator::from_name(arg) {
        Ok(op) => Ok(Operator::Named(op)),
        Err(e) if !Path::new(arg).exists() => Err(e.into()),
        Err(_) => Ok(load_operator(arg, t)?),
    }
}

fn named_operators(cli: &Cli) -> anyhow::Result<Vec<NamedOperator>> {
    operator_args(cli)
        .into_iter()
        .map(|a| NamedOperator::from_name(a).with_context(|| "this command takes operator names, not tables"))
        .collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "-"
    }
}

fn classify_cmd(cli: &Cli, out: &mut dyn Write, path: &Path, subset: Option<&str>) -> anyhow::Result<u8> {
    let t = load_space(path)?;
    let ops = operator_args(cli)
        .into_iter()
        .map(|a| resolve_operator(a, &t))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let space = BiOperatorSpace::new(t, ops)?;
    let t = space.topology();
    let subsets: Vec<Subset> = match subset {
        Some(s) => vec![parse_subset_list(t.ground(), s)?],
        None => t.ground().subsets().collect(),
    };
    let k = space.operators().len();
    let mut rows = Vec::new();
    for &s in &subsets {
        let mut flags = serde_json::to_value(classify(t, s))?;
        let obj = flags.as_object_mut().expect("flags object");
        obj.insert("B_open".into(), json!(space.is_b_open(s)));
        obj.insert("B_closed".into(), json!(space.is_b_closed(s)));
        for i in 1..=k {
            obj.insert(format!("t_star_open({i})"), json!(space.is_t_star_open(i, s)?));
            obj.insert(format!("t_open({i})"), json!(space.is_t_open(i, s)?));
        }
        if k > 2 {
            obj.insert(format!("chain_open({k})"), json!(space.is_chain_open(k, s)?));
        }
        rows.push((s, flags));
    }
    match cli.format {
        Format::Json => print_json(
            out,
            &json!({
                "space": space_to_json(t),
                "operators": space.operators().iter().map(|o| operator_to_json(o, t)).collect::<Vec<_>>(),
                "rows": rows.iter().map(|(s, f)| json!({"subset": subset_to_json(t.ground(), *s), "flags": f})).collect::<Vec<_>>(),
            }),
        )?,
        _ => {
            let labels = space
                .operators()
                .iter()
                .map(Operator::label)
                .collect::<Vec<_>>()
                .join(", ");
            writeln!(out, "operators: {labels}")?;
            let keys: Vec<String> = rows[0].1.as_object().expect("flags object").keys().cloned().collect();
            let width = subsets.iter().map(|&s| t.format(s).len()).max().unwrap_or(2).max(6);
            writeln!(out, "{:width$}  {}", "subset", keys.join("  "))?;
            for (s, f) in &rows {
                let cells: Vec<String> = keys
                    .iter()
                    .map(|key| format!("{:<w$}", yes(f[key] == json!(true)), w = key.len()))
                    .collect();
                writeln!(out, "{:width$}  {}", t.format(*s), cells.join("  ").trim_end())?;
            }
        }
    }
    Ok(0)
}

fn enumerate_cmd(cli: &Cli, out: &mut dyn Write, points: usize, canonical: bool) -> anyhow::Result<u8> {
    let mode = if canonical {
        EnumerationMode::Canonical
    } else {
        EnumerationMode::Labeled
    };
    let tops = enumerate_topologies(points, mode)?;
    match cli.format {
        Format::Count => writeln!(out, "{}", tops.len())?,
        Format::Json => print_json(out, &json!(tops.iter().map(space_to_json).collect::<Vec<_>>()))?,
        Format::Text => {
            for t in &tops {
                let opens: Vec<String> = t.opens().iter().map(|u| t.format(u)).collect();
                writeln!(out, "{}", opens.join(" "))?;
            }
            writeln!(out, "# {} topologies on {points} points", tops.len())?;
        }
    }
    Ok(0)
}

fn report_line(r: &Report) -> String {
    format!(
        "{:<36} {:<14} checked={:<8} hits={:<8} counterexamples={:<6}{}  [{} ms]",
        r.law,
        r.status.as_str(),
        r.instances_checked,
        r.hypothesis_hits,
        r.counterexamples,
        if r.trivial_on_finite { " trivial-on-finite" } else { "" },
        r.runtime_ms
    )
}

fn verify_cmd(cli: &Cli, out: &mut dyn Write, law: Option<&str>, all: bool, list: bool) -> anyhow::Result<u8> {
    if list {
        for l in laws::registry() {
            writeln!(out, "{:<36} {}", l.id, l.description)?;
        }
        return Ok(0);
    }
    let opts = VerifyOptions {
        max_points: cli.max_points,
        seed: cli.seed,
        jobs: cli.jobs,
    };
    let reports = match (law, all) {
        (Some(id), _) => vec![laws::verify(id, &opts)?],
        (None, true) => laws::verify_all(&opts)?,
        (None, false) => bail!("verify needs --law ID, --all or --list"),
    };
    match (cli.format, law) {
        (Format::Json, Some(_)) => print_json(out, &reports[0].to_json())?,
        (Format::Json, None) => print_json(out, &laws::reports_to_json(&reports))?,
        _ => {
            for r in &reports {
                writeln!(out, "{}", report_line(r))?;
                if let Some(note) = &r.note {
                    writeln!(out, "    note: {note}")?;
                }
                if let Some(w) = &r.witness {
                    writeln!(out, "    witness: {w}")?;
                }
            }
            let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
            writeln!(
                out,
                "{} laws: {} verified, {} counterexample, {} vacuous",
                reports.len(),
                count(Status::Verified),
                count(Status::Counterexample),
                count(Status::Vacuous)
            )?;
        }
    }
    let failed = reports.iter().any(|r| r.status == Status::Counterexample);
    Ok(if failed { 1 } else { 0 })
}

fn mine_cmd(cli: &Cli, out: &mut dyn Write, predicate: &str, limit: usize) -> anyhow::Result<u8> {
    let ops = named_operators(cli)?;
    let result = mine_str(predicate, cli.max_points.unwrap_or(4), &ops, limit)?;
    match cli.format {
        Format::Json => print_json(out, &result.to_json())?,
        _ => {
            writeln!(out, "predicate: {}", result.predicate)?;
            for l in &result.levels {
                writeln!(
                    out,
                    "n={}  topologies={}  pairs={}  matches={}",
                    l.n, l.topologies, l.pairs, l.matches
                )?;
            }
            for w in &result.witnesses {
                let t = &w.topology;
                let opens: Vec<String> = t.opens().iter().map(|u| t.format(u)).collect();
                writeln!(
                    out,
                    "n={}  opens: {}  S={}",
                    t.len(),
                    opens.join(" "),
                    t.format(w.subset)
                )?;
            }
            if result.is_absent() {
                let n = result.levels.last().map_or(0, |l| l.n);
                writeln!(
                    out,
                    "no witness: exhaustive scan of every topology and subset up to n={n}"
                )?;
            }
        }
    }
    Ok(0)
}

fn census_cmd(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<u8> {
    let ops = named_operators(cli)?;
    let rows = census(cli.max_points.unwrap_or(4), &ops)?;
    match cli.format {
        Format::Json => print_json(out, &serde_json::to_value(&rows)?)?,
        _ => {
            let keys: Vec<&String> = rows[0].counts.keys().collect();
            writeln!(
                out,
                "{:>2} {:>10} {:>8}  {}",
                "n",
                "topologies",
                "pairs",
                keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(" ")
            )?;
            for r in &rows {
                let cells: Vec<String> = keys
                    .iter()
                    .map(|k| format!("{:>w$}", r.counts[*k], w = k.len()))
                    .collect();
                writeln!(
                    out,
                    "{:>2} {:>10} {:>8}  {}",
                    r.n,
                    r.topologies,
                    r.pairs,
                    cells.join(" ")
                )?;
            }
        }
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use std::path::{Path, PathBuf};

    use serde_json::Value;
    use tempfile::TempDir;

    use super::exec;

    struct Run {
        code: u8,
        stdout: String,
        stderr: String,
    }

    fn run(args: &[&str]) -> Run {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = exec(
            std::iter::once("finitetop").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        Run {
            code,
            stdout: String::from_utf8(out).unwrap(),
            stderr: String::from_utf8(err).unwrap(),
        }
    }

    fn json(r: &Run) -> Value {
        serde_json::from_str(&r.stdout).expect("valid JSON on stdout")
    }

    fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn sierpinski(dir: &Path) -> String {
        write(
            dir,
            "sierpinski.json",
            r#"{"points": ["a", "b"], "opens": [[], ["a"], ["a", "b"]]}"#,
        )
        .to_string_lossy()
        .into_owned()
    }

    #[test]
    fn classify_sierpinski() {
        let dir = TempDir::new().unwrap();
        let out = run(&["classify", &sierpinski(dir.path()), "--format", "json"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v = json(&out);
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 4);
        let b = rows.iter().find(|r| r["subset"] == serde_json::json!(["b"])).unwrap();
        assert_eq!(b["flags"]["b_open"], false);
        assert_eq!(b["flags"]["B_open"], false);
        let text = run(&["classify", &sierpinski(dir.path())]);
        assert_eq!(text.stdout.lines().count(), 6);
    }

    #[test]
    fn classify_empty_subset() {
        let dir = TempDir::new().unwrap();
        let out = run(&["classify", &sierpinski(dir.path()), "--subset", "", "--format", "json"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v = json(&out);
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0]["subset"], serde_json::json!([]));
        for (k, flag) in rows[0]["flags"].as_object().unwrap() {
            if k.contains("open") {
                assert_eq!(flag, true, "{k}");
            }
        }
    }

    #[test]
    fn classify_rejects_invalid_family() {
        let dir = TempDir::new().unwrap();
        let bad = write(
            dir.path(),
            "bad.json",
            r#"{"points": ["a", "b", "c"], "opens": [[], ["a"], ["b"], ["a", "b", "c"]]}"#,
        );
        let out = run(&["classify", bad.to_str().unwrap()]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("NotClosedUnderUnion: {a},{b}"), "{}", out.stderr);
    }

    #[test]
    fn classify_with_a_table_operator() {
        let dir = TempDir::new().unwrap();
        let table = write(
            dir.path(),
            "t1.json",
            r#"{"table": {"": [], "a": ["a", "b"], "b": ["b"], "a,b": ["a", "b"]}}"#,
        );
        let out = run(&[
            "classify",
            &sierpinski(dir.path()),
            "--t1",
            table.to_str().unwrap(),
            "--format",
            "json",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v = json(&out);
        assert!(v["operators"][0]["table"].is_object());
        assert_eq!(v["operators"][1]["name"], "cl_int");
        let b = &v["rows"][2];
        assert_eq!(b["subset"], serde_json::json!(["b"]));
        assert_eq!(b["flags"]["t_star_open(1)"], true);
        assert_eq!(b["flags"]["B_open"], true);

        let partial = write(dir.path(), "t2.json", r#"{"table": {"": [], "a": ["a"]}}"#);
        let out = run(&["classify", &sierpinski(dir.path()), "--t2", partial.to_str().unwrap()]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn unknown_operator_is_an_input_error() {
        let dir = TempDir::new().unwrap();
        let out = run(&["classify", &sierpinski(dir.path()), "--t1", "closure"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("int_cl"));
    }

    #[test]
    fn enumerate_formats_and_bounds() {
        let count = run(&["enumerate", "--points", "3", "--format", "count"]);
        assert_eq!(count.stdout.trim(), "29");
        let canonical = run(&["enumerate", "--points", "4", "--canonical", "--format", "count"]);
        assert_eq!(canonical.stdout.trim(), "33");
        let v = json(&run(&["enumerate", "--points", "2", "--format", "json"]));
        assert_eq!(v.as_array().unwrap().len(), 4);
        assert!(v[0]["points"].is_array() && v[0]["opens"].is_array());
        let big = run(&["enumerate", "--points", "7"]);
        assert_eq!(big.code, 2);
        assert!(big.stderr.contains("SizeExceeded"), "{}", big.stderr);
        let bad_format = run(&["census", "--format", "count"]);
        assert_eq!(bad_format.code, 2);
    }

    #[test]
    fn verify_exit_codes() {
        let ok = run(&["verify", "--law", "lemma-BInt-decomposition"]);
        assert_eq!(ok.code, 0);
        assert!(ok.stdout.contains("verified"));
        let bad = run(&["verify", "--law", "selftest-bopen-implies-semiopen", "--format", "json"]);
        assert_eq!(bad.code, 1);
        let v = json(&bad);
        assert_eq!(v["status"], "counterexample");
        assert!(v["witness"]["subsets"]["S"].is_array());
        let unknown = run(&["verify", "--law", "no-such-law"]);
        assert_eq!(unknown.code, 2);
        let neither = run(&["verify"]);
        assert_eq!(neither.code, 2);
        let list = run(&["verify", "--list"]);
        assert_eq!(list.code, 0);
        assert_eq!(list.stdout.lines().count(), 29);
    }

    #[test]
    fn verify_all_is_repeatable() {
        let args = ["verify", "--all", "--max-points", "2", "--format", "json"];
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.code, 1);
        assert_eq!(a.stdout, b.stdout);
        let text = run(&["verify", "--all", "--max-points", "2"]);
        assert!(text.stdout.contains("29 laws:"));
    }

    #[test]
    fn mine_outputs() {
        let out = run(&[
            "mine",
            "--predicate",
            "b_open & !pre_open & !semi_open",
            "--max-points",
            "4",
        ]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("no witness: exhaustive scan"), "{}", out.stdout);
        let v = json(&run(&[
            "mine",
            "--predicate",
            "pre_open & !semi_open",
            "--limit",
            "2",
            "--format",
            "json",
        ]));
        assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);
        assert_eq!(v["absent"], false);
        let parse = run(&["mine", "--predicate", "b_open & !"]);
        assert_eq!(parse.code, 2);
        assert!(parse.stderr.contains("position 10"), "{}", parse.stderr);
    }

    #[test]
    fn census_row_four() {
        let out = run(&["census", "--max-points", "4", "--format", "json"]);
        assert_eq!(out.code, 0);
        let v = json(&out);
        assert_eq!(v[3]["n"], 4);
        assert_eq!(v[3]["topologies"], 355);
        assert_eq!(v[3]["counts"]["open"], 2338);
        assert_eq!(v[3]["counts"]["b_open"], 3924);
        let text = run(&["census", "--max-points", "4"]).stdout;
        assert!(
            text.lines().any(|l| l.split_whitespace().take(2).eq(["4", "355"])),
            "{text}"
        );
    }

    #[test]
    fn help_and_usage_errors() {
        assert_eq!(run(&["--help"]).code, 0);
        assert_eq!(run(&["frobnicate"]).code, 2);
        assert_eq!(run(&["enumerate"]).code, 2);
    }
}
