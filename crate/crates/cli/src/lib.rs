//! Command-line front end: file formats, dispatch, and SVG rendering.
//!
//! Curve files are plain text with one point per line (two decimal numbers
//! separated by whitespace); `#` starts a comment line and blank lines are
//! skipped. Matching files use the same shape and store diagram parameters
//! (`x y` per line for continuous matchings, `i j` vertex indices for
//! discrete ones), so verification is exact against the curve files.

use std::fmt::Write as _;

use lcfm::{
    build_grid, compute_discrete_lcfm, compute_lcfm, discrete_frechet, enumerate_events,
    frechet_distance, verify_lc_continuous, verify_lc_discrete, Curve2d, EventKind,
    ParamMatching2d, ParamPoint2d, Point2d, Side,
};

pub mod svg;

/// Outcome of one command invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput {
            status: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(status: i32, stderr: String) -> Self {
        CommandOutput {
            status,
            stdout: String::new(),
            stderr,
        }
    }
}

const USAGE: &str = "usage: lcfm <command> [args]

commands:
  distance  P.txt Q.txt                    Fréchet distance
  ddistance P.txt Q.txt                    discrete Fréchet distance
  match     P.txt Q.txt [--out F] [--svg F]  locally correct matching
  dmatch    P.txt Q.txt [--out F]          discrete locally correct matching
  verify    P.txt Q.txt M.txt [--discrete] check a matching for local correctness
  events    P.txt Q.txt                    list critical events
";

/// Parses a curve file, reporting the offending line on error.
pub fn parse_curve_file(text: &str) -> Result<Curve2d, String> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(format!(
                "line {}: expected two coordinates, found {}",
                lineno + 1,
                fields.len()
            ));
        }
        let x: f64 = fields[0]
            .parse()
            .map_err(|_| format!("line {}: malformed number {:?}", lineno + 1, fields[0]))?;
        let y: f64 = fields[1]
            .parse()
            .map_err(|_| format!("line {}: malformed number {:?}", lineno + 1, fields[1]))?;
        points.push(Point2d::new(x, y));
    }
    Curve2d::new(points).map_err(|e| e.to_string())
}

/// Parses a continuous matching file: one `x y` diagram parameter pair per
/// line.
pub fn parse_matching_file(text: &str) -> Result<Vec<ParamPoint2d>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(format!("line {}: expected two parameters", lineno + 1));
        }
        let x: f64 = fields[0]
            .parse()
            .map_err(|_| format!("line {}: malformed number {:?}", lineno + 1, fields[0]))?;
        let y: f64 = fields[1]
            .parse()
            .map_err(|_| format!("line {}: malformed number {:?}", lineno + 1, fields[1]))?;
        out.push(ParamPoint2d::new(x, y));
    }
    Ok(out)
}

/// Parses a discrete matching file: one `i j` vertex index pair per line.
pub fn parse_node_file(text: &str) -> Result<Vec<(usize, usize)>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(format!("line {}: expected two indices", lineno + 1));
        }
        let i: usize = fields[0]
            .parse()
            .map_err(|_| format!("line {}: malformed index {:?}", lineno + 1, fields[0]))?;
        let j: usize = fields[1]
            .parse()
            .map_err(|_| format!("line {}: malformed index {:?}", lineno + 1, fields[1]))?;
        out.push((i, j));
    }
    Ok(out)
}

/// Twelve significant digits in plain decimal notation.
pub fn fmt_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0.00000000000".to_string();
    }
    let mut exp = v.abs().log10().floor() as i32;
    if 10f64.powi(exp + 1) <= v.abs() {
        exp += 1;
    } else if 10f64.powi(exp) > v.abs() {
        exp -= 1;
    }
    let decimals = (11 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

pub fn matching_to_text(matching: &ParamMatching2d) -> String {
    let mut out = String::new();
    for pt in matching.path() {
        let _ = writeln!(out, "{} {}", pt.x, pt.y);
    }
    out
}

pub fn nodes_to_text(path: &[(usize, usize)]) -> String {
    let mut out = String::new();
    for (i, j) in path {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}

fn boundary_to_text(pos: &lcfm::BoundaryPos<f64>) -> String {
    let side = match pos.side {
        Side::Left => "left",
        Side::Bottom => "bottom",
    };
    format!("{side}[{},{}]@{}", pos.col, pos.row, pos.offset)
}

fn read_file(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

fn write_file(path: &str, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("{path}: {e}"))
}

fn load_curves(p_path: &str, q_path: &str) -> Result<(Curve2d, Curve2d), String> {
    let p = parse_curve_file(&read_file(p_path)?).map_err(|e| format!("{p_path}: {e}"))?;
    let q = parse_curve_file(&read_file(q_path)?).map_err(|e| format!("{q_path}: {e}"))?;
    Ok((p, q))
}

/// Parses `--out`/`--svg`-style options from the tail of an argument list.
fn parse_options<'a>(
    args: &'a [String],
    allowed: &[&str],
) -> Result<Vec<(&'a str, Option<&'a str>)>, String> {
    let mut out = Vec::new();
    let mut k = 0;
    while k < args.len() {
        let flag = args[k].as_str();
        if !allowed.contains(&flag) {
            return Err(format!("unknown option {flag:?}"));
        }
        if flag == "--discrete" {
            out.push((flag, None));
            k += 1;
        } else {
            let value = args
                .get(k + 1)
                .ok_or_else(|| format!("option {flag} needs a value"))?;
            out.push((flag, Some(value.as_str())));
            k += 2;
        }
    }
    Ok(out)
}

/// Dispatches one command line (without the program name).
pub fn run_command(args: &[String]) -> CommandOutput {
    match run_inner(args) {
        Ok(out) => out,
        Err(msg) => CommandOutput::fail(1, format!("error: {msg}\n{USAGE}")),
    }
}

fn run_inner(args: &[String]) -> Result<CommandOutput, String> {
    let command = args.first().map(String::as_str).unwrap_or("");
    match command {
        "distance" | "ddistance" => {
            let [p_path, q_path] = positional::<2>(&args[1..])?;
            let (p, q) = load_curves(p_path, q_path)?;
            let d = if command == "distance" {
                frechet_distance(&p, &q)
            } else {
                discrete_frechet(&build_grid(&p, &q))
            };
            Ok(CommandOutput::ok(format!("{}\n", fmt_sig12(d))))
        }
        "match" => {
            let (pos, rest) = split_positional(&args[1..], 2)?;
            let opts = parse_options(rest, &["--out", "--svg"])?;
            let (p, q) = load_curves(pos[0], pos[1])?;
            let matching = compute_lcfm(&p, &q);
            let text = matching_to_text(&matching);
            let mut stdout = String::new();
            let mut wrote = false;
            for (flag, value) in opts {
                match flag {
                    "--out" => {
                        write_file(value.unwrap(), &text)?;
                        wrote = true;
                    }
                    "--svg" => {
                        write_file(value.unwrap(), &svg::render_svg(&p, &q, Some(&matching), true))?;
                    }
                    _ => unreachable!(),
                }
            }
            if !wrote {
                stdout = text;
            }
            Ok(CommandOutput::ok(stdout))
        }
        "dmatch" => {
            let (pos, rest) = split_positional(&args[1..], 2)?;
            let opts = parse_options(rest, &["--out"])?;
            let (p, q) = load_curves(pos[0], pos[1])?;
            let path = compute_discrete_lcfm(&p, &q);
            let text = nodes_to_text(&path);
            if let Some((_, value)) = opts.first() {
                write_file(value.unwrap(), &text)?;
                Ok(CommandOutput::ok(String::new()))
            } else {
                Ok(CommandOutput::ok(text))
            }
        }
        "verify" => {
            let (pos, rest) = split_positional(&args[1..], 3)?;
            let opts = parse_options(rest, &["--discrete"])?;
            let discrete = opts.iter().any(|(f, _)| *f == "--discrete");
            let (p, q) = load_curves(pos[0], pos[1])?;
            let text = read_file(pos[2])?;
            if discrete {
                let path = parse_node_file(&text).map_err(|e| format!("{}: {e}", pos[2]))?;
                let grid = build_grid(&p, &q);
                let report = verify_lc_discrete(&grid, &path).map_err(|e| e.to_string())?;
                Ok(report_output(
                    report.passed(),
                    report.failures.first().map(|f| {
                        format!(
                            "nodes {}..{}: optimum {} but path maximum {}",
                            f.witness.0, f.witness.1, f.expected, f.observed
                        )
                    }),
                ))
            } else {
                let path = parse_matching_file(&text).map_err(|e| format!("{}: {e}", pos[2]))?;
                let matching =
                    ParamMatching2d::new(&p, &q, path).map_err(|e| e.to_string())?;
                let report =
                    verify_lc_continuous(&p, &q, &matching).map_err(|e| e.to_string())?;
                Ok(report_output(
                    report.passed(),
                    report.failures.first().map(|f| {
                        format!(
                            "path vertices {}..{}: subcurve distance {} but matched maximum {}",
                            f.witness.0, f.witness.1, f.expected, f.observed
                        )
                    }),
                ))
            }
        }
        "events" => {
            let [p_path, q_path] = positional::<2>(&args[1..])?;
            let (p, q) = load_curves(p_path, q_path)?;
            let (m, n) = (p.edge_count(), q.edge_count());
            if m < 1 || n < 1 || m + n <= 2 {
                return Err("events needs curves spanning more than one cell".to_string());
            }
            let mut out = String::new();
            for e in enumerate_events(&p, &q) {
                let kind = match e.kind {
                    EventKind::A => "A",
                    EventKind::B => "B",
                    EventKind::C => "C",
                };
                let _ = writeln!(
                    out,
                    "{kind} {} {} {}",
                    fmt_sig12(e.value),
                    boundary_to_text(&e.end),
                    boundary_to_text(&e.start),
                );
            }
            Ok(CommandOutput::ok(out))
        }
        "" => Err("missing command".to_string()),
        other => Err(format!("unknown command {other:?}")),
    }
}

fn report_output(passed: bool, witness: Option<String>) -> CommandOutput {
    if passed {
        CommandOutput::ok("locally correct\n".to_string())
    } else {
        CommandOutput {
            status: 2,
            stdout: String::new(),
            stderr: format!("not locally correct: {}\n", witness.unwrap_or_default()),
        }
    }
}

fn positional<const N: usize>(args: &[String]) -> Result<[&str; N], String> {
    let (pos, rest) = split_positional(args, N)?;
    if !rest.is_empty() {
        return Err(format!("unexpected argument {:?}", rest[0]));
    }
    Ok(std::array::from_fn(|k| pos[k]))
}

fn split_positional(args: &[String], n: usize) -> Result<(Vec<&str>, &[String]), String> {
    if args.len() < n {
        return Err(format!(
            "expected {n} file argument(s), found {}",
            args.len()
        ));
    }
    let pos: Vec<&str> = args[..n].iter().map(String::as_str).collect();
    for a in &pos {
        if a.starts_with("--") {
            return Err(format!("expected a file argument, found option {a:?}"));
        }
    }
    Ok((pos, &args[n..]))
}
