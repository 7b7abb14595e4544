use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bai"))
        .args(args)
        .output()
        .expect("failed to launch bai")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn line<'a>(text: &'a str, prefix: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(prefix))
        .unwrap_or_else(|| panic!("no line starting with {prefix:?} in\n{text}"))
}

fn numbers(s: &str) -> Vec<f64> {
    s.split_whitespace().map(|x| x.parse().unwrap()).collect()
}

fn write_experiment(dir: &Path, name: &str, json: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, json).unwrap();
    p
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn solve_reproduces_table_weights() {
    let o = bai(&["solve", "0.9", "0.8", "0.6", "0.4", "0.4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let w = numbers(line(&out, "w = "));
    let shown: Vec<String> = w.iter().map(|x| format!("{x:.3}")).collect();
    assert_eq!(shown.join(" "), "0.477 0.476 0.028 0.010 0.010");
    // Weights are printed with six decimals.
    assert!(line(&out, "w = ").split_whitespace().all(|x| x.split('.').nth(1).unwrap().len() == 6));
    assert!(out.contains("bounds T in"));
}

#[test]
fn solve_special_cases() {
    let o = bai(&["solve", "0.5", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(line(&out, "T = "), "inf");
    assert_eq!(numbers(line(&out, "w = ")), vec![0.5, 0.5]);

    let o = bai(&["solve", "0.9", "0.4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(numbers(line(&out, "w = ")), vec![0.5, 0.5]);
    assert_eq!(numbers(line(&out, "T = ")), vec![32.0]);

    let o = bai(&["solve", "--tol", "1e-12", "-0.1", "0.4", "0.2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn solve_exit_codes() {
    assert_eq!(bai(&["solve", "0.9"]).status.code(), Some(2));
    assert_eq!(bai(&["solve", "0.9", "x"]).status.code(), Some(2));
    assert_eq!(bai(&["solve"]).status.code(), Some(2));
    assert_eq!(bai(&["solve", "--tol", "0", "0.9", "0.1"]).status.code(), Some(2));
    assert_eq!(bai(&["frobnicate"]).status.code(), Some(2));
    let o = bai(&["solve", "1e-300", "0", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
}

#[test]
fn ebweights_reports() {
    let o = bai(&["ebweights", "0.2,0.6", "0.3,0.7", "0.1,0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("uniform"));
    assert_eq!(numbers(line(&out, "w_tilde = ")).len(), 3);

    let o = bai(&["ebweights", "--oracle-step", "0.01", "0.7,0.9", "0.4,0.6", "0.1,0.3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("separated"));
    let algo = numbers(line(&out, "w_min = "))[0];
    let oracle: f64 = line(&out, "oracle w_min = ").split_whitespace().next().unwrap().parse().unwrap();
    assert!(oracle <= algo + 0.02, "oracle {oracle} vs algorithm {algo}");

    let o = bai(&["ebweights", "--clamp", "--", "-0.5,0.2", "0.8,1.4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mu = numbers(line(&stdout(&o), "mu_tilde = "));
    assert!(mu.iter().all(|m| (0.0..=1.0).contains(m)));
}

#[test]
fn ebweights_exit_codes() {
    assert_eq!(bai(&["ebweights", "0.5,0.4", "0.1,0.2"]).status.code(), Some(2));
    assert_eq!(bai(&["ebweights", "0.5"]).status.code(), Some(2));
    assert_eq!(bai(&["ebweights", "0.1,0.2"]).status.code(), Some(2));
    let four = ["ebweights", "--oracle-step", "0.01", "0.8,0.9", "0.1,0.2", "0.0,0.1", "0.3,0.4"];
    assert_eq!(bai(&four).status.code(), Some(2));
}

#[test]
fn simulate_csv_layout_and_lower_bound() {
    let dir = TempDir::new().unwrap();
    let exp = write_experiment(
        dir.path(),
        "mu2.json",
        r#"{"instance": [0.9, 0.5, 0.45, 0.4],
            "strategies": [{"id": "ebs-c"}, {"id": "racing"}],
            "deltas": [0.1, 0.01], "replications": 5, "seed": 11}"#,
    );
    let o = bai(&["simulate", exp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    assert!(text.starts_with(
        "strategy,delta,gamma,replications,mean_tau,std_tau,error_rate,truncated,lower_bound\n"
    ));
    let (_, rows) = parse_csv(&text);
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][0], "ebs-c");
    assert_eq!(rows[0][1], "0.1");
    assert_eq!(rows[0][2], "0.1");
    assert_eq!(rows[2][0], "racing");
    assert_eq!(rows[2][2], "");
    let lb: f64 = rows[0][8].parse().unwrap();
    assert!((lb - 135.0).abs() <= 1.0, "{lb}");
    let lb: f64 = rows[1][8].parse().unwrap();
    assert!((lb - 347.0).abs() <= 1.0, "{lb}");
    assert!(rows.iter().all(|r| r[3] == "5" && r[7] == "0"));
}

#[test]
fn simulate_is_deterministic_and_honours_overrides() {
    let dir = TempDir::new().unwrap();
    let exp = write_experiment(
        dir.path(),
        "one.json",
        r#"{"instance": [0.9, 0.6, 0.5], "strategies": [{"id": "tas-d"}, {"id": "lucb++"}],
            "delta": 0.05, "replications": 1, "seed": 4}"#,
    );
    let p = exp.to_str().unwrap();
    let a = stdout(&bai(&["simulate", p]));
    let b = stdout(&bai(&["simulate", p]));
    assert_eq!(a, b);
    let c = stdout(&bai(&["simulate", p, "--seed", "5"]));
    assert_ne!(a, c);

    let out = dir.path().join("table.csv");
    let o = bai(&["simulate", p, "--reps", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let (_, rows) = parse_csv(&std::fs::read_to_string(&out).unwrap());
    assert!(rows.iter().all(|r| r[3] == "3"));
}

#[test]
fn simulate_delta_sweep_for_plotting() {
    let dir = TempDir::new().unwrap();
    let exp = write_experiment(
        dir.path(),
        "sweep.json",
        r#"{"instance": [0.9, 0.8, 0.75, 0.7],
            "strategies": [{"id": "ebs-d"}, {"id": "tas-d"}, {"id": "uniform"}],
            "deltas": [0.2, 0.1, 0.05], "replications": 4, "seed": 2}"#,
    );
    let o = bai(&["simulate", exp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = parse_csv(&stdout(&o));
    assert_eq!(rows.len(), 9);
    let ids: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(ids, ["ebs-d", "ebs-d", "ebs-d", "tas-d", "tas-d", "tas-d", "uniform", "uniform", "uniform"]);
    // The lower bound grows as delta shrinks.
    let lbs: Vec<f64> = rows[..3].iter().map(|r| r[8].parse().unwrap()).collect();
    assert!(lbs[0] < lbs[1] && lbs[1] < lbs[2]);
}

#[test]
fn simulate_rejects_bad_files() {
    let dir = TempDir::new().unwrap();
    let unknown = write_experiment(
        dir.path(),
        "bad.json",
        r#"{"instance": [0.9, 0.5], "strategies": [{"id": "ebs-c"}], "delta": 0.1, "colour": "red"}"#,
    );
    let o = bai(&["simulate", unknown.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
    let broken = write_experiment(dir.path(), "broken.json", "{not json");
    assert_eq!(bai(&["simulate", broken.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("nope.json");
    assert_eq!(bai(&["simulate", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn simulate_reports_truncation_with_success() {
    let dir = TempDir::new().unwrap();
    let exp = write_experiment(
        dir.path(),
        "tied.json",
        r#"{"instance": [0.5, 0.5], "strategies": [{"id": "uniform"}],
            "delta": 0.1, "replications": 2, "max_steps": 300}"#,
    );
    let o = bai(&["simulate", exp.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let (_, rows) = parse_csv(&stdout(&o));
    let truncated: u64 = rows[0][7].parse().unwrap();
    assert!(truncated <= 2);
    assert_eq!(rows[0][8], "inf");
}

fn trace_rows(exp: &Path, extra: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut args = vec!["trace", exp.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = bai(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    parse_csv(&stdout(&o))
}

#[test]
fn trace_of_exploration_biased_run() {
    let dir = TempDir::new().unwrap();
    let exp = write_experiment(
        dir.path(),
        "ebs.json",
        r#"{"instance": [0.9, 0.8, 0.6, 0.4, 0.4], "strategies": [{"id": "ebs-c", "gamma": 0.2}],
            "delta": 0.01, "seed": 1}"#,
    );
    let (header, rows) = trace_rows(&exp, &[]);
    let want: Vec<String> = "t,freq_1,freq_2,freq_3,freq_4,freq_5,target_1,target_2,target_3,target_4,target_5"
        .split(',')
        .map(String::from)
        .collect();
    assert_eq!(header, want);
    // Early rows: every interval overlaps, targets are 1/K.
    for row in &rows[..20] {
        for x in &row[6..] {
            assert_eq!(x, "0.200000");
        }
    }
    let t: Vec<u64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(t.windows(2).all(|w| w[0] < w[1]));
    let tau = *t.last().unwrap();
    assert!(t.iter().all(|&s| s <= 1200 || s % 10 == 0 || s == tau));
    let (_, rows_again) = trace_rows(&exp, &[]);
    assert_eq!(rows, rows_again);
    let (_, other_run) = trace_rows(&exp, &["--run", "1"]);
    assert_ne!(other_run.last().unwrap()[0], tau.to_string());
}

#[test]
fn trace_shows_forced_exploration() {
    let dir = TempDir::new().unwrap();
    let exp = write_experiment(
        dir.path(),
        "tas.json",
        r#"{"instance": [0.9, 0.8, 0.6, 0.4, 0.4], "strategies": [{"id": "tas-c"}],
            "delta": 0.01, "seed": 1, "trajectory": {"dense_until": 100000, "stride": 1}}"#,
    );
    let k = 5usize;
    let mut forced_visits = 0;
    for run in 0..5 {
        let (_, rows) = trace_rows(&exp, &["--run", &run.to_string()]);
        let counts: Vec<(u64, Vec<u64>)> = rows
            .iter()
            .map(|r| {
                let t: u64 = r[0].parse().unwrap();
                let n = r[1..=k]
                    .iter()
                    .map(|f| (f.parse::<f64>().unwrap() * t as f64).round() as u64)
                    .collect();
                (t, n)
            })
            .collect();
        for w in counts.windows(2) {
            let ((t, n), (_, next)) = (&w[0], &w[1]);
            if *t < k as u64 {
                continue;
            }
            let floor = (*t as f64).sqrt() - k as f64 / 2.0;
            let under: Vec<usize> = (0..k).filter(|&a| (n[a] as f64) < floor).collect();
            if under.is_empty() {
                continue;
            }
            let sampled = (0..k).find(|&a| next[a] == n[a] + 1).unwrap();
            assert!(under.contains(&sampled), "t={t}: sampled {sampled}, undersampled {under:?}");
            forced_visits += 1;
        }
    }
    assert!(forced_visits > 0);
}

#[test]
fn trace_racing_leaves_targets_empty() {
    let dir = TempDir::new().unwrap();
    let exp = write_experiment(
        dir.path(),
        "race.json",
        r#"{"instance": [0.9, 0.5, 0.45, 0.4], "strategies": [{"id": "racing"}], "delta": 0.1}"#,
    );
    let (_, rows) = trace_rows(&exp, &[]);
    assert!(rows.iter().all(|r| r[5..].iter().all(String::is_empty)));
}

#[test]
fn trace_requires_single_job() {
    let dir = TempDir::new().unwrap();
    let exp = write_experiment(
        dir.path(),
        "two.json",
        r#"{"instance": [0.9, 0.5], "strategies": [{"id": "ebs-c"}, {"id": "tas-c"}], "delta": 0.1}"#,
    );
    assert_eq!(bai(&["trace", exp.to_str().unwrap()]).status.code(), Some(2));
}
