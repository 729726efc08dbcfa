mod common;

use std::fs;
use std::path::Path;

use tempfile::tempdir;
use threadmotif_core::{Post, Source, Thread};

use common::{baseline_generator, fig2_thread, read, run_cli, star_thread, write_corpus};

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn census_row<'a>(csv: &'a str, thread_id: &str) -> Vec<&'a str> {
    csv.lines()
        .find(|l| l.starts_with(&format!("{thread_id},")))
        .unwrap()
        .split(',')
        .collect()
}

fn column(csv: &str, name: &str) -> usize {
    csv.lines().next().unwrap().split(',').position(|c| c == name).unwrap()
}

#[test]
fn macro_writes_one_row_per_thread_and_four_ecdfs() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("corpus.jsonl");
    write_corpus(&input, &[star_thread("a", 5, "x"), star_thread("b", 6, "y"), fig2_thread()]);
    let out = dir.path().join("out");
    let o = run_cli(&["macro", "--input", path(&input), "--out", path(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let m = read(&out.join("macro_metrics.csv"));
    let lines: Vec<&str> = m.lines().collect();
    assert_eq!(
        lines[0],
        "thread_id,n_posts,n_users,responsiveness_median_s,reciprocity,op_betweenness,branching_factor"
    );
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[3], "fig2,8,5,10,0.666667,6.000000,1.750000");
    for metric in ["responsiveness_median_s", "reciprocity", "op_betweenness", "branching_factor"] {
        let e = read(&out.join(format!("ecdf_{metric}.csv")));
        assert_eq!(e.lines().next(), Some("value,cum_fraction"));
        assert_eq!(e.lines().count(), 4);
        assert!(e.lines().last().unwrap().ends_with(",1.000000"));
    }
}

#[test]
fn macro_on_empty_corpus_warns_and_writes_headers() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("corpus.jsonl");
    write_corpus(&input, &[star_thread("small", 2, "x")]);
    let out = dir.path().join("out");
    let o = run_cli(&["macro", "--input", path(&input), "--out", path(&out)]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("empty after filtering"));
    assert_eq!(read(&out.join("macro_metrics.csv")).lines().count(), 1);
    assert_eq!(read(&out.join("ecdf_reciprocity.csv")), "value,cum_fraction\n");
}

#[test]
fn malformed_line_is_reported_not_fatal() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("corpus.jsonl");
    write_corpus(&input, &[star_thread("a", 5, "x"), star_thread("b", 5, "y")]);
    let mut text = read(&input);
    text.insert_str(0, "{\"thread_id\": oops}\n");
    fs::write(&input, text).unwrap();
    let out = dir.path().join("out");
    let o = run_cli(&["macro", "--input", path(&input), "--out", path(&out)]);
    assert!(o.status.success());
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("line 1"), "{stderr}");
    assert!(stderr.contains("1 malformed thread(s) skipped"), "{stderr}");
    assert_eq!(read(&out.join("macro_metrics.csv")).lines().count(), 3);
}

#[test]
fn census_of_fig2_and_single_author_threads() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("corpus.jsonl");
    let mut solo = vec![Post::new("r", None, "me", 0)];
    for i in 0..6 {
        solo.push(Post::new(&format!("s{i}"), Some("r"), "me", i + 1));
    }
    let solo = Thread::new("solo", Source::Baseline, solo).unwrap();
    write_corpus(&input, &[fig2_thread(), solo]);
    let out = dir.path().join("out");
    let o = run_cli(&["census", "--input", path(&input), "--out", path(&out)]);
    assert!(o.status.success());
    let csv = read(&out.join("census.csv"));
    let fig2 = census_row(&csv, "fig2");
    assert_eq!(&fig2[..4], ["fig2", "focus", "5", "1-5"]);
    for (i, value) in fig2.iter().enumerate().skip(4) {
        let expected = match csv.lines().next().unwrap().split(',').nth(i).unwrap() {
            "021U-a" | "201-b" => "1",
            "111D-b" => "4",
            _ => "0",
        };
        assert_eq!(*value, expected);
    }
    let solo = census_row(&csv, "solo");
    assert_eq!(&solo[..4], ["solo", "baseline", "1", "1-5"]);
    assert!(solo[4..].iter().all(|v| *v == "0"));
    assert_eq!(fig2.len(), 40);
}

#[test]
fn naive_and_fast_census_files_are_identical_for_any_jobs() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("corpus.jsonl");
    write_corpus(&input, &baseline_generator().corpus(5, 150, Source::Baseline));
    let mut outputs = Vec::new();
    for (mode, jobs) in [("fast", "1"), ("naive", "1"), ("fast", "4")] {
        let out = dir.path().join(format!("{mode}-{jobs}"));
        let o = run_cli(&[
            "census", "--input", path(&input), "--out", path(&out), "--census-mode", mode, "--jobs", jobs,
        ]);
        assert!(o.status.success());
        outputs.push(fs::read(out.join("census.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

fn census_file(dir: &Path, name: &str, threads: &[Thread]) -> std::path::PathBuf {
    let input = dir.join(format!("{name}.jsonl"));
    write_corpus(&input, threads);
    let out = dir.join(name);
    assert!(run_cli(&["census", "--input", path(&input), "--out", path(&out)]).status.success());
    out.join("census.csv")
}

#[test]
fn compare_against_itself_gives_zero() {
    let dir = tempdir().unwrap();
    let census = census_file(dir.path(), "base", &baseline_generator().corpus(9, 300, Source::Baseline));
    let out = dir.path().join("cmp");
    let o = run_cli(&["compare", "--focus", path(&census), "--baseline", path(&census), "--out", path(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = read(&out.join("compare.csv"));
    assert_eq!(
        csv.lines().next().unwrap(),
        "bin,class,M,mu_null,sigma_null,se_null,N,mean_focus,sigma_focus,se_focus,z,label,reason"
    );
    assert_eq!(csv.lines().count(), 1 + 8 * 36);
    let (z, reason) = (column(&csv, "z"), column(&csv, "reason"));
    let mut defined = 0;
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f[z].is_empty() {
            assert!(!f[reason].is_empty(), "{line}");
        } else {
            assert_eq!(f[z], "0.000000", "{line}");
            defined += 1;
        }
    }
    assert!(defined > 0);
}

#[test]
fn single_graph_bins_are_undefined() {
    let dir = tempdir().unwrap();
    // one graph per bin: 6 users and 13 users
    let base = census_file(dir.path(), "base", &[star_thread("b1", 5, "x"), star_thread("b2", 12, "x")]);
    let focus = census_file(dir.path(), "focus", &[star_thread("f1", 5, "y"), star_thread("f2", 12, "y")]);
    let out = dir.path().join("cmp");
    assert!(run_cli(&["compare", "--focus", path(&focus), "--baseline", path(&base), "--out", path(&out)])
        .status
        .success());
    let csv = read(&out.join("compare.csv"));
    let (z, reason) = (column(&csv, "z"), column(&csv, "reason"));
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert!(f[z].is_empty());
        assert!(["zero baseline variance", "empty baseline bin"].contains(&f[reason]), "{line}");
    }
}

#[test]
fn compare_rejects_wrong_class_columns() {
    let dir = tempdir().unwrap();
    let census = census_file(dir.path(), "base", &[star_thread("b1", 5, "x")]);
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, read(&census).replacen("201-a,201-b", "201-b,201-a", 1)).unwrap();
    let out = dir.path().join("cmp");
    let o = run_cli(&["compare", "--focus", path(&bad), "--baseline", path(&census), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("201-a"), "{stderr}");
}

#[test]
fn timing_rejects_edge_free_and_unknown_classes() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("corpus.jsonl");
    write_corpus(&input, &[fig2_thread()]);
    let out = dir.path().join("out");
    for class in ["003", "999"] {
        let o = run_cli(&["timing", "--input", path(&input), "--out", path(&out), "--class", class]);
        assert_eq!(o.status.code(), Some(2), "{class}");
    }
    assert!(String::from_utf8_lossy(
        &run_cli(&["timing", "--input", path(&input), "--out", path(&out), "--class", "003"]).stderr
    )
    .contains("edge-free"));
}

#[test]
fn timing_medians() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("corpus.jsonl");
    // everything at root time
    let mut instant = fig2_thread().posts().to_vec();
    for p in &mut instant {
        p.t = 0;
    }
    write_corpus(&input, &[Thread::new("now", Source::Focus, instant).unwrap()]);
    let out = dir.path().join("out");
    let args = |class: &str| {
        run_cli(&["timing", "--input", path(&input), "--out", path(&out), "--class", class, "--min-extra-posts", "0"])
    };
    assert!(args("111D-b").status.success());
    assert!(read(&out.join("timing.csv")).ends_with("median,,,0.000000\n"));

    // fig2: lifetime [0, 70]. 111D-b instances {red; yellow|purple; blue|green}:
    // (blue,purple)  last edge red->purple at 60 -> 6/7
    // (blue,yellow)  last edge red->yellow at 50 -> 5/7
    // (green,purple) 60 -> 6/7 ; (green,yellow) 50 -> 5/7
    write_corpus(&input, &[fig2_thread()]);
    assert!(args("111D-b").status.success());
    let csv = read(&out.join("timing.csv"));
    assert_eq!(csv.lines().count(), 1 + 4 + 1);
    assert!(csv.ends_with("median,,,0.714286\n"), "{csv}");
    assert!(args("201-b").status.success());
    // {yellow, purple}: last of red<->yellow (30, 50) and red<->purple (40, 60)
    assert!(read(&out.join("timing.csv")).ends_with("median,,,0.857143\n"));
}

#[test]
fn classes_table() {
    let o = run_cli(&["classes"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 36);
    assert_eq!(rows[0], "003,\"(N,N,N)\",,0,0,3");
    for row in rows {
        let f: Vec<&str> = row.rsplitn(4, ',').collect();
        let man: u32 = f[..3].iter().map(|x| x.parse::<u32>().unwrap()).sum();
        assert_eq!(man, 3, "{row}");
    }
}

#[test]
fn degrees_files() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("corpus.jsonl");
    write_corpus(&input, &[fig2_thread()]);
    let out = dir.path().join("out");
    assert!(run_cli(&["degrees", "--input", path(&input), "--out", path(&out)]).status.success());
    let d = read(&out.join("degrees.csv"));
    assert!(d.starts_with("graph,node,in_degree,out_degree\n"));
    assert!(d.contains("user,fig2/red,4,2\n"));
    assert!(d.contains("reply,fig2/1,4,0\n"));
    assert_eq!(d.lines().count(), 1 + 5 + 8);
    let h = read(&out.join("degree_histogram.csv"));
    assert!(h.starts_with("graph,degree_kind,degree,count\nuser,in,0,"));
    assert!(h.contains("reply,in,4,1\n"));
}

#[test]
fn configuration_errors_exit_2() {
    let dir = tempdir().unwrap();
    let input = dir.path().join("corpus.jsonl");
    write_corpus(&input, &[fig2_thread()]);
    let out = dir.path().join("out");
    let o = run_cli(&["census", "--input", path(&input), "--out", path(&out), "--bins", "5-1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_cli(&["census", "--input", path(&input), "--out", path(&out), "--census-mode", "slow"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_cli(&["census", "--input", path(&dir.path().join("missing")), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(1));
}
