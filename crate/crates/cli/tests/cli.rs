use std::process::{Command, Output};

use palk_cli::output::{read_find_table, FindDocument};

fn palk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_palk")).args(args).output().expect("run palk")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn find_tsv_example() {
    let o = palk(&["find", "--text", "bbaabac", "-k", "1", "--parity", "even"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("center\tparity\tstart\tend\tsize\terrors"));
    assert!(text.lines().any(|l| l == "3\teven\t1\t6\t6\t1"), "{text}");
}

#[test]
fn json_matches_tsv() {
    let base = ["find", "--text", "abracadabra", "-k", "2", "--scripts"];
    let tsv = palk(&base);
    let json = palk(&[&base[..], &["-o", "json"]].concat());
    assert!(tsv.status.success() && json.status.success());
    let rows = read_find_table(&stdout(&tsv), '\t').unwrap();
    let doc: FindDocument = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(doc.results, rows);
    assert_eq!(doc.k, 2);
    assert!(doc.coordinates.contains("1-based"));
    assert!(rows.iter().all(|r| r.script.is_some()));
}

#[test]
fn csv_output_and_trivial_centers() {
    let plain = palk(&["find", "--text", "abcab", "-o", "csv"]);
    let all = palk(&["find", "--text", "abcab", "-o", "csv", "--include-trivial"]);
    let (plain, all) = (stdout(&plain), stdout(&all));
    assert!(plain.starts_with("center,parity,start,end,size,errors\n"));
    assert_eq!(plain.lines().count() + 3, all.lines().count());
}

#[test]
fn fasta_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.fa");
    std::fs::write(&path, ">one\nACGT\n>two\nAACCGGTT\n").unwrap();
    let p = path.to_str().unwrap();

    let o = palk(&["find", "--input", p]);
    assert_eq!(o.status.code(), Some(2), "two records without --record");

    let o = palk(&["find", "--input", p, "--record", "2", "--complement", "--parity", "even"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // AACCGGTT is its own reverse complement around the middle.
    assert!(stdout(&o).lines().any(|l| l == "4\teven\t1\t8\t8\t0"), "{}", stdout(&o));

    let o = palk(&["find", "--input", p, "--record", "9"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fa");
    std::fs::write(&bad, ">x\nACGN\n").unwrap();
    let o = palk(&["find", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let missing = dir.path().join("missing.txt");
    assert_eq!(palk(&["find", "--input", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(palk(&["find", "--text", "ab cd"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(palk(&["find"]).status.code(), Some(1));
    assert_eq!(palk(&["find", "--text", "ab", "--text", "cd"]).status.code(), Some(1));
    assert_eq!(palk(&["find", "--text", "ab", "--variant", "fast"]).status.code(), Some(1));
    assert_eq!(palk(&["find", "--text", "acgt", "--complement", "--alphabet", "ascii"]).status.code(), Some(1));
    assert_eq!(palk(&["bench", "--corpus", "dnap1", "--n", "10"]).status.code(), Some(1));
    assert_eq!(palk(&["expected", "--n", "30", "--sigma", "4", "--method", "exact"]).status.code(), Some(1));
    assert_eq!(palk(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(palk(&["--help"]).status.code(), Some(0));
}

#[test]
fn single_symbol_warns() {
    let o = palk(&["find", "--text", "a"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
    assert!(!o.stderr.is_empty());
}

#[test]
fn bench_small_cell() {
    let o = palk(&["bench", "--corpus", "cnst", "--n", "8", "--k", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "corpus,n,k,base,test,t_base,t_test,gain");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("cnst,8,2,original,imp1,"));
}

#[test]
fn bench_paper50_shape() {
    let o = palk(&["bench", "--preset", "paper50", "-v"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 181);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cell cnst n=50"));
    let json = palk(&["bench", "--preset", "paper50", "-o", "json"]);
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(rows.len(), 180);
}

#[test]
fn expected_is_deterministic() {
    let args = ["expected", "--n", "9", "--sigma", "3", "--method", "montecarlo", "--samples", "200", "--seed", "5"];
    let a = palk(&args);
    let b = palk(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 4);

    let exact = palk(&["expected", "--n", "5", "--sigma", "2", "-k", "2", "--method", "exact"]);
    let text = stdout(&exact);
    assert!(text.lines().nth(1).unwrap().starts_with("5,2,2,original,imp1,exact,32,"), "{text}");
}
