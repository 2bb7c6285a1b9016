use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

/// Ten sentences, 6+7+5+4+8+6+5+4+5+3 = 53 tokens.
const TEN: &str = "\
<ENAMEX TYPE=\"PERSON\">John Smith</ENAMEX> arrived in <ENAMEX TYPE=\"LOCATION\">Paris</ENAMEX> .
Mr. <ENAMEX TYPE=\"PERSON\">Jones</ENAMEX> joined <ENAMEX TYPE=\"ORGANIZATION\">Acme Corp.</ENAMEX> today .
Shares rose <NUMEX TYPE=\"PERCENT\">12 %</NUMEX> .
It cost <NUMEX TYPE=\"MONEY\">$ 5</NUMEX>
The meeting ended <TIMEX TYPE=\"DATE\">June 5 , 1996</TIMEX> .
They left at <TIMEX TYPE=\"TIME\">3:15</TIMEX> p.m. sharp
<ENAMEX TYPE=\"ORGANIZATION\">IBM</ENAMEX> said nothing new .
Talks resumed in <ENAMEX TYPE=\"LOCATION\">Rome</ENAMEX>
Ms. <ENAMEX TYPE=\"PERSON\">Ng</ENAMEX> spoke there .
The end .
";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_namefinder"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

struct Scratch(TempDir);

impl Scratch {
    fn new() -> Self {
        Scratch(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.0.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn train_reports_counts_and_writes_a_model() {
    let dir = Scratch::new();
    let corpus = dir.file("ten.txt", TEN);
    let model = dir.path("model.txt");
    let out = run(&["train", s(&corpus), "--model", s(&model)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("sentences 10\n"), "{text}");
    assert!(text.contains("words 53\n"), "{text}");
    assert!(text.contains("regions PERSON 3\n"), "{text}");
    assert!(fs::read_to_string(&model).unwrap().starts_with("namefinder-model\t1\n"));
}

#[test]
fn retraining_is_byte_identical() {
    let dir = Scratch::new();
    let corpus = dir.file("ten.txt", TEN);
    let (a, b) = (dir.path("a"), dir.path("b"));
    assert!(run(&["train", s(&corpus), "--model", s(&a)]).status.success());
    assert!(run(&["train", s(&corpus), "--model", s(&b)]).status.success());
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn one_sentence_cannot_be_halved() {
    let dir = Scratch::new();
    let corpus = dir.file("one.txt", "just one sentence .\n");
    let out = run(&["train", s(&corpus), "--model", s(&dir.path("m"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("held-out halves"));
}

#[test]
fn malformed_markup_is_a_format_error() {
    let dir = Scratch::new();
    let corpus = dir.file("bad.txt", "a <ENAMEX TYPE=\"PERSON\">b c .\nok .\n");
    let out = run(&["train", s(&corpus), "--model", s(&dir.path("m"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn missing_input_is_an_io_error() {
    let dir = Scratch::new();
    let out = run(&["train", s(&dir.path("absent")), "--model", s(&dir.path("m"))]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["train"]).status.code(), Some(1));
    assert_eq!(run(&["score", "a", "b", "--beta", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn decode_empty_file() {
    let dir = Scratch::new();
    let model = dir.path("m");
    assert!(run(&["train", s(&dir.file("ten.txt", TEN)), "--model", s(&model)])
        .status
        .success());
    let out_path = dir.path("out.txt");
    let out = run(&[
        "decode",
        s(&dir.file("empty.txt", "")),
        "--model",
        s(&model),
        "--output",
        s(&out_path),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(out_path).unwrap(), "");
    assert!(String::from_utf8_lossy(&out.stderr).contains("MB/hr"));
}

#[test]
fn decode_writes_parseable_annotations() {
    let dir = Scratch::new();
    let model = dir.path("m");
    assert!(run(&["train", s(&dir.file("ten.txt", TEN)), "--model", s(&model)])
        .status
        .success());
    let input = dir.file("in.txt", "Mr. Jones arrived in Paris. Shares rose 12 %. <odd> & done");
    let out = run(&["decode", s(&input), "--model", s(&model)]);
    assert!(out.status.success());
    let parsed = namefinder::parse_annotated(&stdout(&out)).unwrap();
    assert_eq!(parsed.len(), 3);
    assert_eq!(parsed[0].tokens, ["Mr.", "Jones", "arrived", "in", "Paris", "."]);
}

#[test]
fn version_mismatch_is_rejected() {
    let dir = Scratch::new();
    let model = dir.path("m");
    assert!(run(&["train", s(&dir.file("ten.txt", TEN)), "--model", s(&model)])
        .status
        .success());
    let text = fs::read_to_string(&model)
        .unwrap()
        .replacen("namefinder-model\t1", "namefinder-model\t99", 1);
    fs::write(&model, text).unwrap();
    let out = run(&["decode", s(&dir.file("in.txt", "hello .")), "--model", s(&model)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("expected 1") && err.contains("found 99"), "{err}");
}

#[test]
fn score_identical_files() {
    let dir = Scratch::new();
    let key = dir.file("key.txt", TEN);
    let out = run(&["score", s(&key), s(&key)]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ALL 1.000000 1.000000 1.000000"));
}

#[test]
fn score_six_of_eight_against_ten() {
    let dir = Scratch::new();
    let person = |w: &str| format!("<ENAMEX TYPE=\"PERSON\">{w}</ENAMEX>");
    let words = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"];
    let key: Vec<String> = words.iter().map(|w| person(w)).collect();
    let mut response: Vec<String> = words.iter().map(|w| w.to_string()).collect();
    for r in response.iter_mut().take(6) {
        *r = person(r);
    }
    response[6] = "<ENAMEX TYPE=\"LOCATION\">g</ENAMEX>".into();
    response[7] = "<ENAMEX TYPE=\"ORGANIZATION\">h</ENAMEX>".into();
    let key = dir.file("key.txt", &(key.join(" ") + "\n"));
    let response = dir.file("resp.txt", &(response.join(" ") + "\n"));
    let out = run(&["score", s(&key), s(&response)]);
    assert!(out.status.success());
    let text = stdout(&out);
    let all = text
        .lines()
        .find(|l| l.starts_with("ALL ") && l.contains('.') && !l.contains("  "))
        .unwrap();
    assert_eq!(all, "ALL 0.750000 0.600000 0.666667");
    let table_row = text.lines().find(|l| l.starts_with("ALL  ")).unwrap();
    assert!(table_row.ends_with("0.750   0.600   0.667"), "{table_row}");
}

#[test]
fn score_reports_misalignment() {
    let dir = Scratch::new();
    let key = dir.file("key.txt", "a b c\nd e f\n");
    let response = dir.file("resp.txt", "a b c\nd x f\n");
    let out = run(&["score", s(&key), s(&response)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sentence 1, token 1"));
}

#[test]
fn learning_curve_rows() {
    let dir = Scratch::new();
    let training = dir.path("train.txt");
    let test = dir.path("test.txt");
    assert!(run(&["generate", "800", "--seed", "3", "--output", s(&training)])
        .status
        .success());
    assert!(run(&["generate", "200", "--seed", "4", "--output", s(&test)])
        .status
        .success());
    let args = ["learning-curve", s(&training), s(&test), "--fractions", "1/2,1"];
    let out = run(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows: Vec<Vec<f64>> = stdout(&out)
        .lines()
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!((rows[0][0], rows[1][0]), (1.0, 0.5));
    assert!(rows[0][2] >= rows[1][2] - 0.05);
    assert_eq!(stdout(&run(&args)), stdout(&out));
}

#[test]
fn full_fraction_equals_manual_pipeline() {
    let dir = Scratch::new();
    let training = dir.path("train.txt");
    let test = dir.path("test.txt");
    assert!(run(&["generate", "400", "--seed", "5", "--output", s(&training)])
        .status
        .success());
    assert!(run(&["generate", "100", "--seed", "6", "--output", s(&test)])
        .status
        .success());
    let curve = stdout(&run(&["learning-curve", s(&training), s(&test), "--fractions", "1"]));

    let model = dir.path("m");
    let response = dir.path("resp.txt");
    assert!(run(&["train", s(&training), "--model", s(&model)]).status.success());
    let decode = [
        "decode",
        s(&test),
        "--model",
        s(&model),
        "--pretokenized",
        "--output",
        s(&response),
    ];
    assert!(run(&decode).status.success());
    let scored = stdout(&run(&["score", s(&test), s(&response)]));
    let manual_f: f64 = scored
        .lines()
        .last()
        .unwrap()
        .split_whitespace()
        .nth(3)
        .unwrap()
        .parse()
        .unwrap();
    let curve_f: f64 = curve.split_whitespace().nth(2).unwrap().parse().unwrap();
    assert_eq!(format!("{manual_f:.4}"), format!("{curve_f:.4}"));
}

#[test]
fn bad_fraction_is_a_usage_error() {
    let dir = Scratch::new();
    let f = dir.file("t.txt", TEN);
    assert_eq!(
        run(&["learning-curve", s(&f), s(&f), "--fractions", "0"]).status.code(),
        Some(1)
    );
}
