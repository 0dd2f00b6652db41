use std::path::{Path, PathBuf};
use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::{json, Value};
use sizeramsey::graph::codec::{decode_graph6, encode_edge_list, encode_graph6};
use sizeramsey::Graph;

struct Run {
    code: i32,
    payload: Value,
    record: Value,
    stderr: String,
}

fn schema(name: &str) -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(name: &str, value: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(value) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{name} payload fails its schema: {msgs:?}\n{value}");
}

fn run_in(dir: &Path, args: &[&str]) -> Run {
    let log = dir.join("results.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_sizeramsey"))
        .current_dir(dir)
        .env_remove("SIZERAMSEY_SEED")
        .env_remove("SIZERAMSEY_THREADS")
        .env_remove("SIZERAMSEY_BUDGET")
        .env("SIZERAMSEY_LOG", &log)
        .args(args)
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let payload = stdout.lines().next().map(|l| serde_json::from_str(l).unwrap()).unwrap_or(Value::Null);
    let record = std::fs::read_to_string(&log)
        .ok()
        .and_then(|t| t.lines().last().map(|l| serde_json::from_str(l).unwrap()))
        .unwrap_or(Value::Null);
    Run { code: out.status.code().unwrap(), payload, record, stderr: String::from_utf8(out.stderr).unwrap() }
}

/// Runs a subcommand and checks the payload and the log record against
/// their schemas.
fn run(dir: &Path, args: &[&str]) -> Run {
    let r = run_in(dir, args);
    assert_valid("run_record", &r.record);
    if !r.payload.is_null() {
        assert_valid(&r.record["command"].as_str().unwrap().replace('-', "_"), &r.payload);
        assert_eq!(r.record["result"], r.payload);
    }
    assert_eq!(r.record["exit_code"], json!(r.code));
    r
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn write_graph(dir: &Path, name: &str, g: &Graph) -> String {
    write(dir, name, &format!("{}\n", encode_graph6(g)));
    name.to_string()
}

#[test]
fn ramsey_value_for_c4_c6() {
    let dir = tempfile::tempdir().unwrap();
    let r = run(dir.path(), &["ramsey", "--red", "cycle:4", "--blue", "cycle:6", "--max", "12"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.payload["value"], 7);
    assert_eq!(r.record["command"], "ramsey");
}

#[test]
fn arrows_reports_good_colouring_and_verify_accepts_it() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "k5.g6", &Graph::complete(5).unwrap());
    let r = run(dir.path(), &["arrows", "--in", &g, "--red", "cycle:4", "--blue", "cycle:4"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.payload["verdict"], "good_coloring");
    write(dir.path(), "col.json", &r.payload["witness"].to_string());
    let v = run(dir.path(), &["verify", "--in", &g, "--coloring", "col.json", "--red", "cycle:4", "--blue", "cycle:4"]);
    assert_eq!(v.code, 0);
    assert_eq!(v.payload["verification"]["verdict"], "good");
    let k6 = "k6.txt";
    write(dir.path(), k6, &encode_edge_list(&Graph::complete(6).unwrap()));
    let r = run(dir.path(), &["arrows", "--in", k6, "--red", "cycle:4", "--blue", "cycle:4", "--emit-cnf", "k6.cnf"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.payload["verdict"], "arrows");
    assert!(r.record["outputs"].as_object().unwrap().keys().any(|k| k.ends_with("k6.cnf")));
    let via_cnf = run(dir.path(), &["arrows", "--in", k6, "--red", "cycle:4", "--blue", "cycle:4", "--method", "cnf"]);
    assert_eq!((via_cnf.code, &via_cnf.payload["verdict"]), (0, &json!("arrows")));
}

#[test]
fn verify_reports_a_monochromatic_copy() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "c4.g6", &Graph::cycle(4).unwrap());
    write(dir.path(), "col.json", r#"{"red": [[0,1],[1,2],[2,3],[0,3]]}"#);
    let v = run(dir.path(), &["verify", "--in", &g, "--coloring", "col.json", "--red", "cycle:4", "--blue", "cycle:4"]);
    assert_eq!(v.code, 1);
    assert_eq!(v.payload["verification"]["color"], "red");
}

#[test]
fn construct_u_graph_writes_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let r = run(dir.path(), &["construct", "--kind", "u_graph", "--n", "112", "--d", "2", "--out", "u.g6"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.payload["vertices"], 113);
    assert_eq!(r.payload["report"]["satisfied"], true);
    let text = std::fs::read_to_string(dir.path().join("u.g6")).unwrap();
    let g = decode_graph6(text.trim()).unwrap();
    assert_eq!(g.order(), 113);
    assert_eq!(json!(g.edge_count()), r.payload["edges"]);
    for (kind, extra) in [
        ("cycle_blowup", vec!["--n", "128", "--d", "2", "--eta", "1/2"]),
        ("tree_closure", vec!["--count", "7"]),
        ("nst", vec!["--n", "33", "--s", "1", "--t", "28", "--orders", "5"]),
        ("random_plus_clique", vec!["--count", "20", "--p", "0.3", "--clique", "3"]),
    ] {
        let mut args = vec!["construct", "--kind", kind];
        args.extend(extra);
        let r = run(dir.path(), &args);
        assert_eq!(r.code, 0, "{kind}: {}", r.stderr);
    }
}

#[test]
fn witnesses_and_extraction() {
    let dir = tempfile::tempdir().unwrap();
    let c7 = write_graph(dir.path(), "c7.g6", &Graph::cycle(7).unwrap());
    let r =
        run(dir.path(), &["witness", "--in", &c7, "--kind", "low_degree", "--n", "6", "--d", "2", "--out", "w.json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.payload["verification"]["verdict"], "good");
    let v = run(dir.path(), &["verify", "--in", &c7, "--coloring", "w.json", "--red", "cycle:4", "--blue", "cycle:6"]);
    assert_eq!(v.code, 0);
    let k5 = write_graph(dir.path(), "k5.g6", &Graph::complete(5).unwrap());
    let r = run(dir.path(), &["witness", "--in", &k5, "--kind", "low_degree", "--n", "4", "--d", "2"]);
    assert_eq!(r.code, 1);
    let p10 = write_graph(dir.path(), "p10.g6", &Graph::path(10).unwrap());
    let r = run(dir.path(), &["witness", "--in", &p10, "--kind", "sparse", "--n", "10", "--b", "1"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.payload["trace"]["halting"], json!({ "reason": "witness", "step": 0 }));

    // Red perfect matching on the clique of nst(33,1,28,[5]), all else blue.
    write(dir.path(), "sys.json", r#"{"n": 33, "s": 1, "t": 28, "path_orders": [5]}"#);
    let mut red = Vec::new();
    let mut blue = Vec::new();
    for u in 0..33usize {
        for v in u + 1..33 {
            let edge = u < 28 || v < 28 || v == u + 1;
            if !edge {
                continue;
            }
            if v < 28 && u % 2 == 0 && v == u + 1 {
                red.push([u, v]);
            } else {
                blue.push([u, v]);
            }
        }
    }
    write(dir.path(), "total.json", &json!({ "red": red, "blue": blue }).to_string());
    let r = run(dir.path(), &["extract", "--system", "sys.json", "--coloring", "total.json", "--d", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.payload["extraction"]["kind"], "blue_cycle");
    assert_eq!(r.payload["extraction"]["cycle"].as_array().unwrap().len(), 32);
}

#[test]
fn pair_checks() {
    let dir = tempfile::tempdir().unwrap();
    let k46 = write_graph(dir.path(), "k46.g6", &Graph::complete_bipartite(4, 6).unwrap());
    let r = run(dir.path(), &["pair", "--in", &k46, "--v1", "0,1,2,3", "--v2", "4,5,6,7,8,9", "--p", "1/2"]);
    assert_eq!((r.code, &r.payload["density"]), (0, &json!("2")));
    let edges: Vec<(usize, usize)> =
        (0..8).flat_map(|i| (0..8).filter(move |&j| j != i).map(move |j| (i, 8 + j))).collect();
    let g = write_graph(dir.path(), "m.g6", &Graph::from_edges(16, edges).unwrap());
    let sides = ["--v1", "0,1,2,3,4,5,6,7", "--v2", "8,9,10,11,12,13,14,15"];
    let mut args = vec!["pair", "--in", &g, "--check", "regular", "--eps", "0.01"];
    args.extend(sides);
    let r = run(dir.path(), &args);
    assert_eq!(r.code, 1);
    assert_eq!(r.payload["verdict"]["verdict"], "violated");
    let mut args =
        vec!["pair", "--in", &g, "--check", "regular", "--eps", "0.01", "--mode", "sampled", "--trials", "50"];
    args.extend(sides);
    assert_valid("pair", &run(dir.path(), &args).payload);
    let mut args = vec!["pair", "--in", &g, "--check", "good", "--eps", "1/20"];
    args.extend(sides);
    let r = run(dir.path(), &args);
    assert_eq!((r.code, &r.payload["verdict"]["verdict"]), (1, &json!("violated")));
    let r = run(
        dir.path(),
        &["pair", "--in", &k46, "--v1", "0,1,2,3", "--v2", "4,5,6,7,8,9", "--check", "good", "--eps", "1/4"],
    );
    assert_eq!((r.code, &r.payload["verdict"]["verdict"]), (0, &json!("good")));
}

#[test]
fn bounds_and_encode_sat() {
    let dir = tempfile::tempdir().unwrap();
    let r = run(dir.path(), &["bounds", "--kind", "interval", "--d", "2,3", "--n", "384..1000/101"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.payload["rows"].as_array().unwrap().len(), 14);
    let r = run(dir.path(), &["bounds", "--kind", "cycle_blowup", "--d", "2", "--n", "64,128", "--eta", "1/4"]);
    assert_eq!(r.code, 0);
    let k4 = write_graph(dir.path(), "k4.g6", &Graph::complete(4).unwrap());
    let r = run(dir.path(), &["encode-sat", "--in", &k4, "--red", "cycle:4", "--blue", "cycle:4", "--out", "k4.cnf"]);
    assert_eq!(r.code, 0);
    let text = std::fs::read_to_string(dir.path().join("k4.cnf")).unwrap();
    assert!(text.starts_with("p cnf 6 6\n"));
    assert_eq!((r.payload["vars"].clone(), r.payload["clauses"].clone()), (json!(6), json!(6)));
}

#[test]
fn exit_codes_for_errors() {
    let dir = tempfile::tempdir().unwrap();
    let k8 = write_graph(dir.path(), "k8.g6", &Graph::complete(8).unwrap());
    let r = run(dir.path(), &["arrows", "--in", &k8, "--red", "cycle:2", "--blue", "cycle:4"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.record["error"]["code"], "invalid_pattern");
    let r = run(dir.path(), &["--budget", "10", "arrows", "--in", &k8, "--red", "cycle:7", "--blue", "cycle:4"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.record["error"]["code"], "budget_exhausted");
    let r = run(dir.path(), &["ramsey", "--red", "cycle:6", "--blue", "cycle:4", "--max", "5"]);
    assert_eq!(r.code, 3);
    write(dir.path(), "g.xyz", "Bw\n");
    let r =
        run(dir.path(), &["verify", "--in", "g.xyz", "--coloring", "c.json", "--red", "cycle:3", "--blue", "cycle:3"]);
    assert_eq!((r.code, &r.record["error"]["code"]), (2, &json!("usage")));
    let r = run_in(dir.path(), &["frobnicate"]);
    assert_eq!(r.code, 2);
}

#[test]
fn identical_arguments_give_identical_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["construct", "--kind", "random_plus_clique", "--count", "40", "--p", "0.2", "--clique", "2"];
    let mut hashes = Vec::new();
    for out in ["a.g6", "b.g6"] {
        let mut a: Vec<&str> = vec!["--seed", "17"];
        a.extend(args);
        a.extend(["--out", out]);
        let r = run(dir.path(), &a);
        hashes.push(r.record["outputs"].as_object().unwrap().values().next().unwrap().clone());
    }
    assert_eq!(hashes[0], hashes[1]);
    let mut other = vec!["--seed", "18"];
    other.extend(args);
    other.extend(["--out", "c.g6"]);
    let r = run(dir.path(), &other);
    assert_ne!(r.record["outputs"].as_object().unwrap().values().next().unwrap(), &hashes[0]);

    // Thread count does not leak into results.
    let k7 = write_graph(dir.path(), "k7.g6", &Graph::complete(7).unwrap());
    let one = run(dir.path(), &["--threads", "1", "arrows", "--in", &k7, "--red", "cycle:7", "--blue", "cycle:4"]);
    let four = run(dir.path(), &["--threads", "4", "arrows", "--in", &k7, "--red", "cycle:7", "--blue", "cycle:4"]);
    assert_eq!(one.payload.to_string(), four.payload.to_string());
    assert_eq!(one.code, 1);
}
