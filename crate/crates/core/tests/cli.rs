//! End-to-end tests against the built `fibsum` binary.

use std::process::{Command, Output};

use num_bigint::BigInt;

use fibsum::bfile;
use fibsum::selfsum::scan_self_summable;

fn fibsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn documented_examples() {
    let o = fibsum(&["fib", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "55\n");

    let o = fibsum(&["scan", "--odd", "--limit", "274", "--format", "b-file"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 14);
    assert!(out.ends_with("14 274\n"));

    let o = fibsum(&["pisano", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "6\n");
}

#[test]
fn bfile_round_trip() {
    for limit in [1u64, 60, 300] {
        let o = fibsum(&["scan", "--limit", &limit.to_string(), "--format", "b-file"]);
        let rows = bfile::read(o.stdout.as_slice()).unwrap();
        let expected: Vec<(BigInt, BigInt)> = scan_self_summable(limit)
            .iter()
            .enumerate()
            .map(|(i, r)| (BigInt::from(i + 1), BigInt::from(r.k)))
            .collect();
        assert_eq!(rows, expected);
        for line in stdout(&o).lines() {
            assert_eq!(line, line.trim_end());
        }
    }
}

#[test]
fn deterministic_output() {
    let args = ["scan", "--limit", "400", "--format", "json-lines"];
    assert_eq!(fibsum(&args).stdout, fibsum(&args).stdout);
}

#[test]
fn usage_errors_exit_2() {
    let o = fibsum(&["nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(fibsum(&["scan", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(fibsum(&["fib", "10", "-3"]).status.code(), Some(2));
    assert_eq!(fibsum(&["pisano", "7", "--fib"]).status.code(), Some(2));
    assert_eq!(fibsum(&["family", "11"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = fibsum(&["verify", "lists"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS lists (2 cases)\n");

    let o = fibsum(&["verify", "family", "--limit", "3", "--format", "json-lines"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"suite\":\"family\",\"cases\":6,\"failure\":null}\n"
    );
}

#[test]
fn family_json_fields() {
    let o = fibsum(&["family", "17", "--format", "json-lines"]);
    assert_eq!(o.status.code(), Some(0));
    let first = stdout(&o).lines().next().unwrap().to_owned();
    assert_eq!(
        first,
        "{\"p\":{\"p\":17,\"residue_mod3\":2,\"residue_mod5\":2},\"n\":34,\"fib_n_odd\":true,\
         \"congruence_residue\":67,\"reduced_index\":1,\"divisibility_holds\":true}"
    );
}

#[test]
fn primes_json_lines() {
    let o = fibsum(&[
        "primes",
        "--limit",
        "11",
        "--residues",
        "--format",
        "json-lines",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"p\":3,\"sp_mod_p\":1,\"character5\":-1,\"divisible\":false}\n\
         {\"p\":5,\"sp_mod_p\":2,\"character5\":0,\"divisible\":false}\n\
         {\"p\":7,\"sp_mod_p\":5,\"character5\":-1,\"divisible\":false}\n\
         {\"p\":11,\"sp_mod_p\":1,\"character5\":1,\"divisible\":false}\n"
    );
}

#[test]
fn out_file_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.txt");
    let cache = dir.path().join("pisano.cache");

    let o = fibsum(&[
        "export",
        "odd-self-summable",
        "--limit",
        "106",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&out).unwrap(),
        "1 1\n2 2\n3 34\n4 46\n5 68\n6 92\n7 94\n8 106\n"
    );

    let c = cache.to_str().unwrap();
    assert_eq!(stdout(&fibsum(&["pisano", "10", "--cache", c])), "60\n");
    assert_eq!(
        stdout(&fibsum(&["pisano", "30", "--fib", "--cache", c])),
        "60\n"
    );
    let text = std::fs::read_to_string(&cache).unwrap();
    assert_eq!(
        text,
        "10 60 iterative-search\n832040 60 divisor-refinement\n"
    );
    // served from the cache the second time
    assert_eq!(stdout(&fibsum(&["pisano", "10", "--cache", c])), "60\n");

    std::fs::write(&cache, "10 30 iterative-search\n").unwrap();
    assert_ne!(
        fibsum(&["pisano", "10", "--cache", c]).status.code(),
        Some(0)
    );
}
