use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hedonic-ir"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hedonic-ir-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const K4_MINUS_EDGE: &str = "vertices 4\nedge 1 2\nedge 1 3\nedge 1 4\nedge 2 3\nedge 2 4\n";

#[test]
fn solve_exit_codes() {
    let dir = scratch("exit");
    let eq = dir.join("eq.txt");
    let o = run(&["generate", "--reduction", "equitable-partition", "--values", "1,1,1,1"]);
    assert!(o.status.success());
    fs::write(&eq, stdout(&o)).unwrap();
    let o = run(&["solve", "--input", eq.to_str().unwrap(), "--algo", "oracle"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "YES\n"));

    let hostile = dir.join("hostile.txt");
    fs::write(&hostile, "agents 2\nmode kashg\nk 1\nsym\nval 1 2 -1\n").unwrap();
    let o = run(&["solve", "--input", hostile.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "NO\n"));

    let o = run(&["solve", "--input", eq.to_str().unwrap(), "--algo", "tw-dp"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("-1 or +1"));

    let o = run(&["solve", "--input", eq.to_str().unwrap(), "--algo", "oracle", "--max-oracle-n", "4"]);
    assert_eq!(o.status.code(), Some(2));

    let bad = dir.join("bad.txt");
    fs::write(&bad, "agents 2\nmode kashg\nk 1\nval 1 1 3\n").unwrap();
    let o = run(&["solve", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4, column 7"));
}

#[test]
fn emitted_solutions_check_out() {
    let dir = scratch("check");
    let inst = dir.join("clique.txt");
    let src = dir.join("k4e.txt");
    fs::write(&src, K4_MINUS_EDGE).unwrap();
    let o = run(&["generate", "--reduction", "clique", "--source", src.to_str().unwrap(), "--t", "3"]);
    assert!(o.status.success());
    fs::write(&inst, stdout(&o)).unwrap();
    for algo in ["oracle", "vc-dp", "ilp", "auto"] {
        for seed in [None, Some("3")] {
            let mut args = vec!["solve", "--input", inst.to_str().unwrap(), "--algo", algo, "--emit-solution"];
            if let Some(s) = seed {
                args.extend(["--seed", s]);
            }
            let o = run(&args);
            assert_eq!(o.status.code(), Some(0), "{algo}");
            let sol = dir.join("sol.txt");
            fs::write(&sol, stdout(&o)).unwrap();
            let c = run(&["check", "--input", inst.to_str().unwrap(), "--solution", sol.to_str().unwrap()]);
            assert_eq!((c.status.code(), stdout(&c).as_str()), (Some(0), "IR\n"));
        }
    }
    let wrong = dir.join("wrong.txt");
    fs::write(&wrong, "coalition 1: 1 2 3 4 5 6 7\ncoalition 2: 8\nstatus IR\n").unwrap();
    let c = run(&["check", "--input", inst.to_str().unwrap(), "--solution", wrong.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(2));
    assert!(stdout(&c).starts_with("NOT_IR"));
    fs::write(&wrong, "coalition 1: 1 2 3 4 5 6 7\ncoalition 2: 8\nstatus NOT_IR\n").unwrap();
    let c = run(&["check", "--input", inst.to_str().unwrap(), "--solution", wrong.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(1));
}

#[test]
fn generate_is_deterministic() {
    let dir = scratch("gen");
    let src = dir.join("k4e.txt");
    fs::write(&src, K4_MINUS_EDGE).unwrap();
    let clique = run(&["generate", "--reduction", "clique", "--source", src.to_str().unwrap(), "--t", "3"]);
    let text = stdout(&clique);
    assert!(text.starts_with("agents 8\nmode kashg\nk 2\nsym\n"));
    assert!(text.contains("val 7 8 -1\n"));
    let random = ["generate", "--random", "--seed", "7", "--n", "9", "--wmin", "-2", "--wmax", "2", "--with-td"];
    let first = stdout(&run(&random));
    assert!(first.contains("\ntd\n"));
    for _ in 0..2 {
        assert_eq!(stdout(&run(&random)), first);
    }
    let o = run(&["generate", "--reduction", "equitable-partition", "--values", "1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["generate", "--reduction", "general-factors", "--vertices", "2", "--edges", "1-2", "--lists", "1:1;2:1"]);
    assert!(stdout(&o).starts_with("agents 35\n"));
    let o = run(&["generate", "--reduction", "bin-packing", "--values", "1,1,2,2", "--bins", "2", "--capacity", "3", "--variant", "scc-verbatim"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_rows_and_determinism() {
    let dir = scratch("bench");
    let corpus = dir.join("corpus");
    fs::create_dir_all(&corpus).unwrap();
    fs::write(corpus.join("a.txt"), "agents 3\nmode kashg\nk 2\nsym\nval 1 2 -2\nval 2 3 1\n").unwrap();
    fs::write(corpus.join("b.txt"), "agents 3\nmode kashg\nk 2\nsym\nval 1 2 -1\nval 2 3 -1\nval 1 3 -1\n").unwrap();
    let args = ["bench", "--corpus", corpus.to_str().unwrap(), "--algos", "oracle,tw-dp", "--omit-time"];
    let first = stdout(&run(&args));
    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines[0], "instance,algo,verdict,time_ms,work");
    assert!(lines[1].starts_with("a.txt,oracle,YES,,"));
    assert_eq!(lines[2], "a.txt,tw-dp,REFUSED,,");
    assert!(lines[3].starts_with("b.txt,oracle,NO,,"));
    assert!(lines[4].starts_with("b.txt,tw-dp,NO,,"));
    assert_eq!(first.lines().count(), 5);
    for threads in ["1", "3"] {
        let o = bin().args(args).env("HEDONIC_IR_THREADS", threads).output().unwrap();
        assert_eq!(stdout(&o), first);
    }
    let o = run(&["bench", "--corpus", dir.join("missing").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
