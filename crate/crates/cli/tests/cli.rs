use std::io::Write;
use std::process::Command;

use berezin_cli::{parse_and_dispatch, EXIT_MATH, EXIT_OK, EXIT_USAGE};
use berezin_core::scalar::{rat, ratio, Scalar};
use berezin_core::text::{parse_expression, parse_grassmann, parse_scalar, Vocabulary};
use berezin_core::OddIndex;
use tempfile::NamedTempFile;

const GL11: &str = "\
# gl(1|1) in the basis E11, E22, E12, E21
E11:0 E22:0 E12:1 E21:1
0 2 -> 0 0 1 0
0 3 -> 0 0 0 -1
1 2 -> 0 0 -1 0
1 3 -> 0 0 0 1
2 3 -> 1 1 0 0
";

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_berezin")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn ber_of_block_diagonal() {
    let f = file("1 1 0\n6\n0\n0\n3\n");
    let (code, out, _) = run(&["ber", path(&f)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "2\n");
}

#[test]
fn ber_output_reparses() {
    let f = file("# (1|1) over two generators\n1 1 2\n2 + xi1 xi2\nxi1\nxi2\n1\n");
    let (code, out, _) = run(&["ber", path(&f)]);
    assert_eq!(code, EXIT_OK);
    // Ber = (a - b d⁻¹ c)/d = 2 + ξ1ξ2 - ξ1ξ2 = 2
    let value = parse_grassmann(out.trim(), 2).unwrap();
    assert_eq!(value.body(), rat(2));
    assert!(value.soul().is_zero());
}

#[test]
fn ber_of_singular_matrix_is_a_math_failure() {
    let f = file("1 1 0\n1\n0\n0\n0\n");
    let (code, _, err) = run(&["ber", path(&f)]);
    assert_eq!(code, EXIT_MATH);
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn malformed_file_reports_position() {
    let f = file("1 1 0\n6 +\n0\n0\n3\n");
    let (code, _, err) = run(&["ber", path(&f)]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 2, column"), "{err}");
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("frobnicate"));
}

#[test]
fn missing_file_is_usage_error() {
    let (code, _, _) = run(&["ber", "/nonexistent/matrix.txt"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn integrate_gaussian_and_box() {
    // ∫ (3x²ξ + x) D(x,ξ) = -∫ 3x² e^{-x²/2} = -3s on the Gaussian line
    let f = file("1 1 0\n3 x1^2 : xi1\nx1 : 1\n");
    let (code, out, _) = run(&["integrate", path(&f), "--backend", "gaussian"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(parse_scalar(out.trim()).unwrap(), Scalar::new(rat(-3), 1));

    let (code, out, _) = run(&["integrate", path(&f), "--backend", "box", "0", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "-8");
}

#[test]
fn integrate_with_negative_box_bounds() {
    let f = file("1 1 0\nbox [-1,1]\nx1^2 : xi1\n");
    let (code, out, _) = run(&["integrate", path(&f), "--backend", "box", "-1", "1"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out.trim(), "-2/3");
}

#[test]
fn integrate_with_odd_parameters() {
    let f = file("1 1 1\nbox [0,1]\n3 x1^2 : xi1 eta1\nx1 : xi1\n");
    let (code, out, _) = run(&["integrate", path(&f), "--backend", "box", "0", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "(-eta1 - 1/2)");
    let vocab = Vocabulary {
        aux: 1,
        ..Default::default()
    };
    let value = parse_expression(out.trim(), &vocab).unwrap();
    assert_eq!(value.coefficient(OddIndex::single(0)).as_constant(), Some(rat(-1)));
    assert_eq!(value.body().as_constant(), Some(ratio(-1, 2)));
}

#[test]
fn integrate_rejects_wrong_bound_count() {
    let f = file("1 1 0\nx1 : xi1\n");
    let (code, _, err) = run(&["integrate", path(&f), "--backend", "box", "0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("2 bounds"), "{err}");
}

#[test]
fn unimodular_borel_exits_zero() {
    let f = file(GL11);
    let (code, out, _) = run(&["unimodular", path(&f), "--subalgebra", "0,1,2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("NOT_UNIMODULAR witness=E11 str=1"), "{out}");
}

#[test]
fn unimodular_cartan_and_zero() {
    let f = file(GL11);
    let (_, out, _) = run(&["unimodular", path(&f), "--subalgebra", "0,1"]);
    assert!(out.starts_with("UNIMODULAR"), "{out}");
    let (_, out, _) = run(&["unimodular", path(&f), "--subalgebra", ""]);
    assert!(out.starts_with("UNIMODULAR"), "{out}");
}

#[test]
fn unimodular_rejects_out_of_range_index() {
    let f = file(GL11);
    let (code, _, _) = run(&["unimodular", path(&f), "--subalgebra", "0,9"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn non_closed_subalgebra_is_a_math_failure() {
    let f = file(GL11);
    // [E12, E21] = E11 + E22 leaves span{E12, E21}
    let (code, _, err) = run(&["unimodular", path(&f), "--subalgebra", "2,3"]);
    assert_eq!(code, EXIT_MATH, "{err}");
}

#[test]
fn examples_list_and_run() {
    let (code, out, _) = run(&["examples", "list"]);
    assert_eq!(code, EXIT_OK);
    for name in ["fubini-ax+b", "product-ax+b", "heisenberg-fubini", "unimod-gl11", "unimod-borel"] {
        assert!(out.contains(name));
        let (code, out, _) = run(&["examples", "run", name]);
        assert_eq!(code, EXIT_OK, "{name}: {out}");
        assert!(out.contains("all equalities hold"));
    }
    let (code, _, _) = run(&["examples", "run", "nope"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn fubini_example_shows_both_sides() {
    let outcome = parse_and_dispatch(["berezin", "examples", "run", "fubini-ax+b"]);
    assert_eq!(outcome.code, EXIT_OK);
    assert!(outcome.stdout.contains("lhs=1/30 rhs=1/30"), "{}", outcome.stdout);
}

#[test]
fn verify_prints_seed_and_pass_count() {
    let (code, out, _) = run(&["verify", "fubini-signs"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("seed "));
    assert!(out.contains("162/162 passed"), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS ")).count(), 162);
}

#[test]
fn verify_is_deterministic_for_a_seed() {
    let a = parse_and_dispatch(["berezin", "verify", "change-of-variables", "--seed", "11"]);
    let b = parse_and_dispatch(["berezin", "verify", "change-of-variables", "--seed", "11"]);
    assert_eq!(a, b);
    assert_eq!(a.code, EXIT_OK);
    assert!(a.stdout.starts_with("seed 11\n"));
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let outcome = parse_and_dispatch(["berezin", "verify", "nope"]);
    assert_eq!(outcome.code, EXIT_USAGE);
}

#[test]
fn help_exits_zero() {
    let outcome = parse_and_dispatch(["berezin", "--help"]);
    assert_eq!(outcome.code, EXIT_OK);
    assert!(outcome.stdout.contains("verify"));
}
