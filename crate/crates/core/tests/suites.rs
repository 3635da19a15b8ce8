use berezin_core::suites::{run, DEFAULT_SEED, SUITES};

fn check(name: &str) {
    let start = std::time::Instant::now();
    for report in run(name, DEFAULT_SEED).unwrap() {
        for line in report.lines.iter().filter(|l| !l.pass) {
            println!("{line}");
        }
        println!("{} in {:?}", report.to_string().lines().last().unwrap(), start.elapsed());
        assert!(report.passed(), "suite {name} failed");
    }
    assert!(start.elapsed().as_secs() < 60, "suite {name} took {:?}", start.elapsed());
}

#[test]
fn suite_names_are_known() {
    assert_eq!(SUITES.len(), 8);
}

#[test]
fn ber_multiplicativity() {
    check("ber-multiplicativity");
}

#[test]
fn homological_ber() {
    check("homological-ber");
}

#[test]
fn change_of_variables() {
    check("change-of-variables");
}

#[test]
fn fubini_signs() {
    check("fubini-signs");
}

#[test]
fn module_rule() {
    check("module-rule");
}

#[test]
fn unimodular_basis_change() {
    check("unimodular-basis-change");
}

#[test]
fn invariant_density() {
    check("invariant-density");
}

#[test]
fn supergroups() {
    check("supergroups");
}
