//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use lien2::verify::{self, Check, SampleSizes, VerifyConfig};

fn describe(c: &Check) -> String {
    c.metrics
        .iter()
        .map(|m| match (m.max_defect, m.bound) {
            (Some(d), Some(b)) => format!("{} max {d:.3e} (bound {b:e}, n={})", m.name, m.samples),
            _ => format!("{} {}/{} ok", m.name, m.samples - m.failures, m.samples),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn verify_all_stdout() -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_lien2"))
        .args(["verify-all", "--seed", "42", "--quiet"])
        .env_remove("LIEN2_SEED")
        .output()
        .expect("lien2 binary runs");
    assert!(out.status.code().is_some(), "lien2 terminated by signal");
    out.stdout
}

fn main() -> ExitCode {
    let cfg = VerifyConfig { seed: 42, k_max: 3, ..VerifyConfig::default() };
    let n = SampleSizes::default();
    let mut all = true;
    let mut line = |id: u8, ok: bool, text: String| {
        all &= ok;
        println!("criterion {id}: {} {text}", if ok { "PASS" } else { "FAIL" });
    };

    let start = Instant::now();
    let c1 = verify::check_exp_oracle(&cfg, n.exp);
    let secs = start.elapsed().as_secs_f64();
    line(1, c1.passed, format!("{} [{secs:.2} s]", describe(&c1)));
    for check in [
        verify::check_eigenvalues(&cfg, n.eigen),
        verify::check_orbit_dimension(&cfg, n.orbit_dim),
        verify::check_orbit_invariants(&cfg, n.orbit_functionals, n.orbit_moves),
        verify::check_representations(&cfg, n.char_shift),
        verify::check_characters(&cfg, n.characters),
        verify::check_foliation(&cfg, n.tangency, n.h_points, n.jacobian_triples),
        verify::check_exactness(&cfg),
    ] {
        let mut text = describe(&check);
        for note in &check.notes {
            text.push_str(&format!("\n    {note}"));
        }
        line(check.id, check.passed, text);
    }

    let first = verify_all_stdout();
    let second = verify_all_stdout();
    let same = !first.is_empty() && first == second;
    line(9, same, format!("verify-all --seed 42 reports: {} and {} bytes, identical = {same}", first.len(), second.len()));

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
