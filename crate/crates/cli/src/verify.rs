//! One-shot checks against the published Z_12 / Z_19 data and the closed-form
//! constructions.

use std::fmt::Write as _;

use serde_json::json;
use zrel_core::{
    dft_magnitudes, inherit, k4_pair, scale_zpair, steps, ti_equivalent, Enumerator, Modulus,
    PitchClassSet, Result, ZPair,
};

use crate::output::{CsvTable, OutputDocument, Report};

/// `(T/I classes, interval multisets, multisets with R >= 2)` for k = 3..=9.
pub const Z12_TABLE: [(u64, u64, u64); 7] = [
    (12, 12, 0),
    (29, 28, 1),
    (38, 35, 3),
    (50, 35, 15),
    (38, 35, 3),
    (29, 28, 1),
    (12, 12, 0),
];

/// Same columns for Z_19, k = 3..=7.
pub const Z19_TABLE: [(u64, u64, u64); 5] = [
    (30, 30, 0),
    (120, 120, 0),
    (324, 324, 0),
    (756, 735, 21),
    (1368, 1311, 57),
];

pub const Z12_PAIR_TOTAL: u64 = 23;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Z12,
    Z19,
    Scaling,
    K4,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Self::Z12 => "z12",
            Self::Z19 => "z19",
            Self::Scaling => "scaling",
            Self::K4 => "k4",
            Self::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Checks {
    suite: &'static str,
    out: Vec<Check>,
}

impl Checks {
    fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.out.push(Check {
            suite: self.suite,
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }
}

fn z(n: u32) -> Modulus {
    Modulus::new(n).expect("fixed moduli are valid")
}

fn pairs_at(e: &Enumerator, n: u32, k: u32) -> Result<Vec<ZPair>> {
    let mut out = Vec::new();
    for g in e.z_groups(z(n), k)? {
        for (a, b) in g.pairs() {
            out.push(ZPair::from_compositions(a.inner(), b.inner())?);
        }
    }
    Ok(out)
}

fn z12(e: &Enumerator, c: &mut Checks) -> Result<()> {
    let rows = e.summary(z(12), 3..=9)?;
    let got: Vec<_> = rows
        .iter()
        .map(|r| (r.num_ti_classes, r.num_multisets, r.num_nonreconstructible))
        .collect();
    c.record("z12 table k=3..9", got == Z12_TABLE, format!("{got:?}"));

    let total: u64 = rows.iter().map(|r| r.num_z_pairs).sum();
    c.record(
        "z12 total Z-pairs",
        total == Z12_PAIR_TOTAL,
        format!("{total} pairs"),
    );

    let palindrome = got.iter().eq(got.iter().rev());
    c.record("z12 palindrome", palindrome, "row k equals row 12-k");

    let mut largest = 0;
    for k in 2..=10 {
        for g in e.z_groups(z(12), k)? {
            largest = largest.max(g.size());
        }
    }
    c.record(
        "z12 no Z-group larger than two",
        largest == 2,
        format!("largest R = {largest}"),
    );

    let groups = e.z_groups(z(12), 4)?;
    let witness = groups.len() == 1
        && groups[0]
            .members()
            .iter()
            .map(|m| m.parts().to_vec())
            .collect::<Vec<_>>()
            == vec![vec![1, 2, 4, 5], vec![1, 3, 2, 6]]
        && groups[0].mu().expanded() == vec![1, 2, 3, 4, 5, 6];
    c.record(
        "z12 k=4 all-interval witness",
        witness,
        "(1,2,4,5) / (1,3,2,6)",
    );

    let mut worst = 0f64;
    let mut count = 0;
    for k in 3..=9 {
        for p in pairs_at(e, 12, k)? {
            let (a, b) = (dft_magnitudes(&p.first), dft_magnitudes(&p.second));
            worst = a
                .iter()
                .zip(&b)
                .map(|(x, y)| (x - y).abs())
                .fold(worst, f64::max);
            count += 1;
        }
    }
    c.record(
        "z12 DFT magnitudes agree",
        count == Z12_PAIR_TOTAL && worst < 1e-9,
        format!("{count} pairs, max deviation {worst:.2e}"),
    );
    Ok(())
}

fn z19(e: &Enumerator, c: &mut Checks) -> Result<()> {
    let got: Vec<_> = e
        .summary(z(19), 3..=7)?
        .iter()
        .map(|r| (r.num_ti_classes, r.num_multisets, r.num_nonreconstructible))
        .collect();
    c.record("z19 table k=3..7", got == Z19_TABLE, format!("{got:?}"));

    let a = PitchClassSet::new(z(19), [0, 1, 2, 3, 6, 10])?;
    let b = PitchClassSet::new(z(19), [0, 1, 2, 4, 5, 11])?;
    let (ca, cb) = (
        zrel_core::canonical(&steps(&a)?),
        zrel_core::canonical(&steps(&b)?),
    );
    let same_group = e
        .z_groups(z(19), 6)?
        .iter()
        .any(|g| g.members().contains(&ca) && g.members().contains(&cb));
    c.record(
        "z19 representative pair",
        same_group && !ti_equivalent(&a, &b),
        format!("{a} / {b}"),
    );

    let k_min = e.k_min(z(19), None)?;
    c.record("z19 k_min = 6", k_min == Some(6), format!("{k_min:?}"));
    Ok(())
}

fn scaling(e: &Enumerator, c: &mut Checks) -> Result<()> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for m in 3..=14 {
        for k in 4..=6.min(m) {
            for pair in pairs_at(e, m, k)? {
                for d in [2, 3] {
                    checked += 1;
                    match scale_zpair(&pair, d) {
                        Ok(s)
                            if s.mu == pair.mu.scaled(d)?
                                && !ti_equivalent(&s.first, &s.second) => {}
                        Ok(s) => failures.push(format!("{} x{d}", s.first)),
                        Err(err) => failures.push(err.to_string()),
                    }
                }
            }
        }
    }
    c.record(
        "scaling m<=14 k<=6 d in {2,3}",
        failures.is_empty() && checked > 0,
        format!("{checked} scalings, {} failures", failures.len()),
    );

    let z26 = inherit(e, 26, 13, 4)?;
    c.record(
        "inheritance 13 -> 26 at k=4",
        z26.len() == 1 && z26[0].classification.chain() == vec![2],
        format!("{} pairs", z26.len()),
    );
    let z20 = inherit(e, 20, 10, 4)?;
    c.record(
        "inheritance 10 -> 20 at k=4 is empty",
        z20.is_empty(),
        format!("{} pairs", z20.len()),
    );
    Ok(())
}

fn k4(e: &Enumerator, c: &mut Checks) -> Result<()> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in (8..=64).step_by(4) {
        let (m, half) = (n / 2, n / 4);
        for a in 1..half {
            checked += 1;
            let pair = k4_pair(n, a)?;
            let c1 = steps(&pair.first)?;
            let c2 = steps(&pair.second)?;
            let mut mu = vec![a, half - a, half, half + a, m - a, m];
            mu.sort_unstable();
            let ok = c1.parts() == [a, half - a, half + a, m - a]
                && c2.parts() == [a, half, half - a, m]
                && pair.mu.expanded() == mu
                && !ti_equivalent(&pair.first, &pair.second)
                && pair.classification.is_primitive() == (gcd(a, half) == 1);
            if !ok {
                failures.push(format!("n={n} a={a}"));
            }
        }
    }
    c.record(
        "k4 sweep 8 <= n <= 64",
        failures.is_empty(),
        format!("{checked} pairs, failures: {failures:?}"),
    );

    let mut kmins = Vec::new();
    for n in [8, 12, 16, 20, 24, 26] {
        kmins.push((n, e.k_min(z(n), None)?));
    }
    c.record(
        "k_min = 4 for n in {8,12,16,20,24,26}",
        kmins.iter().all(|(_, k)| *k == Some(4)),
        format!("{kmins:?}"),
    );
    let mut kmins = Vec::new();
    for n in [10, 14, 18, 22, 30] {
        kmins.push((n, e.k_min(z(n), None)?));
    }
    c.record(
        "k_min >= 5 for n in {10,14,18,22,30}",
        kmins.iter().all(|(_, k)| k.is_some_and(|k| k >= 5)),
        format!("{kmins:?}"),
    );

    let z13 = pairs_at(e, 13, 4)?;
    c.record(
        "primitive k=4 pair in Z_13",
        z13.iter().any(|p| p.classification.is_primitive()),
        z13.first()
            .map(|p| format!("{} / {}", p.first, p.second))
            .unwrap_or_default(),
    );
    Ok(())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn run(e: &Enumerator, suite: Suite) -> Result<Vec<Check>> {
    let suites: &[Suite] = match suite {
        Suite::All => &[Suite::Z12, Suite::Z19, Suite::Scaling, Suite::K4],
        _ => std::slice::from_ref(&suite),
    };
    let mut out = Vec::new();
    for &s in suites {
        let mut checks = Checks {
            suite: s.name(),
            out: Vec::new(),
        };
        match s {
            Suite::Z12 => z12(e, &mut checks)?,
            Suite::Z19 => z19(e, &mut checks)?,
            Suite::Scaling => scaling(e, &mut checks)?,
            Suite::K4 => k4(e, &mut checks)?,
            Suite::All => unreachable!(),
        }
        out.extend(checks.out);
    }
    Ok(out)
}

pub fn report(suite: Suite, checks: &[Check]) -> Report {
    let mut csv = CsvTable::new(&["suite", "check", "result", "detail"]);
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "{verdict}  [{}] {}: {}", c.suite, c.name, c.detail);
        csv.push(vec![
            c.suite.into(),
            c.name.clone(),
            verdict.into(),
            c.detail.clone(),
        ]);
        rows.push(
            json!({ "suite": c.suite, "check": c.name, "passed": c.passed, "detail": c.detail }),
        );
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(
        text,
        "{}: {} checks, {failed} failed",
        if failed == 0 { "pass" } else { "FAIL" },
        checks.len()
    );
    let mut params = serde_json::Map::new();
    params.insert("suite".into(), json!(suite.name()));
    Report {
        document: OutputDocument::new("verify", params, rows),
        csv,
        text,
    }
}
