//! Builders for each subcommand's [`Report`].

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use zrel_core::{
    classify_pair, inherit, k4_pair, Classification, Enumerator, Error, Modulus, PitchClassSet,
    Result, ZGroup, ZPair,
};

use crate::output::{join, CsvTable, OutputDocument, Report};

fn params(entries: &[(&str, Value)]) -> Map<String, Value> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn mu_json(mu: &zrel_core::IntervalVector) -> Value {
    json!({ "counts": mu.counts(), "multiset": mu.expanded() })
}

fn classification_json(c: &Classification) -> Value {
    match c {
        Classification::Primitive => json!({ "kind": "primitive" }),
        Classification::Derived { factor, base } => json!({
            "kind": "derived",
            "factor": factor,
            "chain": c.chain(),
            "base": pair_json(base),
        }),
    }
}

fn classification_label(c: &Classification) -> String {
    match c {
        Classification::Primitive => "primitive".into(),
        Classification::Derived { .. } => {
            let root = chain_root(c);
            format!(
                "derived(d={}, root Z_{}: {} / {})",
                join(&c.chain(), "*"),
                root.modulus(),
                root.first,
                root.second
            )
        }
    }
}

fn chain_root(c: &Classification) -> &ZPair {
    match c {
        Classification::Derived { base, .. } => base.primitive_root(),
        Classification::Primitive => unreachable!("primitive pairs have no root below them"),
    }
}

fn pair_json(pair: &ZPair) -> Value {
    let (c1, c2) = pair.compositions();
    json!({
        "n": pair.modulus().get(),
        "first": pair.first.elements(),
        "second": pair.second.elements(),
        "first_composition": c1.to_string(),
        "second_composition": c2.to_string(),
        "mu": mu_json(&pair.mu),
        "classification": classification_json(&pair.classification),
    })
}

const PAIR_HEADER: &[&str] = &[
    "n",
    "first",
    "second",
    "first_composition",
    "second_composition",
    "mu_counts",
    "mu_multiset",
    "classification",
];

fn pair_record(pair: &ZPair) -> Vec<String> {
    let (c1, c2) = pair.compositions();
    vec![
        pair.modulus().to_string(),
        join(pair.first.elements(), ","),
        join(pair.second.elements(), ","),
        c1.to_string(),
        c2.to_string(),
        join(pair.mu.counts(), ","),
        join(&pair.mu.expanded(), ","),
        classification_label(&pair.classification),
    ]
}

fn pair_text(out: &mut String, pair: &ZPair) {
    let (c1, c2) = pair.compositions();
    let _ = writeln!(out, "Z_{} pair:", pair.modulus());
    let _ = writeln!(out, "  {:<24} {}", pair.first.to_string(), c1);
    let _ = writeln!(out, "  {:<24} {}", pair.second.to_string(), c2);
    let _ = writeln!(out, "  mu = {{{}}}", join(&pair.mu.expanded(), ","));
    let _ = writeln!(out, "  {}", classification_label(&pair.classification));
}

fn pairs_report(
    command: &str,
    parameters: Map<String, Value>,
    pairs: &[ZPair],
    heading: String,
) -> Report {
    let mut csv = CsvTable::new(PAIR_HEADER);
    let mut text = heading;
    text.push('\n');
    for p in pairs {
        csv.push(pair_record(p));
        pair_text(&mut text, p);
    }
    Report {
        document: OutputDocument::new(command, parameters, pairs.iter().map(pair_json).collect()),
        csv,
        text,
    }
}

pub fn table(e: &Enumerator, n: Modulus, k_min: u32, k_max: u32) -> Result<Report> {
    if k_min > k_max {
        return Err(Error::Precondition(format!(
            "--kmin {k_min} exceeds --kmax {k_max}"
        )));
    }
    let rows = e.summary(n, k_min..=k_max)?;
    let mut csv = CsvTable::new(&[
        "n",
        "k",
        "ti_classes",
        "multisets",
        "nonreconstructible",
        "z_pairs",
    ]);
    let mut text = String::new();
    let r_label = format!("R(mu,{n}) >= 2");
    let _ = writeln!(
        text,
        "{:>3}  {:>11}  {:>18}  {:>w$}",
        "k",
        "T/I classes",
        "Interval multisets",
        r_label,
        w = r_label.len()
    );
    let mut json_rows = Vec::new();
    for r in &rows {
        csv.push(vec![
            r.n.to_string(),
            r.k.to_string(),
            r.num_ti_classes.to_string(),
            r.num_multisets.to_string(),
            r.num_nonreconstructible.to_string(),
            r.num_z_pairs.to_string(),
        ]);
        let _ = writeln!(
            text,
            "{:>3}  {:>11}  {:>18}  {:>w$}",
            r.k,
            r.num_ti_classes,
            r.num_multisets,
            r.num_nonreconstructible,
            w = r_label.len()
        );
        json_rows.push(json!({
            "n": r.n,
            "k": r.k,
            "ti_classes": r.num_ti_classes,
            "multisets": r.num_multisets,
            "nonreconstructible": r.num_nonreconstructible,
            "z_pairs": r.num_z_pairs,
        }));
    }
    let total: u64 = rows.iter().map(|r| r.num_z_pairs).sum();
    let _ = writeln!(text, "Z-related pairs: {total}");
    Ok(Report {
        document: OutputDocument::new(
            "table",
            params(&[
                ("n", json!(n.get())),
                ("k_min", json!(k_min)),
                ("k_max", json!(k_max)),
            ]),
            json_rows,
        ),
        csv,
        text,
    })
}

fn group_classification(group: &ZGroup) -> Result<Classification> {
    let sets = group.class().sets();
    classify_pair(&sets[0], &sets[1])
}

fn group_json(index: usize, group: &ZGroup, classification: &Classification) -> Value {
    let members: Vec<Value> = group
        .members()
        .iter()
        .zip(group.class().sets())
        .map(|(c, s)| json!({ "composition": c.to_string(), "parts": c.parts(), "set": s.elements() }))
        .collect();
    json!({
        "group": index,
        "mu": mu_json(group.mu()),
        "realizations": group.size(),
        "members": members,
        "classification": classification_json(classification),
    })
}

pub fn zpairs(e: &Enumerator, n: Modulus, k: u32) -> Result<Report> {
    let groups = e.z_groups(n, k)?;
    let mut csv = CsvTable::new(&[
        "group",
        "mu_counts",
        "mu_multiset",
        "realizations",
        "classification",
        "composition",
        "set",
    ]);
    let mut text = String::new();
    let _ = writeln!(text, "Z-groups in Z_{n} at k = {k}: {}", groups.len());
    let mut rows = Vec::new();
    for (i, g) in groups.iter().enumerate() {
        let index = i + 1;
        let class = group_classification(g)?;
        let label = classification_label(&class);
        let _ = writeln!(
            text,
            "#{index} mu {} = {{{}}}  R = {}  {label}",
            g.mu(),
            join(&g.mu().expanded(), ","),
            g.size()
        );
        for (c, s) in g.members().iter().zip(g.class().sets()) {
            let _ = writeln!(text, "    {:<24} {}", c.to_string(), s);
            csv.push(vec![
                index.to_string(),
                join(g.mu().counts(), ","),
                join(&g.mu().expanded(), ","),
                g.size().to_string(),
                label.clone(),
                c.to_string(),
                join(s.elements(), ","),
            ]);
        }
        rows.push(group_json(index, g, &class));
    }
    Ok(Report {
        document: OutputDocument::new(
            "zpairs",
            params(&[("n", json!(n.get())), ("k", json!(k))]),
            rows,
        ),
        csv,
        text,
    })
}

pub fn kmin(e: &Enumerator, n: Modulus, k_max: Option<u32>) -> Result<Report> {
    let bound = k_max.unwrap_or(n.get() / 2);
    let witness = e.k_min_with_witness(n, Some(bound))?;
    let mut csv = CsvTable::new(&["n", "k_max", "k_min", "witness_mu", "witness_members"]);
    let mut text = String::new();
    let row = match &witness {
        Some(w) => {
            let g = &w.groups[0];
            let class = group_classification(g)?;
            let members = join(g.members(), " ");
            let _ = writeln!(text, "k_min({n}) = {}", w.k);
            let _ = writeln!(
                text,
                "witness: mu {} = {{{}}}  {members}  {}",
                g.mu(),
                join(&g.mu().expanded(), ","),
                classification_label(&class)
            );
            csv.push(vec![
                n.to_string(),
                bound.to_string(),
                w.k.to_string(),
                join(g.mu().counts(), ","),
                members,
            ]);
            json!({
                "n": n.get(),
                "k_max": bound,
                "k_min": w.k,
                "z_groups_at_k_min": w.groups.len(),
                "witness": group_json(1, g, &class),
            })
        }
        None => {
            let _ = writeln!(text, "k_min({n}): none up to k_max = {bound}");
            csv.push(vec![
                n.to_string(),
                bound.to_string(),
                String::new(),
                String::new(),
                String::new(),
            ]);
            json!({ "n": n.get(), "k_max": bound, "k_min": null, "z_groups_at_k_min": 0, "witness": null })
        }
    };
    if k_max.is_none() {
        let _ = writeln!(
            text,
            "(searched k <= n/2, assuming a Z-pair at k implies one at n - k by complementation)"
        );
    }
    Ok(Report {
        document: OutputDocument::new(
            "kmin",
            params(&[("n", json!(n.get())), ("k_max", json!(bound))]),
            vec![row],
        ),
        csv,
        text,
    })
}

pub fn k4(n: u32, a: u32) -> Result<Report> {
    let pair = k4_pair(n, a)?;
    Ok(pairs_report(
        "k4",
        params(&[("n", json!(n)), ("a", json!(a))]),
        &[pair],
        format!("k=4 construction, n = {n}, a = {a}"),
    ))
}

pub fn scale(e: &Enumerator, n_base: Modulus, factor: u32, k: u32) -> Result<Report> {
    if factor == 0 {
        return Err(Error::Precondition(
            "scaling factor must be at least 1".into(),
        ));
    }
    let target = Modulus::from_u64(n_base.get() as u64 * factor as u64)?;
    let pairs = if factor == 1 {
        e.z_groups(n_base, k)?
            .iter()
            .flat_map(|g| {
                g.pairs()
                    .map(|(a, b)| ZPair::from_compositions(a.inner(), b.inner()))
                    .collect::<Vec<_>>()
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        inherit(e, target.get(), n_base.get(), k)?
    };
    Ok(pairs_report(
        "scale",
        params(&[
            ("n_base", json!(n_base.get())),
            ("d", json!(factor)),
            ("k", json!(k)),
        ]),
        &pairs,
        format!(
            "Z-pairs of Z_{n_base} at k = {k} scaled by {factor} into Z_{target}: {}",
            pairs.len()
        ),
    ))
}

pub fn classify(n: Modulus, first: &str, second: &str) -> Result<Report> {
    let a = PitchClassSet::parse(n, first)?;
    let b = PitchClassSet::parse(n, second)?;
    let pair = ZPair::new(a, b)?;
    Ok(pairs_report(
        "classify",
        params(&[
            ("n", json!(n.get())),
            ("first", json!(first)),
            ("second", json!(second)),
        ]),
        &[pair],
        format!("classification in Z_{n}"),
    ))
}
