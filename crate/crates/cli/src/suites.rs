//! Named verification suites for `qkneser verify`.

use clap::ValueEnum;
use rayon::prelude::*;

use qkneser::budget::Budget;
use qkneser::ekr::{is_independent, max_independent_set_exact, standard_nest, standard_pencil};
use qkneser::generators::{complete, cycle, grid, petersen, random_graph, random_tree};
use qkneser::gf::prime_power_decomposition;
use qkneser::qcount::{
    alpha_formula, check_bounds_l22, check_identity_l22, degree_formula, gauss, intersect_count,
    sweep, tw_formula_cograssmann, tw_formula_qkneser, Count, Params,
};
use qkneser::td::{star_decomposition, validate};
use qkneser::twsolve::{balanced_separator_search, treewidth_exact, Balance, SolveStatus};
use qkneser::{build_qkneser, Graph};

use crate::report::RunReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Gaussian binomial recurrences, growth bounds and intersection sums.
    Identities,
    /// Proof inequalities and the degree/independence gap over a grid.
    Claims,
    /// Degrees and intersection histograms of built graphs.
    Degrees,
    /// Independence numbers and pencil/nest families.
    Ekr,
    /// Star decompositions: validity and width against the formulas.
    Td,
    /// Exact treewidth and separators of order tw + 1 on small graphs.
    Separators,
}

pub struct Grid {
    pub qmax: u64,
    pub nmax: u32,
    pub kmax: u32,
    pub max_vertices: usize,
}

/// Prime powers in `2..=qmax`.
fn field_orders(qmax: u64) -> Vec<u64> {
    (2..=qmax)
        .filter(|&q| prime_power_decomposition(q).is_some())
        .collect()
}

/// Every buildable `(n, k, t, q)` with `1 <= t < k < n <= nmax`.
fn instances(grid: &Grid) -> Vec<Params> {
    let mut out = Vec::new();
    for q in field_orders(grid.qmax) {
        for n in 3..=grid.nmax {
            for k in 2..n.min(grid.kmax + 1) {
                if gauss(n as i64, k as i64, q).unwrap() > Count::from(grid.max_vertices) {
                    continue;
                }
                for t in 1..k {
                    out.push(Params::new(n, k, t, q).unwrap());
                }
            }
        }
    }
    out
}

/// Runs `suite`, appending counts to `report`; returns the failures.
pub fn run(suite: Suite, grid: &Grid, report: &mut RunReport) -> Vec<String> {
    match suite {
        Suite::Identities => identities(grid, report),
        Suite::Claims => claims(grid, report),
        Suite::Degrees => degrees(grid, report),
        Suite::Ekr => ekr(grid, report),
        Suite::Td => td(grid, report),
        Suite::Separators => separators(report),
    }
}

fn identities(grid: &Grid, report: &mut RunReport) -> Vec<String> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for q in field_orders(grid.qmax) {
        for m in 1..=grid.nmax {
            for i in 1..=m {
                if !check_identity_l22(m, i, q).unwrap() || !check_bounds_l22(m, i, q).unwrap() {
                    failures.push(format!("binomial q={q} m={m} i={i}"));
                }
                checked += 1;
            }
            for j in 0..=m {
                for i in 0..=m {
                    let total: Count = (0..=m as i64)
                        .map(|x| intersect_count(m, j, i, x, q).unwrap())
                        .sum();
                    if total != gauss(m as i64, i as i64, q).unwrap() {
                        failures.push(format!("intersection sum q={q} n={m} j={j} i={i}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    report.push("checked", checked);
    failures
}

fn claims(grid: &Grid, report: &mut RunReport) -> Vec<String> {
    let records = match sweep(&field_orders(grid.qmax), grid.kmax, grid.nmax) {
        Ok(r) => r,
        Err(e) => return vec![e.to_string()],
    };
    report.push("records", records.len());
    report.push(
        "in_exact_range",
        records.iter().filter(|r| r.claim2.is_some()).count(),
    );
    records
        .iter()
        .filter(|r| !r.all_hold())
        .map(|r| format!("record {r}"))
        .collect()
}

fn degrees(grid: &Grid, report: &mut RunReport) -> Vec<String> {
    let mut failures = Vec::new();
    let mut vertices = 0;
    let all = instances(grid);
    for p in &all {
        let g = build_qkneser(p).expect("instance sizes are pre-checked");
        let delta = degree_formula(p).unwrap();
        let expected: Vec<Count> = (0..=p.k as i64)
            .map(|m| intersect_count(p.n, p.k, p.k, m, p.q).unwrap())
            .collect();
        let bad = (0..g.vertex_count()).into_par_iter().find_first(|&v| {
            let hist = g.intersection_histogram(v).unwrap();
            Count::from(g.degree(v)) != delta
                || hist
                    .into_iter()
                    .map(Count::from)
                    .ne(expected.iter().cloned())
        });
        if let Some(v) = bad {
            failures.push(format!("{p} vertex {}", v + 1));
        }
        vertices += g.vertex_count();
    }
    report.push("instances", all.len());
    report.push("vertices", vertices);
    failures
}

fn ekr(grid: &Grid, report: &mut RunReport) -> Vec<String> {
    let mut failures = Vec::new();
    let mut families = 0;
    let mut exact_alpha = 0;
    for p in instances(grid).into_iter().filter(|p| p.n >= 2 * p.k) {
        let g = build_qkneser(&p).unwrap();
        let alpha = alpha_formula(&p).unwrap();
        let pencil = standard_pencil(&g).unwrap();
        if !is_independent(&g, &pencil) || Count::from(pencil.count()) != alpha {
            failures.push(format!("{p} pencil"));
        }
        families += 1;
        if p.n == 2 * p.k {
            let nest = standard_nest(&g).unwrap();
            if !is_independent(&g, &nest) || Count::from(nest.count()) != alpha {
                failures.push(format!("{p} nest"));
            }
            families += 1;
        }
        if g.vertex_count() <= 160 {
            let r = max_independent_set_exact(&g, Budget::millis(60_000));
            if r.exact && Count::from(r.size) != alpha {
                failures.push(format!("{p} independence number {} vs {alpha}", r.size));
            }
            exact_alpha += usize::from(r.exact);
        }
    }
    report.push("families", families);
    report.push("exact_alpha", exact_alpha);
    failures
}

fn td(grid: &Grid, report: &mut RunReport) -> Vec<String> {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut formula_matches = 0;
    for p in instances(grid).into_iter().filter(|p| p.n >= 2 * p.k) {
        let g = build_qkneser(&p).unwrap();
        let pencil = standard_pencil(&g).unwrap();
        let d = star_decomposition(&g, &pencil).unwrap();
        let r = validate(&g, &d).unwrap();
        let expected = (g.vertex_count() - pencil.count() - 1).max(g.max_degree());
        if !r.is_valid() || r.width != expected {
            failures.push(format!("{p} star width {} valid {}", r.width, r.is_valid()));
        }
        let formula = tw_formula_qkneser(&p).ok().or_else(|| {
            (p.t + 1 == p.k)
                .then(|| tw_formula_cograssmann(p.n, p.k, p.q).ok())
                .flatten()
                .and_then(|v| match v {
                    qkneser::qcount::TwValue::Exact(w) => Some(w),
                    qkneser::qcount::TwValue::Window { .. } => None,
                })
        });
        if let Some(w) = formula {
            if Count::from(r.width) != w {
                failures.push(format!("{p} star width {} vs formula {w}", r.width));
            }
            formula_matches += 1;
        }
        checked += 1;
    }
    report.push("decompositions", checked);
    report.push("formula_checked", formula_matches);
    failures
}

fn separators(report: &mut RunReport) -> Vec<String> {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for m in 1..=10 {
        graphs.push((format!("K{m}"), complete(m)));
    }
    for n in 3..=10 {
        graphs.push((format!("C{n}"), cycle(n)));
    }
    for n in 2..=16 {
        graphs.push((format!("tree{n}"), random_tree(n, n as u64)));
    }
    graphs.push(("grid3x3".into(), grid(3, 3)));
    graphs.push(("petersen".into(), petersen()));
    for seed in 0..30 {
        graphs.push((
            format!("random{seed}"),
            random_graph(6 + seed as usize % 6, 0.3, seed),
        ));
    }
    let mut failures = Vec::new();
    for (name, g) in &graphs {
        let r = treewidth_exact(g, Budget::millis(10_000)).expect("corpus graphs are small");
        if r.status != SolveStatus::Exact {
            failures.push(format!("{name} treewidth not resolved"));
            continue;
        }
        match balanced_separator_search(g, r.upper + 1, Balance::default()) {
            Ok(Some(w)) if w.verify(g, Balance::default()) => {}
            other => failures.push(format!("{name} tw={} separator {other:?}", r.upper)),
        }
    }
    report.push("graphs", graphs.len());
    failures
}
