use qkneser::budget::Budget;
use qkneser::ekr::{max_independent_set_exact, standard_pencil};
use qkneser::pace::{kneser_metadata, read_gr, write_gr};
use qkneser::qcount::{degree_formula, gauss, intersect_count, Count, Params};
use qkneser::td::{read_td, star_decomposition, validate, write_td};
use qkneser::twsolve::{clique_lower_bound, treewidth_exact, SolveStatus};
use qkneser::{build_cograssmann, build_qkneser};

fn params(n: u32, k: u32, t: u32, q: u64) -> Params {
    Params::new(n, k, t, q).unwrap()
}

#[test]
fn small_instances_match_formulas() {
    for p in [
        params(4, 2, 1, 2),
        params(5, 2, 1, 2),
        params(6, 3, 1, 2),
        params(6, 3, 2, 2),
        params(4, 2, 1, 3),
    ] {
        let g = build_qkneser(&p).unwrap();
        assert_eq!(
            Count::from(g.vertex_count()),
            gauss(p.n as i64, p.k as i64, p.q).unwrap()
        );
        assert!(g.is_regular());
        assert_eq!(
            Count::from(g.max_degree()),
            degree_formula(&p).unwrap(),
            "{p}"
        );
        let hist = g.intersection_histogram(g.vertex_count() - 1).unwrap();
        for (m, &h) in hist.iter().enumerate() {
            assert_eq!(
                Count::from(h),
                intersect_count(p.n, p.k, p.k, m as i64, p.q).unwrap()
            );
        }
    }
}

#[test]
fn export_and_reload_are_identical() {
    let p = params(4, 2, 1, 2);
    let g = build_qkneser(&p).unwrap();
    let text = write_gr(&g, &kneser_metadata(&p, &g));
    assert!(text.starts_with("c "));
    assert!(text.contains("p tw 35 280\n"));
    let back = read_gr(&text).unwrap();
    assert_eq!(
        back.graph.edges().collect::<Vec<_>>(),
        g.edges().collect::<Vec<_>>()
    );
    assert!(back.metadata().contains(&("vertices", "35")));
    assert_eq!(
        write_gr(&build_qkneser(&p).unwrap(), &kneser_metadata(&p, &g)),
        text
    );
}

#[test]
fn star_decomposition_survives_round_trip() {
    let g = build_cograssmann(5, 2, 2).unwrap();
    let pencil = standard_pencil(&g).unwrap();
    let d = star_decomposition(&g, &pencil).unwrap();
    let back = read_td(&write_td(&d)).unwrap();
    assert_eq!(back, d);
    let report = validate(&g, &back).unwrap();
    assert!(report.is_valid());
    assert_eq!(report.width, 139);
}

#[test]
fn bounds_agree_on_shared_instance() {
    // K_2(4,2,1) is also the complement of the Grassmann graph G_2(4,2)
    let g = build_qkneser(&params(4, 2, 1, 2)).unwrap();
    assert_eq!(g, build_cograssmann(4, 2, 2).unwrap());
    let mis = max_independent_set_exact(&g, Budget::unlimited());
    let star = star_decomposition(&g, &mis.witness).unwrap();
    let star_width = validate(&g, &star).unwrap().width;
    assert_eq!(star_width, 27);

    let omega = clique_lower_bound(&g, Budget::unlimited());
    assert_eq!(omega, 5);
    let r = treewidth_exact(&g, Budget::millis(120_000)).unwrap();
    assert!(omega - 1 <= r.lower);
    assert!(r.upper <= star_width);
    if r.status == SolveStatus::Exact {
        assert!(validate(&g, &r.decomposition(&g)).unwrap().is_valid());
    }
}
