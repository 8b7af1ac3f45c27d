//! Builds one instance of every generator family and prints its size and
//! hop diameters; writes the weighted ER instance as an edge list.

use distbc::graph::{compute_metrics, generate, write_edge_list, Family, WeightScheme};
use distbc::suite::{er_probability, geometric_radius};

fn main() {
    let families = [
        "grid:10x10",
        "hypercube:6",
        "tree:5",
        "cycle:12",
        "path:9",
        "star:7",
        "complete:6",
        "ba:100:2:7",
    ];
    for spec in families {
        let f: Family = spec.parse().unwrap();
        report(spec, &generate(&f, &WeightScheme::Unit).unwrap());
    }
    let geo = Family::Geometric { n: 80, radius: geometric_radius(80, 3.0), seed: 5 };
    report("geometric n=80", &generate(&geo, &WeightScheme::Unit).unwrap());

    let er = Family::ErdosRenyi { n: 200, p: er_probability(200, 2.0), seed: 11 };
    let g = generate(&er, &WeightScheme::one_two_five(11)).unwrap();
    report("er n=200 {1,2,5}", &g);
    let text = write_edge_list(&g);
    let path = std::env::temp_dir().join("er200.txt");
    std::fs::write(&path, &text).unwrap();
    println!("wrote {} ({} lines)", path.display(), text.lines().count());
}

fn report(name: &str, g: &distbc::graph::Graph) {
    let m = compute_metrics(g);
    println!(
        "{name:<18} n={:<4} m={:<5} diam={:<3} Diam={:<3} weighted={}",
        g.node_count(),
        g.edge_count(),
        m.diam,
        m.max_diam,
        !g.is_unit_weight()
    );
}
