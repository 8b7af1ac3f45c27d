//! Cross-checks the three ways of getting betweenness centrality: path
//! enumeration, Brandes, and the distributed protocol at quiescence.

use distbc::graph::{compute_metrics, generate, Family, WeightScheme};
use distbc::numeric::{Exact, Float};
use distbc::oracle::{brandes, brute_force, check_identities};
use distbc::protocol::Mode;
use distbc::simulator::{run, Schedule};

fn main() {
    let small = [
        ("cycle:6", Family::Cycle { n: 6 }, WeightScheme::Unit),
        ("grid:2x4", Family::Grid { width: 2, height: 4 }, WeightScheme::Unit),
        ("er:8:0.4 {1,2,5}", Family::ErdosRenyi { n: 8, p: 0.4, seed: 3 }, WeightScheme::one_two_five(3)),
    ];
    for (name, f, w) in small {
        let g = generate(&f, &w).unwrap();
        let bf = brute_force(&g).unwrap();
        let br = brandes::<Exact>(&g).unwrap();
        let report = check_identities(&bf, &g, &compute_metrics(&g)).unwrap();
        println!("{name}: brute force == brandes: {}", bf.bc == br.bc);
        println!("  identities checked: {report:?}");
        let bc: Vec<String> = br.bc.iter().map(|b| b.to_string()).collect();
        println!("  bc = [{}]", bc.join(", "));
    }

    let g = generate(&Family::BarabasiAlbert { n: 300, m: 2, seed: 1 }, &WeightScheme::one_two_five(1)).unwrap();
    let e = brandes::<Float>(&g).unwrap();
    let r = run::<Float>(&g, Mode::Fast, &Schedule::canonical(), &mut []).unwrap();
    let worst = r
        .final_centrality()
        .iter()
        .zip(&e.bc_raw)
        .map(|(c, b)| (c - b).abs() / b.max(1.0))
        .fold(0.0, f64::max);
    println!("ba:300:2 weighted: protocol vs brandes, max relative deviation {worst:.2e}");
}
