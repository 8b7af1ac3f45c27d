//! Per-node convergence times on a preferential-attachment graph: when each
//! node learned its distances (T_D) and its centrality (T_C), and how
//! eccentricity relates to centrality.

use distbc::graph::{compute_metrics, generate, Family, WeightScheme};
use distbc::metrics::{convergence_histogram, eccentricity_report, histogram_csv, ConvergenceRecord};
use distbc::numeric::Float;
use distbc::oracle::brandes;
use distbc::protocol::Mode;
use distbc::simulator::{run, Schedule};

fn main() {
    let g = generate(&Family::BarabasiAlbert { n: 400, m: 2, seed: 4 }, &WeightScheme::Unit).unwrap();
    let m = compute_metrics(&g);
    let e = brandes::<Float>(&g).unwrap();
    let r = run::<Float>(&g, Mode::Fast, &Schedule::canonical(), &mut []).unwrap();
    let rec = ConvergenceRecord::new(&r, &e.bc_raw, &e.bc, &m, 1e-9).unwrap();

    println!("diam = {}, quiescent after phase {}", m.diam, r.quiescence_phase);
    let mut top: Vec<usize> = (0..g.node_count()).collect();
    top.sort_by(|&a, &b| e.bc[b].total_cmp(&e.bc[a]));
    println!("node   bc      ecc  T_D  T_C");
    for &v in top.iter().take(8) {
        println!("{v:<6} {:.4}  {:<4} {:<4} {}", e.bc[v], m.ecc_hop[v], rec.t_d[v], rec.t_c[v]);
    }
    let ecc = eccentricity_report(&rec, 10);
    println!("mean eccentricity {:.2}, top-10 by bc {:.2}", ecc.mean_ecc, ecc.mean_ecc_top);
    print!("{}", histogram_csv(&convergence_histogram(&rec)));
}
