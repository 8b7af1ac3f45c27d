//! A seeded sweep over weighted Erdős–Rényi graphs through the experiment
//! config, the same path the `distbc run` command takes. Prints the
//! seed-averaged global error per phase.

use distbc::experiment::{cmd_run, ExperimentConfig, GraphSource, Order, Sweep};

fn main() {
    let out = std::env::temp_dir().join("distbc-sweep");
    let mut config = ExperimentConfig::new(GraphSource::generator("er:150:0.07", "set:1,2,5"));
    config.order = Order::Shuffle;
    config.output.dir = out.clone();
    config.sweep = Some(Sweep { seeds: Vec::new(), count: Some(5) });
    println!("{}", config.to_toml());

    let report = cmd_run(&config).unwrap();
    for r in &report.runs {
        println!(
            "seed {:?}: n={} Diam={} quiescent at {} (bound {}), oracle ok {:?}",
            r.seed, r.nodes, r.max_diam, r.quiescence_phase, r.bound, r.oracle_ok
        );
    }
    print!("{}", std::fs::read_to_string(out.join("mean_error.csv")).unwrap());
}
