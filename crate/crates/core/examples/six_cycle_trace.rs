//! Replays the protocol on the unit 6-cycle in exact arithmetic and prints
//! node 5's view of target 3 after every phase.

use distbc::graph::{generate, Family, WeightScheme};
use distbc::numeric::Exact;
use distbc::protocol::{Mode, NodeState};
use distbc::simulator::{run, Schedule};

fn main() {
    let g = generate(&Family::Cycle { n: 6 }, &WeightScheme::Unit).unwrap();
    println!("phase  D[3]  S[5,3]  NH[3]  PH[3]  B[5,3]  C");
    let mut show = |phase: usize, states: &[NodeState<Exact>]| {
        let s = &states[5];
        let d = s.distance(3);
        let d = if d.is_finite() { d.to_decimal_string(3) } else { "inf".into() };
        println!(
            "{phase:>5}  {d:>4}  {:>6}  {:>5}  {:>5}  {:>6}  {}",
            s.path_count(3).to_string(),
            format!("{:?}", s.next_hops(3)),
            format!("{:?}", s.prev_hops(3)),
            s.contribution(3).to_string(),
            s.centrality()
        );
    };
    let r = run::<Exact>(&g, Mode::Fast, &Schedule::canonical(), &mut [&mut show]).unwrap();
    println!(
        "quiescent after phase {} (last C change at {}), silent phase {}",
        r.quiescence_phase, r.c_quiescence_phase, r.phases_executed
    );
}
