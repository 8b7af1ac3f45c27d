//! Elementary operations per message for both receive variants on sparse
//! Erdős–Rényi graphs of growing size.

use distbc::numeric::Float;
use distbc::protocol::Mode;
use distbc::simulator::{run, Schedule, Snapshots};
use distbc::suite::sparse_er;

fn main() {
    println!("n     fast ops/msg  reference ops/msg");
    for n in [50, 100, 200, 400] {
        let g = &sparse_er(n, 8.0, 1, n as u64)[0].graph;
        let per_message = |mode| {
            let sched = Schedule::canonical().with_snapshots(Snapshots::None);
            let (msgs, ops) = run::<Float>(g, mode, &sched, &mut []).unwrap().work();
            ops as f64 / msgs as f64
        };
        println!("{n:<5} {:<13.2} {:.2}", per_message(Mode::Fast), per_message(Mode::Reference));
    }
}
