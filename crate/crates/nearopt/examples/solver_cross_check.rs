//! Cross-check the bundled simplex against exhaustive vertex enumeration
//! on a seeded corpus of random tiny programs.
//!
//! ```bash
//! cargo run --example solver_cross_check -- [seed] [cases]
//! ```

use nearopt::lp::{DenseSimplex, Direction, LpBackend, SolveStatus};
use nearopt::oracle::{random_program, vertex_enumerate};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|v| v.parse().ok()).unwrap_or(7);
    let cases: usize = args.next().and_then(|v| v.parse().ok()).unwrap_or(300);

    let backend = DenseSimplex::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0usize; 3];
    let mut worst_gap = 0.0f64;
    let start = Instant::now();

    for case in 0..cases {
        let lp = random_program(&mut rng, 6, 6);
        let reference = &vertex_enumerate(&lp).expect("tiny program")[0];
        let solved = backend.solve(&lp, 0, Direction::Min).expect("solver runs");
        assert_eq!(
            solved.status, reference.status,
            "case {case}: solver says {:?}, enumeration says {:?}",
            solved.status, reference.status
        );
        match solved.status {
            SolveStatus::Optimal => {
                counts[0] += 1;
                let gap = (solved.expect_value() - reference.expect_value()).abs();
                assert!(gap <= 1e-6, "case {case}: objective gap {gap}");
                worst_gap = worst_gap.max(gap);
            }
            SolveStatus::Infeasible => counts[1] += 1,
            SolveStatus::Unbounded => counts[2] += 1,
        }
    }

    println!(
        "{cases} programs (seed {seed}): {} optimal, {} infeasible, {} unbounded",
        counts[0], counts[1], counts[2]
    );
    println!("worst objective gap {worst_gap:.2e}, elapsed {:?}", start.elapsed());
    println!("solver and enumeration agree everywhere.");
}
