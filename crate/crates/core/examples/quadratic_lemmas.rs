// The two constrained quadratic maxima behind the bounds, checked against
// an elimination-and-sampling oracle.
//
// ```bash
// cargo run --example quadratic_lemmas
// ```

use curvlike::optim::{brute_force_max, ConstrainedQuadratic, LemmaKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for kind in [LemmaKind::F1, LemmaKind::F2] {
        for (n, sum) in [(2, 4.0), (3, 6.0), (5, -10.0)] {
            let q = ConstrainedQuadratic::new(kind, n, sum)?;
            let closed = q.closed_form();
            let oracle = brute_force_max(&q)?;
            println!(
                "{kind:?} n={n} S={sum:>5}: closed {:>9.5} at {:?}, oracle {:>9.5}, best sample {:>9.5}",
                closed.max, closed.argmax, oracle.max, oracle.sampled_max
            );
            assert!((closed.max - oracle.max).abs() < 1e-8);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("quadratic_lemmas example");
}
