// Build a curvature-like tensor from a random form and compare its largest
// Ricci value with both bounds.
//
// ```bash
// cargo run --example gauss_bounds
// ```

use curvlike::gauss::{check_bound, gauss_tensor, BoundMode};
use curvlike::sampling::Sampler;
use curvlike::tensor::Dimensions;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut sampler = Sampler::new(2024);
    let dims = Dimensions::new(4, 4)?;

    let general = sampler.random_general(dims);
    let t = gauss_tensor(&general);
    let sym = t.validate_symmetries(1e-12);
    println!(
        "random form, n = 4: symmetry residual {:.1e}, passed = {}",
        sym.max_residual(),
        sym.passed
    );
    println!("scalar τ_T = {:.6}", t.scalar()?);

    for mode in [BoundMode::General, BoundMode::Improved] {
        let r = check_bound(&general, mode, 1e-9)?;
        println!(
            "  {mode:?}: Ric max {:.6} vs bound {:.6} (gap {:+.6}, hypothesis certified = {})",
            r.ricci_max, r.bound_value, r.gap, r.symmetry_certified
        );
    }

    // on a totally symmetric form the improved bound always holds
    let symmetric = sampler.random_symmetric(dims);
    let r = check_bound(&symmetric, BoundMode::Improved, 1e-9)?;
    println!("symmetric form: improved gap {:+.6}, holds = {}", r.gap, r.holds());
    assert!(r.holds());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("gauss_bounds example");
}
