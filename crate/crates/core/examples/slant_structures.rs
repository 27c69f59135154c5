// Slant structures and the rigidity of totally umbilical points.
//
// ```bash
// cargo run --example slant_structures
// ```

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};

use curvlike::structures::{umbilical_rigidity_witness, SlantStructure};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for theta in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_2] {
        let s = SlantStructure::build(4, theta)?;
        println!(
            "θ = {theta:.4}: P row 0 = {:?}, identity residual {:.1e}",
            s.p().row(0),
            s.residuals().max()
        );
    }
    match SlantStructure::build(3, FRAC_PI_4) {
        Err(e) => println!("n = 3, θ = π/4 rejected: {e}"),
        Ok(_) => return Err("odd proper slant should be rejected".into()),
    }
    for (n, h0) in [(1, vec![1.0]), (3, vec![1.0, 0.0, 0.0]), (4, vec![0.0, 0.2, 0.0, -0.1])] {
        println!(
            "totally umbilical n = {n}, H0 = {h0:?}: {:?}",
            umbilical_rigidity_witness(n, &h0)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("slant_structures example");
}
