// Intrinsic Ricci bounds for submanifolds of space forms, and a check that
// each model's constant offset matches the contraction of its tangential
// curvature tensor.
//
// ```bash
// cargo run --example ambient_models
// ```

use std::f64::consts::FRAC_PI_3;

use curvlike::ambient::AmbientModel;
use curvlike::sampling::Sampler;
use curvlike::tensor::Dimensions;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let models = [
        AmbientModel::RealSpaceForm { c: -1.0 },
        AmbientModel::ComplexLagrangian { c: 4.0 },
        AmbientModel::ComplexSlant {
            c: 4.0,
            theta: FRAC_PI_3,
        },
        AmbientModel::SasakianCTotallyReal { c: 1.0 },
    ];
    let mut sampler = Sampler::new(5);
    let n = 4;
    for model in models {
        let zeta = if model.uses_improved_bound() {
            sampler.random_symmetric(Dimensions::new(n, n + 1)?)
        } else {
            sampler.random_general(Dimensions::new(n, 3)?)
        };
        let (ric, _) = model.intrinsic_ricci_max(&zeta)?;
        let bound = model.application_bound(&zeta)?;
        println!(
            "{:<24} offset {:>7.4}  Ric max {:>9.4} <= {:>9.4}  (offset check {:.1e})",
            model.name(),
            model.ricci_offset(n)?,
            ric,
            bound,
            model.offset_residual(n)?
        );
        assert!(ric <= bound + 1e-9);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("ambient_models example");
}
