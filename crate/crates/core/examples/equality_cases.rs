// Equality configurations: the zero form, the umbilical surface for the
// general bound and the H-umbilical surface for the improved one. The
// classification does not depend on the chosen orthonormal frames.
//
// ```bash
// cargo run --example equality_cases
// ```

use curvlike::gauss::{check_bound, classify_all_equality, equality_directions, BoundMode, EqualityClass};
use curvlike::sampling::Sampler;
use curvlike::structures::{construct_family, FamilyParams};
use curvlike::tensor::{BundleValuedForm, Dimensions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let h_umb = construct_family(&FamilyParams::HUmbilical {
        n: 2,
        lambda: 3.0,
        mu: 1.0,
    })?;
    let r = check_bound(&h_umb, BoundMode::Improved, 1e-9)?;
    println!("H-umbilical λ=3, μ=1: gap {}, class {}", r.gap, r.equality_class.tag());

    let mut sampler = Sampler::new(11);
    for k in 0..3 {
        let rotated = sampler.random_rotation(&h_umb)?;
        match classify_all_equality(&rotated, BoundMode::Improved, 1e-9)? {
            EqualityClass::HUmbilicalSurface { mu, tangent_frame, .. } => {
                println!("  rotation {k}: μ = {mu:.12}, e1 = {:.4?}", tangent_frame[0]);
            }
            other => return Err(format!("rotation {k} lost the class: {other:?}").into()),
        }
    }

    let umbilical = BundleValuedForm::zeros(Dimensions::new(2, 3)?)
        .with_entry(1, 0, 0, 2.0)
        .with_entry(1, 1, 1, 2.0);
    println!(
        "umbilical surface: general class {}, {} equality directions",
        classify_all_equality(&umbilical, BoundMode::General, 1e-9)?.tag(),
        equality_directions(&umbilical, 1e-9)?.len()
    );

    let slumbilical = construct_family(&FamilyParams::Slumbilical {
        n: 2,
        lambda: 1.0,
        theta: 1.0,
    })?;
    let r = check_bound(&slumbilical, BoundMode::Improved, 1e-9)?;
    println!(
        "slumbilical λ=1: Ric max {}, improved gap {} ({})",
        r.ricci_max,
        r.gap,
        r.equality_class.tag()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("equality_cases example");
}
