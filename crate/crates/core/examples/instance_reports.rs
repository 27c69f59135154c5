// Write an instance file, load it back and render its report as text.
//
// ```bash
// cargo run --example instance_reports
// ```

use curvlike::ambient::AmbientModel;
use curvlike::instance::{load_instance, save_instance};
use curvlike::report::{build_report, to_text};
use curvlike::structures::FamilyParams;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = FamilyParams::HUmbilicalCTotallyReal {
        n: 2,
        lambda: 3.0,
        mu: 1.0,
    };
    let instance = curvlike::cli::family_instance(&params, Some(AmbientModel::SasakianCTotallyReal { c: 1.0 }))?;

    let dir = std::env::temp_dir().join(format!("curvlike-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("c_totally_real.json");
    save_instance(&instance, &path)?;
    let loaded = load_instance(&path)?;
    assert_eq!(loaded, instance);
    println!("wrote and reloaded {} (sha256 {})", path.display(), loaded.sha256());

    let report = build_report(&loaded, 1e-9, None)?;
    print!("{}", to_text(&report));
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("instance_reports example");
}
