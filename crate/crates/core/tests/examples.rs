macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(gauss_bounds, "gauss_bounds.rs");
example!(equality_cases, "equality_cases.rs");
example!(quadratic_lemmas, "quadratic_lemmas.rs");
example!(ambient_models, "ambient_models.rs");
example!(slant_structures, "slant_structures.rs");
example!(instance_reports, "instance_reports.rs");
example!(sampling_campaign, "sampling_campaign.rs");

#[test]
fn gauss_bounds_example_runs() {
    gauss_bounds::run_example().expect("gauss_bounds example should run");
}

#[test]
fn equality_cases_example_runs() {
    equality_cases::run_example().expect("equality_cases example should run");
}

#[test]
fn quadratic_lemmas_example_runs() {
    quadratic_lemmas::run_example().expect("quadratic_lemmas example should run");
}

#[test]
fn ambient_models_example_runs() {
    ambient_models::run_example().expect("ambient_models example should run");
}

#[test]
fn slant_structures_example_runs() {
    slant_structures::run_example().expect("slant_structures example should run");
}

#[test]
fn instance_reports_example_runs() {
    instance_reports::run_example().expect("instance_reports example should run");
}

#[test]
fn sampling_campaign_example_runs() {
    sampling_campaign::run_example().expect("sampling_campaign example should run");
}
