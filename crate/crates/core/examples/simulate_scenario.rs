//! Generate a preset scenario and a custom one, and write the response
//! matrix and ground truth as CSV.
//!
//! cargo run --example simulate_scenario -- /tmp/skewirt-sim

use std::path::PathBuf;

use skewirt::io::{format_truth_items, format_truth_theta, write_responses, write_text};
use skewirt::synth::{generate, preset, Scenario};

fn main() -> skewirt::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("skewirt-sim"));

    let scenario = preset("all-asymmetric-40", 1000, 7)?;
    let (y, theta) = generate(&scenario)?;
    write_responses(&out.join("responses.csv"), &y)?;
    write_text(
        &out.join("truth_items.csv"),
        &format_truth_items(&scenario, y.item_ids()),
    )?;
    write_text(
        &out.join("truth_theta.csv"),
        &format_truth_theta(&theta, y.subject_ids()),
    )?;

    println!("item   a      b      gamma  facility");
    for (i, f) in y.facility().iter().enumerate().step_by(5) {
        println!(
            "{:<6} {:5.2}  {:5.2}  {:5.2}  {:.3}",
            y.item_ids()[i],
            scenario.true_a[i],
            scenario.true_b[i],
            scenario.true_gamma[i],
            f
        );
    }

    // a hand-made three-item test with guessing on the last item
    let custom = Scenario::new(
        500,
        vec![1.2, 0.8, 1.5],
        vec![-0.5, 0.3, 1.0],
        vec![0.0, 0.0, 0.2],
        vec![0.0, -0.7, 0.5],
        11,
    )?;
    let (y, _) = generate(&custom)?;
    println!("\ncustom facilities: {:?}", y.facility());
    println!("wrote {}", out.display());
    Ok(())
}
