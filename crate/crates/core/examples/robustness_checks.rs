//! Property checks: excisiveness, linear scale preservation and stability
//! hold for representable methods; semi-reciprocal clustering fails
//! excisiveness and grafting fails scale preservation.
//!
//!     cargo run --example robustness_checks

use dirclust::properties::{
    check_excisiveness, check_excisiveness_all, check_scale_preservation, check_stability, random_network,
    rng, semi_reciprocal_excisiveness_witness,
};
use dirclust::{MethodSpec, Network, Representer, RepresenterFamily};

pub fn run_example() -> dirclust::Result<()> {
    let omega_3 = MethodSpec::representable(RepresenterFamily::single(Representer::three_cycle(3.0)?));
    let mut g = rng(11);
    for _ in 0..20 {
        let a = random_network(&mut g, 4);
        let b = random_network(&mut g, 4);
        assert!(check_excisiveness_all(&omega_3, &a)?.passed);
        assert!(check_scale_preservation(&omega_3, &a, 2.0)?.passed);
        assert!(check_stability(&omega_3, &a, &b, 1.0)?.passed);
    }
    println!("three-cycle representable method: excisive, scale preserving, stable on 20 samples");

    let witness = semi_reciprocal_excisiveness_witness();
    let report = check_excisiveness(&MethodSpec::semi_reciprocal(3)?, &witness, 1.5)?;
    println!("semi-reciprocal(3) excisive at 1.5: {}", report.passed);
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));

    let fig = Network::three_cycle(1.25, 2.5)?;
    let report = check_scale_preservation(&MethodSpec::grafting(3.0)?, &fig, 2.0)?;
    let w = report.witness.as_ref().expect("grafting is not scale preserving");
    println!(
        "grafting(3) under x2: expected {:?}, observed {:?}",
        w.expected, w.observed
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> dirclust::Result<()> {
    run_example()
}
