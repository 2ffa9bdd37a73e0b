//! Reciprocal, nonreciprocal, semi-reciprocal and grafting clustering of a
//! small directed network, printed as Newick trees.
//!
//!     cargo run --example directed_methods

use dirclust::io::dendrogram_to_newick;
use dirclust::{ClusteringMethod, Dendrogram, MethodSpec, Network};

pub fn run_example() -> dirclust::Result<()> {
    // a → b → c → a is cheap (1); the reverse direction is expensive (5).
    let network = Network::three_cycle(1.0, 5.0)?;
    let methods = [
        MethodSpec::Reciprocal,
        MethodSpec::Nonreciprocal,
        MethodSpec::semi_reciprocal(2)?,
        MethodSpec::semi_reciprocal(3)?,
        MethodSpec::grafting(3.0)?,
        MethodSpec::grafting(5.0)?,
    ];
    for method in &methods {
        let u = method.cluster(&network)?;
        let tree = dendrogram_to_newick(&Dendrogram::from_ultrametric(&u));
        println!("{:<24} {tree}", method.name());
    }

    // On the two-node network every method merges at max(alpha, beta).
    let two = Network::two_node(2.0, 3.0)?;
    for method in &methods {
        assert_eq!(method.cluster(&two)?.get(0, 1), 3.0);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> dirclust::Result<()> {
    run_example()
}
