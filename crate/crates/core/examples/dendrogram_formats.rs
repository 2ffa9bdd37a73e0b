//! Dendrograms, ultrametrics and their file forms: merge lists, Newick and
//! resolution cuts.
//!
//!     cargo run --example dendrogram_formats

use dirclust::io::{dendrogram_from_json, dendrogram_from_newick, dendrogram_to_json, dendrogram_to_newick};
use dirclust::{Dendrogram, Ultrametric};

pub fn run_example() -> dirclust::Result<()> {
    let u = Ultrametric::new(
        ["a", "b", "c", "d"],
        &[
            vec![0.0, 1.0, 3.0, 3.0],
            vec![1.0, 0.0, 3.0, 3.0],
            vec![3.0, 3.0, 0.0, 2.0],
            vec![3.0, 3.0, 2.0, 0.0],
        ],
    )?;
    let d = Dendrogram::from_ultrametric(&u);
    let newick = dendrogram_to_newick(&d);
    println!("{newick}");
    println!("{}", dendrogram_to_json(&d));

    let back = dendrogram_from_newick(&newick, Some(d.leaves()))?;
    assert_eq!(back.to_ultrametric(), u);
    assert_eq!(dendrogram_from_json(&dendrogram_to_json(&d), "memory")?, d);

    for delta in [0.0, 1.0, 2.5, 3.0] {
        println!("cut at {delta}: {:?}", u.cut(delta)?.blocks);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> dirclust::Result<()> {
    run_example()
}
