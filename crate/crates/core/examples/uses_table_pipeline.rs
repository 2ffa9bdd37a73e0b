//! Turn an input-output uses table into a network and cluster it with the
//! three-node cycle representer, emitting Newick and a 1-resolution cut.
//!
//!     cargo run --example uses_table_pipeline

use dirclust::io::dendrogram_to_newick;
use dirclust::{
    normalize_uses_table, representable_cluster, Budget, CostMatrix, Dendrogram, Representer,
    RepresenterFamily, ZeroUse,
};

pub fn run_example() -> dirclust::Result<()> {
    let sectors: Vec<String> = ["farm", "food", "energy", "metal", "cars"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    // uses[i][j]: value of sector i's output used by sector j
    let uses = CostMatrix::from_rows(&[
        [5.0, 40.0, 1.0, 0.5, 0.2],
        [1.0, 10.0, 0.5, 0.3, 0.4],
        [3.0, 6.0, 20.0, 12.0, 5.0],
        [0.5, 1.0, 2.0, 15.0, 30.0],
        [2.0, 0.8, 0.6, 1.0, 8.0],
    ])
    .expect("square table");
    let network = normalize_uses_table(sectors, &uses, ZeroUse::Error)?;
    let family = RepresenterFamily::single(Representer::three_cycle(3.0)?);
    let u = representable_cluster(&family, &network, Budget::default())?;
    println!("{}", dendrogram_to_newick(&Dendrogram::from_ultrametric(&u)));
    let cut = u.cut(u.merge_values()[1])?;
    println!("blocks at {}: {:?}", cut.resolution, cut.blocks);
    Ok(())
}

#[allow(dead_code)]
fn main() -> dirclust::Result<()> {
    run_example()
}
