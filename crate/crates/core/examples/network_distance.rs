//! Exact network distance between small networks, and the stability of
//! reciprocal clustering with respect to it.
//!
//!     cargo run --example network_distance

use dirclust::{
    correspondence_distortion, count_correspondences, network_distance_exact, reciprocal, Correspondence,
    Network,
};

pub fn run_example() -> dirclust::Result<()> {
    let x = Network::two_node(2.0, 3.0)?;
    let y = Network::two_node(2.0, 5.0)?;
    println!(
        "{} correspondences between two 2-node sets",
        count_correspondences(2, 2)?
    );
    println!(
        "identity distortion {}, full relation distortion {}",
        correspondence_distortion(&Correspondence::identity(2), &x, &y)?,
        correspondence_distortion(&Correspondence::full(2, 2), &x, &y)?
    );
    let d_in = network_distance_exact(&x, &y)?;
    let d_out = network_distance_exact(&reciprocal(&x).to_network(), &reciprocal(&y).to_network())?;
    println!("d(X, Y) = {d_in}, d(H(X), H(Y)) = {d_out}");
    assert!(d_out <= d_in);

    let c3 = Network::three_cycle(1.0, 5.0)?;
    let relabeled = c3.relabeled(vec!["u".into(), "v".into(), "w".into()])?;
    assert_eq!(network_distance_exact(&c3, &relabeled)?, 0.0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> dirclust::Result<()> {
    run_example()
}
