//! Representable clustering: the two-node representer reproduces reciprocal
//! clustering, the family of directed cycles reproduces nonreciprocal
//! clustering, and the three-node cycle sits in between.
//!
//!     cargo run --example representable_methods

use dirclust::{
    fast_lambda_cycle3, lambda_family_enumerated, nonreciprocal, nonreciprocal_family, reciprocal,
    representable_cluster, stability_constant, Budget, Network, Representer, RepresenterFamily,
};

pub fn run_example() -> dirclust::Result<()> {
    let network = Network::new(
        ["w", "x", "y", "z"],
        &[
            vec![0.0, 1.0, 6.0, 9.0],
            vec![7.0, 0.0, 2.0, 8.0],
            vec![1.5, 9.0, 0.0, 4.0],
            vec![3.0, 5.0, 8.0, 0.0],
        ],
    )?;
    let budget = Budget::default();

    let omega_r = RepresenterFamily::single(Representer::reciprocal());
    let cycles = nonreciprocal_family(network.len());
    let omega_3 = RepresenterFamily::single(Representer::three_cycle(3.0)?);

    let u_r = representable_cluster(&omega_r, &network, budget)?;
    let u_nr = representable_cluster(&cycles, &network, budget)?;
    let u_3 = representable_cluster(&omega_3, &network, budget)?;
    assert_eq!(u_r, reciprocal(&network));
    assert_eq!(u_nr, nonreciprocal(&network));

    println!("pair     reciprocal  three-cycle  nonreciprocal");
    for i in 0..network.len() {
        for j in i + 1..network.len() {
            println!(
                "{}-{}      {:<10}  {:<11.4}  {}",
                network.label(i),
                network.label(j),
                u_r.get(i, j),
                u_3.get(i, j),
                u_nr.get(i, j)
            );
        }
    }

    // The O(n³) matrix formula for the three-node cycle equals enumeration
    // over all n³ node maps.
    let fast = fast_lambda_cycle3(&network, 3.0)?;
    assert_eq!(fast, lambda_family_enumerated(&omega_3, &network, budget)?);
    println!(
        "stability constants: omega_R {}, cycles {}, three-cycle {}",
        stability_constant(&omega_r),
        stability_constant(&cycles),
        stability_constant(&omega_3)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> dirclust::Result<()> {
    run_example()
}
