//! Magnitude and weighting of a small weighted triangle as truncated series.

use magtop::rational::{frac, int};
use magtop::series::{magnitude, weighting, z_inverse};
use magtop::MetricSpace;

fn main() -> magtop::Result<()> {
    let labels = vec!["a".to_string(), "b".to_string(), "c".to_string()];
    let d =
        vec![vec![int(0), frac(1, 2), frac(3, 2)], vec![frac(1, 2), int(0), int(1)], vec![frac(3, 2), int(1), int(0)]];
    let x = MetricSpace::from_distance_matrix(labels, d)?;
    let lmax = int(3);
    println!("Mag(X) = {}", magnitude(&x, &lmax));
    for (i, w) in weighting(&x, &lmax).iter().enumerate() {
        println!("w({}) = {w}", x.label(i));
    }
    println!("Z^-1(a, c) = {}", z_inverse(&x, &lmax).get(0, 2));
    Ok(())
}
