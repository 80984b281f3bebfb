//! Magnitude homology tables of the 4-cycle and the complete graph K3.

use magtop::checks::{betti_table, magnitude_homology};
use magtop::rational::int;
use magtop::MetricSpace;

fn graph(vertices: &[&str], edges: &[(&str, &str)]) -> magtop::Result<MetricSpace> {
    let e: Vec<_> = edges.iter().map(|(a, b)| (a.to_string(), b.to_string(), int(1))).collect();
    MetricSpace::from_weighted_graph(vertices.iter().map(|v| v.to_string()).collect(), &e)
}

fn main() -> magtop::Result<()> {
    let c4 = graph(&["a", "c", "b", "d"], &[("a", "c"), ("c", "b"), ("b", "d"), ("d", "a")])?;
    let (a, b) = (c4.resolve("a")?, c4.resolve("b")?);
    println!("MH^2(C4; a, b): {}", magnitude_homology(&c4, a, b, &int(2))?);

    let k3 = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])?;
    let table = betti_table(&k3, &int(3))?;
    for l in 0..=3 {
        println!("MH^{l}(K3) = {}", table.total(&int(l)));
    }
    print!("{}", betti_table(&c4, &int(2))?.render(&c4));
    Ok(())
}
