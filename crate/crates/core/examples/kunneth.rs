//! Betti numbers of a product space against the convolution of its factors.

use magtop::checks::{betti_table, kunneth};
use magtop::rational::int;
use magtop::MetricSpace;

fn main() -> magtop::Result<()> {
    let e = |a: &str, b: &str| (a.to_string(), b.to_string(), int(1));
    let k2 = MetricSpace::from_weighted_graph(vec!["0".into(), "1".into()], &[e("0", "1")])?;
    let p2 = MetricSpace::from_weighted_graph(["a", "m", "b"].map(String::from).to_vec(), &[e("a", "m"), e("m", "b")])?;
    for (name, y) in [("K2 x K2", &k2), ("K2 x P2", &p2)] {
        let r = kunneth(&k2, y, &int(3))?;
        println!("{name}: {} endpoint pairs checked, pass = {}", r.checked, r.pass());
    }
    let square = k2.product(&k2);
    println!("MH^2(K2 x K2) = {}", betti_table(&square, &int(2))?.total(&int(2)));
    Ok(())
}
