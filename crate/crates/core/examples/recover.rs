//! Euler characteristics of magnitude homology determine the metric.

use magtop::rational::int;
use magtop::series::recover_check;
use magtop::MetricSpace;

fn main() -> magtop::Result<()> {
    let e = |a: &str, b: &str, w: i64| (a.to_string(), b.to_string(), int(w));
    let names = ["a", "b", "c", "d"].map(String::from).to_vec();
    let x = MetricSpace::from_weighted_graph(names.clone(), &[e("a", "b", 1), e("b", "c", 1), e("c", "d", 1)])?;
    let y = MetricSpace::from_weighted_graph(names, &[e("a", "b", 1), e("b", "c", 1), e("b", "d", 1)])?;
    let same = recover_check(&x, &x, &[3, 2, 1, 0])?;
    println!("path vs reversed path: isometry = {}, consistent = {}", same.is_isometry(), same.consistent());
    let diff = recover_check(&x, &y, &[0, 1, 2, 3])?;
    println!("path vs star: Euler tables equal = {}", diff.euler_tables_equal);
    if let Some((ell, a, b)) = diff.witness {
        println!("first difference at l = {ell}, pair ({}, {})", x.label(a), x.label(b));
    }
    Ok(())
}
