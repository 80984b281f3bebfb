//! A sycamore twist: two non-isometric spaces with the same critical cells and magnitude.

use magtop::rational::int;
use magtop::sycamore::{verify_sycamore, SycamoreTwist};
use magtop::MetricSpace;

fn graph(vertices: &[&str], edges: &[(&str, &str)]) -> magtop::Result<MetricSpace> {
    let e: Vec<_> = edges.iter().map(|(a, b)| (a.to_string(), b.to_string(), int(1))).collect();
    MetricSpace::from_weighted_graph(vertices.iter().map(|v| v.to_string()).collect(), &e)
}

fn main() -> magtop::Result<()> {
    let g = graph(
        &["p", "q", "g3", "g4", "g5", "g6"],
        &[("p", "g3"), ("g3", "q"), ("q", "g4"), ("g4", "p"), ("p", "g5"), ("g5", "g6"), ("g6", "q"), ("q", "g5")],
    )?;
    let h = graph(
        &["p", "q", "h3", "h4", "h5", "h6"],
        &[("p", "h3"), ("h3", "q"), ("q", "h4"), ("h4", "p"), ("p", "h5"), ("h5", "q"), ("q", "h6")],
    )?;
    let twist = SycamoreTwist::new(g, h, vec![0, 1], vec![0, 1], vec![1, 0])?;
    println!("isometric: {}", twist.x.glued.find_isometry(&twist.y.glued).is_some());
    let report = verify_sycamore(&twist, &int(4))?;
    for row in &report.rows {
        println!("l={} dim={} critical X={} Y={}", row.ell, row.dim, row.critical_x, row.critical_y);
    }
    println!("Mag(X) = {}", report.magnitude_x);
    println!("Mag(Y) = {}", report.magnitude_y);
    println!("all checks pass: {}", report.pass());
    Ok(())
}
