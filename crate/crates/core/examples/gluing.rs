//! Gated gluings: the union splitting and the Mayer-Vietoris rank identity.

use magtop::gluing::GluingSpec;
use magtop::mv::{check_gated, verify_mv, verify_union};
use magtop::rational::int;
use magtop::MetricSpace;

fn path(vs: &[&str]) -> magtop::Result<MetricSpace> {
    let e: Vec<_> = vs.windows(2).map(|w| (w[0].to_string(), w[1].to_string(), int(1))).collect();
    MetricSpace::from_weighted_graph(vs.iter().map(|v| v.to_string()).collect(), &e)
}

fn main() -> magtop::Result<()> {
    let g = path(&["a", "m"])?;
    let h = path(&["m", "b", "c"])?;
    let spec = GluingSpec::glue(g, h, vec![1], vec![0])?;
    println!("glued: {:?}", spec.glued.labels());
    let gated = check_gated(spec).expect("one-point gluings are gated");
    for row in verify_mv(&gated, &int(3))?.rows {
        println!("l={} k={} X,K,G,H = {:?} ok={}", row.ell, row.degree, row.ranks, row.rank_ok && row.torsion_ok);
    }
    println!("union splitting holds: {}", verify_union(&gated, &int(3))?.pass());

    let tri = |c: &str| {
        let e = |a: &str, b: &str| (a.to_string(), b.to_string(), int(1));
        MetricSpace::from_weighted_graph(vec!["a".into(), "b".into(), c.into()], &[e("a", "b"), e("b", c), e("a", c)])
    };
    match check_gated(GluingSpec::glue(tri("c")?, tri("d")?, vec![0, 1], vec![0, 1])?) {
        Ok(_) => println!("two triangles: gated"),
        Err(e) => println!("two triangles: {e}"),
    }
    Ok(())
}
