//! Frames, 4-cuts and the Betti numbers predicted from open intervals.

use magtop::checks::magnitude_homology;
use magtop::frame::{framed_betti_prediction, singular_sequences};
use magtop::rational::int;
use magtop::MetricSpace;

fn main() -> magtop::Result<()> {
    let e = |a: &str, b: &str| (a.to_string(), b.to_string(), int(1));
    let k4 = MetricSpace::from_weighted_graph(
        ["a", "b", "c", "d"].map(String::from).to_vec(),
        &[e("a", "b"), e("a", "c"), e("a", "d"), e("b", "c"), e("b", "d"), e("c", "d")],
    )?;
    let ell = int(2);
    for f in singular_sequences(&k4, 0, 1, &ell)? {
        println!("frame {}", f.display_with(k4.labels()));
    }
    println!("predicted {:?}", framed_betti_prediction(&k4, 0, 1, &ell)?);
    println!("computed  {:?}", magnitude_homology(&k4, 0, 1, &ell)?.betti_vector());

    let c4 = MetricSpace::from_weighted_graph(
        ["a", "c", "b", "d"].map(String::from).to_vec(),
        &[e("a", "c"), e("c", "b"), e("b", "d"), e("d", "a")],
    )?;
    let (cuts, m) = c4.four_cuts();
    println!("C4 has {} 4-cuts, m_X = {m}", cuts.len());
    match framed_betti_prediction(&c4, 0, 2, &int(3)) {
        Err(e) => println!("at l = 3: {e}"),
        Ok(p) => println!("at l = 3: {p:?}"),
    }
    Ok(())
}
