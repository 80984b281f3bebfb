//! A metric space whose magnitude homotopy type is the double suspension of a circle.

use magtop::checks::magnitude_homology;
use magtop::frame::hasse_graph;

fn main() -> magtop::Result<()> {
    let facets: Vec<Vec<String>> =
        [["a", "b"], ["b", "c"], ["a", "c"]].iter().map(|f| f.iter().map(|v| v.to_string()).collect()).collect();
    let h = hasse_graph(&facets)?;
    for (a, b, w) in &h.edges {
        println!("{a} -- {b} ({w})");
    }
    let x = h.space()?;
    let (bottom, top) = (x.resolve(&h.bottom)?, x.resolve(&h.top)?);
    println!("MH^{}(G; {}, {}) = {}", h.ell, h.bottom, h.top, magnitude_homology(&x, bottom, top, &h.ell)?);
    Ok(())
}
