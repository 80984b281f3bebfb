//! The two simplicial models of a magnitude chain complex, side by side.

use magtop::checks::{verify_double_suspension, verify_mainisom};
use magtop::complex::{ai_pair, order_complex_pair};
use magtop::rational::int;
use magtop::MetricSpace;

fn main() -> magtop::Result<()> {
    let e = |a: &str, b: &str| (a.to_string(), b.to_string(), int(1));
    let x = MetricSpace::from_weighted_graph(
        ["a", "b", "c"].map(String::from).to_vec(),
        &[e("a", "b"), e("b", "c"), e("a", "c")],
    )?;
    let (a, b, ell) = (0, 1, int(2));

    let pair = order_complex_pair(&x, a, b, &ell);
    println!("order complex of the causal interval:\n{}", pair.dump_causal(&x));
    let ai = ai_pair(&x, a, b, &ell)?;
    println!("interval pair:\n{}", ai.dump(|p| x.label(p.point).to_string()));

    let iso = verify_mainisom(&x, a, b, &ell)?;
    println!("chain isomorphism: {} ({})", iso.pass, iso.magnitude);
    let ds = verify_double_suspension(&x, a, b, &ell)?;
    println!("double suspension: {} (pair homology {})", ds.pass, ds.shifted_pair);
    Ok(())
}
