//! Checking a discrete Morse matching on the boundary of a triangle.

use magtop::complex::SimplicialComplex;
use magtop::morse::{verify_acyclic_simplicial, verify_bounded_simplicial, Matching};

fn main() -> magtop::Result<()> {
    let circle = SimplicialComplex::from_facets([vec![0, 1], vec![1, 2], vec![0, 2]]);
    let good = Matching::new(vec![(vec![1], vec![0, 1]), (vec![2], vec![1, 2])]);
    let report = verify_acyclic_simplicial(&circle, &good)?;
    println!("acyclic: {}, critical cells: {:?}", report.acyclic, report.critical);
    println!("bounded: {}", verify_bounded_simplicial(&circle, &good)?.bounded);

    let cyclic = Matching::new(vec![(vec![0], vec![0, 1]), (vec![1], vec![1, 2]), (vec![2], vec![0, 2])]);
    let report = verify_acyclic_simplicial(&circle, &cyclic)?;
    println!("rotating matching acyclic: {}, cycle: {:?}", report.acyclic, report.cycle);
    Ok(())
}
