//! Smith normal form with transforms: U A V = D.

use magtop::snf::{smith_normal_form_with_transforms, IntMatrix};

fn main() {
    let a = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let r = smith_normal_form_with_transforms(&a);
    let diag: Vec<String> = r.diag.iter().map(ToString::to_string).collect();
    println!("invariant factors: [{}], rank {}", diag.join(", "), r.rank);
    let (u, v) = r.transforms.clone().expect("transforms requested");
    let d = u.mul(&a).mul(&v);
    for row in &d.data {
        println!("{}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join("\t"));
    }
    let torsion: Vec<String> = r.torsion().iter().map(ToString::to_string).collect();
    println!("torsion: [{}]", torsion.join(", "));
}
