//! Mod-2 persistence cannot tell a torus from a Klein bottle; integer
//! persistence can. Both surfaces are filtered by dimension (vertices,
//! edges, faces), and the final-stage groups are compared over Z/2 and
//! over Z.
//!
//! Run with: cargo run --example torus_vs_klein

use perseq::field::field_betti;
use perseq::persistence::total_prst_group;
use perseq::samples;

fn main() {
    let torus = samples::torus();
    let klein = samples::klein_bottle();

    println!(
        "torus: {} vertices, {} edges, {} faces",
        torus.dim(0),
        torus.dim(1),
        torus.dim(2)
    );
    println!(
        "klein: {} vertices, {} edges, {} faces",
        klein.dim(0),
        klein.dim(1),
        klein.dim(2)
    );

    let bt = field_betti(&torus, 2).unwrap();
    let bk = field_betti(&klein, 2).unwrap();
    println!("\nover Z/2: beta_1(torus) = {}", bt.beta(3, 3, 1));
    println!("over Z/2: beta_1(klein) = {}", bk.beta(3, 3, 1));

    for n in 0..=2 {
        let ht = total_prst_group(&torus, 3, 3, n).unwrap();
        let hk = total_prst_group(&klein, 3, 3, n).unwrap();
        println!(
            "over Z:   H_{n}(torus) = {:<6} H_{n}(klein) = {}",
            ht.presentation.label(),
            hk.presentation.label()
        );
    }
    println!("\nthe Z/2 torsion class in H_1 is what the field mode cannot see");
}
