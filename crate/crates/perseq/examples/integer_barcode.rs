//! Integer barcodes carry group labels that field barcodes cannot express.
//! The staircase complex has H_1(K^1) = Z/32 whose filtration by death
//! stage is 0 ⊂ Z/2 ⊂ Z/4 ⊂ Z/8 ⊂ Z/16 ⊂ Z/32, every step quotient Z/2:
//! five bars that a field barcode would all render alike.
//!
//! Run with: cargo run --example integer_barcode

use perseq::barcode::{build_barcode, render_svg, render_text, BarcodeMode};
use perseq::persistence::{triple_prst_group, Death};
use perseq::samples;

fn main() {
    let c = samples::staircase();
    println!("{c}");

    println!("filtration of H_1(K^1) by death stage:");
    for k in 1..=6 {
        let g = triple_prst_group(&c, 1, 1, Death::At(k), 1).unwrap();
        print!("{}", g.presentation.label());
        if k < 6 {
            print!(" < ");
        }
    }
    println!("\n");

    let diagram = build_barcode(&c, BarcodeMode::Stagewise, Some((1, 1)));
    print!("{}", render_text(&diagram));

    let svg = render_svg(&diagram);
    let path = std::env::temp_dir().join("staircase_barcode.svg");
    std::fs::write(&path, svg).expect("write svg");
    println!("\nSVG written to {}", path.display());

    // The classic triangle for comparison: free bars only.
    let triangle = samples::triangle();
    let diagram = build_barcode(&triangle, BarcodeMode::Stagewise, None);
    println!();
    print!("{}", render_text(&diagram));
}
