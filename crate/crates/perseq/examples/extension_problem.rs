//! Over the integers the bar groups BD^{i,k} do not determine the total
//! persistent groups: two Z/2 bars can assemble to Z/4 or to Z/2 + Z/2.
//! The extension complex realizes the Z/4 branch, and the total-group
//! computation resolves what the bars leave open. The alternative barcode
//! joins the two bars with the actual extension as its label.
//!
//! Run with: cargo run --example extension_problem

use perseq::barcode::{build_barcode, render_text, BarcodeMode};
use perseq::lattice::direct_sum_divisors;
use perseq::persistence::{bd_group, total_prst_group, Death};
use perseq::samples;

fn main() {
    let c = samples::extension();
    println!("{c}");

    let bd16 = bd_group(&c, 1, Death::At(6), 1).unwrap();
    let bd36 = bd_group(&c, 3, Death::At(6), 1).unwrap();
    println!("BD^{{1,6}}_1 = {}", bd16.presentation.label());
    println!("BD^{{3,6}}_1 = {}", bd36.presentation.label());

    let naive = direct_sum_divisors(&[bd16.divisors(), bd36.divisors()]);
    println!(
        "direct sum of the bars: {}",
        perseq::lattice::label_for_divisors(&naive)
    );

    let h34 = total_prst_group(&c, 3, 4, 1).unwrap();
    println!(
        "total group H^{{3,4}}_1 = {}   <- the extension is nontrivial",
        h34.presentation.label()
    );

    for j in 3..=5 {
        let h = total_prst_group(&c, 3, j, 1).unwrap();
        println!("H^{{3,{j}}}_1 = {}", h.presentation.label());
    }

    println!();
    let diagram = build_barcode(&c, BarcodeMode::Alternative, Some((1, 1)));
    print!("{}", render_text(&diagram));
}
