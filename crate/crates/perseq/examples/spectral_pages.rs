//! Spectral sequence of the seven-step triangle filtration: page groups,
//! the differentials that kill them, and the convergence level per
//! dimension.
//!
//! Run with: cargo run --example spectral_pages

use perseq::samples;
use perseq::spectral::{convergence_level, differential, page_group};

fn main() {
    let c = samples::triangle();
    println!("{c}");

    for r in 1..=3 {
        println!("level r = {r}:");
        for n in 0..=2 {
            for p in 1..=7 {
                let page = page_group(&c, r, p, n - p);
                if !page.is_trivial() {
                    println!(
                        "  E^{}_{{{},{}}} = {}   (dimension {})",
                        r,
                        p,
                        n - p,
                        page.presentation.label(),
                        n
                    );
                }
            }
        }
    }

    // The 2-cell cancels the edge cycle at level 1; the two merge edges act
    // at level 2.
    let d = differential(&c, 1, 7, -5);
    println!(
        "\nd^1_{{7,-5}}: E^1_{{7,-5}} -> E^1_{{6,-5}} has image rank {}",
        d.image_rank()
    );
    let d = differential(&c, 2, 4, -3);
    println!(
        "d^2_{{4,-3}}: E^2_{{4,-3}} -> E^2_{{2,-2}} has image rank {}",
        d.image_rank()
    );

    for n in 0..=2 {
        println!(
            "dimension {n} stabilizes at level r* = {}",
            convergence_level(&c, n)
        );
    }
}
