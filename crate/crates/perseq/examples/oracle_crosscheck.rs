//! Two independent routes to every persistent group: the almost-cycle
//! subquotient formulas, and an oracle that computes stage homology plus
//! induced maps and takes images, preimages and intersections there. They
//! must agree query for query.
//!
//! Run with: cargo run --example oracle_crosscheck

use perseq::oracle::OracleContext;
use perseq::persistence::{bd_group, total_prst_group, Death};
use perseq::random::{random_complex, ComplexParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    let params = ComplexParams {
        max_top_degree: 2,
        max_generators: 5,
        max_stage: 4,
        max_torsion_scale: 4,
    };
    let mut agreements = 0usize;
    for idx in 0..40 {
        let c = random_complex(&mut rng, &params);
        for n in c.min_degree()..=c.max_degree() {
            let ctx = OracleContext::new(&c, n);
            for i in c.filtration_start()..=c.max_stage() {
                for k in (i + 1)..=c.max_stage() {
                    let formula = bd_group(&c, i, Death::At(k), n).unwrap();
                    let oracle = ctx.bd(i, Death::At(k));
                    assert_eq!(formula.divisors(), oracle.divisors());
                    if !formula.is_trivial() && idx < 3 {
                        println!(
                            "complex {idx}: BD^{{{i},{k}}}_{n} = {} (both routes)",
                            formula.presentation.label()
                        );
                    }
                    agreements += 1;
                }
                for j in i..=c.max_stage() {
                    let formula = total_prst_group(&c, i, j, n).unwrap();
                    let oracle = ctx.total(i, j);
                    assert_eq!(formula.divisors(), oracle.divisors());
                    agreements += 1;
                }
            }
        }
    }
    println!("formula path == oracle path on {agreements} queries");
}
