//! Persistent groups come with explicit generator cycles: each one is a
//! genuine cycle in the ambient complex, lies in the filtration stage it was
//! born in, and (for finite bars) becomes a boundary at its death stage.
//!
//! Run with: cargo run --example persistent_generators

use perseq::persistence::{
    bd_group, persistent_generators, verify_persistent_group, Death,
};
use perseq::samples;

fn main() {
    let c = samples::triangle();
    let names = c.generator_names(1);

    let g = bd_group(&c, 6, Death::At(7), 1).unwrap();
    println!("BD^{{6,7}}_1 = {}", g.presentation.label());
    for (divisor, cycle) in persistent_generators(&g) {
        println!(
            "  divisor {divisor}: cycle {} (degree {})",
            cycle.format(&names),
            cycle.degree
        );
        println!("    boundary is zero: {}", c.boundary(&cycle).is_zero());
        println!(
            "    lies in C^6: {}",
            c.filtration_submodule(6, 1).contains(&cycle.coords)
        );
        println!(
            "    becomes a boundary at stage 7: {}",
            c.boundaries_in(7, 1).contains(&cycle.coords)
        );
    }
    verify_persistent_group(&c, &g).expect("generator contract");

    // Torsion generators on the staircase.
    let s = samples::staircase();
    let names = s.generator_names(1);
    for k in [2, 4, 6] {
        let g = bd_group(&s, 1, Death::At(k), 1).unwrap();
        verify_persistent_group(&s, &g).expect("generator contract");
        for (divisor, cycle) in persistent_generators(&g) {
            println!(
                "staircase BD^{{1,{k}}}_1: divisor {divisor}, generator {}",
                cycle.format(&names)
            );
        }
    }
}
