//! Computing on a small effective complex and transferring the answer: a
//! reduction exhibits the three-group complex as the zero complex plus an
//! acyclic summand, but its homotopy raises the filtration by one, so page
//! groups transfer only from level 2 on. Level 1 genuinely differs.
//!
//! Run with: cargo run --example reduction_transfer

use num_bigint::BigInt;
use perseq::persistence::total_prst_group;
use perseq::samples;
use perseq::transfer::{
    transfer_check, transfer_generators, AcyclicExtension, Equivalence, Reduction, TransferQuery,
};

fn main() {
    let c = samples::three_groups();
    let reduction = samples::three_groups_reduction();
    let report = reduction.verify();
    println!("reduction identities hold: {}", report.ok());
    println!("homotopy order: {}", reduction.homotopy_order());

    let eq = Equivalence::new(Reduction::identity(&c), reduction).unwrap();
    for r in 1..=2 {
        let rep = transfer_check(&eq, TransferQuery::Page { r }).unwrap();
        println!(
            "level {r}: matched = {}, hypothesis (r > {}) holds = {}",
            rep.matched(),
            rep.order,
            rep.hypothesis_holds()
        );
        for entry in &rep.entries {
            println!(
                "  {}: C side {:?}, EC side {:?}",
                entry.label, entry.left, entry.right
            );
        }
    }

    // Transferring generators across an equivalence that contracts an
    // acyclic pair: the transferred cycle represents the same class.
    let base = samples::staircase();
    let mut ext = AcyclicExtension::new(base);
    ext.adjoin(1, 3, 2, vec![(BigInt::from(2), "g".to_string())]);
    let eq = Equivalence::new(
        ext.reduction_contracting(&[]).unwrap(),
        ext.reduction_contracting(&[0]).unwrap(),
    )
    .unwrap();
    let ec = eq.right.bottom();
    let group = total_prst_group(ec, 1, 1, 1).unwrap();
    println!(
        "\nH^{{1,1}}_1 on the contracted complex: {}",
        group.presentation.label()
    );
    let names = eq.left.bottom().generator_names(1);
    for chain in transfer_generators(&eq, &group).unwrap() {
        println!("transferred generator on the big complex: {}", chain.format(&names));
    }
}
