//! Small worked complexes used across examples and tests: the seven-step
//! triangle, the interval counterexample, the three-group acyclic complex
//! with its reduction to zero, cyclic-quotient staircases, an extension
//! example, and small closed surfaces.

use crate::complex::{ChainComplexBuilder, FilteredChainComplex};
use crate::matrix::IntMatrix;
use crate::simplicial::FilteredSimplicialComplex;
use crate::transfer::{GradedMap, Reduction};

/// Filtration of a triangle in seven steps: three vertices at stages 1..3,
/// three edges at 4..6, the 2-cell at stage 7.
pub fn triangle_simplicial() -> FilteredSimplicialComplex {
    FilteredSimplicialComplex::new(vec![
        (1, vec![0]),
        (2, vec![1]),
        (3, vec![2]),
        (4, vec![0, 1]),
        (5, vec![1, 2]),
        (6, vec![0, 2]),
        (7, vec![0, 1, 2]),
    ])
    .expect("valid filtration")
}

pub fn triangle() -> FilteredChainComplex {
    triangle_simplicial()
        .chain_complex(1)
        .expect("valid complex")
}

/// One interval ab with K^1 = {a, b} and K^2 = K. Its only 1-chain is not a
/// cycle, which is what breaks the rank equality at level 1.
pub fn interval() -> FilteredChainComplex {
    FilteredSimplicialComplex::new(vec![(1, vec![0]), (1, vec![1]), (2, vec![0, 1])])
        .expect("valid filtration")
        .chain_complex(1)
        .expect("valid complex")
}

/// The acyclic complex with three non-null groups C_0 = Z, C_1 = Z^2,
/// C_2 = Z, d1 = [1 0], d2 = [0;1], filtered so stage 1 holds {a, b2} and
/// stage 2 everything.
pub fn three_groups() -> FilteredChainComplex {
    ChainComplexBuilder::new(1)
        .generator("a", 0, 1)
        .generator("b1", 1, 2)
        .generator("b2", 1, 1)
        .generator("c", 2, 2)
        .boundary("b1", &[(1, "a")])
        .boundary("c", &[(1, "b2")])
        .build()
        .expect("valid complex")
}

/// The reduction of the three-group complex onto the zero complex:
/// h(a) = b1, h(b2) = c, everything else zero. Its homotopy raises the
/// filtration stage by exactly one.
pub fn three_groups_reduction() -> Reduction {
    let top = three_groups();
    let bottom = ChainComplexBuilder::new(1).build().expect("empty complex");
    let f = GradedMap::zero_shaped(0);
    let g = GradedMap::zero_shaped(0);
    let mut h = GradedMap::zero_shaped(1);
    // Degree 0 -> 1: a maps to b1 (basis order of C_1 is b1, b2).
    h.set_matrix(0, IntMatrix::from_rows(&[vec![1], vec![0]]));
    // Degree 1 -> 2: b1 maps to 0, b2 maps to c.
    h.set_matrix(1, IntMatrix::from_rows(&[vec![0, 1]]));
    Reduction::new(top, bottom, f, g, h)
}

/// A divisor ladder: H_1(K^1) = Z/32 and each later stage halves it, so the
/// filtration of H_1(K^1) by death stage is the chain
/// 0 ⊂ Z/2 ⊂ Z/4 ⊂ Z/8 ⊂ Z/16 ⊂ Z/32 with every step quotient Z/2.
pub fn staircase() -> FilteredChainComplex {
    let mut b = ChainComplexBuilder::new(1);
    b.add_generator("g", 1, 1);
    b.add_generator("W", 2, 1);
    b.add_boundary("W", &[(32, "g")]);
    for (stage, coeff) in [(2i64, 16i64), (3, 8), (4, 4), (5, 2), (6, 1)] {
        let name = format!("R{}", stage);
        b.add_generator(&name, 2, stage);
        b.add_boundary(&name, &[(coeff, "g")]);
    }
    b.build().expect("valid complex")
}

/// Two torsion classes whose extension is nontrivial: a class u born at
/// stage 1 with [u] of order 2, a class v born at stage 3 with u ~ 2v (so
/// the total group at stages 3..5 is Z/4, not Z/2 + Z/2), both dying
/// entering stage 6.
pub fn extension() -> FilteredChainComplex {
    ChainComplexBuilder::new(1)
        .generator("u", 1, 1)
        .generator("v", 1, 3)
        .generator("P", 2, 1)
        .generator("R", 2, 3)
        .generator("T", 2, 6)
        .boundary("P", &[(2, "u")])
        .boundary("R", &[(1, "u"), (-2, "v")])
        .boundary("T", &[(1, "v")])
        .build()
        .expect("valid complex")
}

/// The minimal 7-vertex torus: vertices Z/7, triangles {i, i+1, i+3} and
/// {i, i+2, i+3}.
pub fn torus_simplicial() -> FilteredSimplicialComplex {
    let mut simplices = Vec::new();
    for v in 0u64..7 {
        simplices.push((1, vec![v]));
    }
    let push_simplex = |verts: Vec<u64>, stage: i64, out: &mut Vec<(i64, Vec<u64>)>| {
        let mut v = verts;
        v.sort_unstable();
        v.dedup();
        out.push((stage, v));
    };
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    for i in 0u64..7 {
        for t in [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]] {
            push_simplex(t.to_vec(), 3, &mut faces);
            for a in 0..3 {
                for b in (a + 1)..3 {
                    push_simplex(vec![t[a], t[b]], 2, &mut edges);
                }
            }
        }
    }
    edges.sort();
    edges.dedup();
    faces.sort();
    faces.dedup();
    simplices.extend(edges);
    simplices.extend(faces);
    FilteredSimplicialComplex::new(simplices).expect("valid torus triangulation")
}

/// A Klein bottle triangulated on a 4x4 grid quotient (one twisted gluing),
/// filtered by dimension like the torus.
pub fn klein_bottle_simplicial() -> FilteredSimplicialComplex {
    let n = 4i64;
    // Vertical wrap is twisted: v(i, n) = v(-i mod n, 0).
    let vertex = |i: i64, j: i64| -> u64 {
        let (i, j) = if j == n {
            ((-i).rem_euclid(n), 0)
        } else {
            (i.rem_euclid(n), j)
        };
        (i + n * j) as u64
    };
    let mut simplices = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let add = |stage: i64, mut v: Vec<u64>, out: &mut Vec<(i64, Vec<u64>)>,
                   seen: &mut std::collections::BTreeSet<Vec<u64>>| {
        v.sort_unstable();
        assert!(v.windows(2).all(|w| w[0] != w[1]), "degenerate simplex");
        if seen.insert(v.clone()) {
            out.push((stage, v));
        }
    };
    for i in 0..n {
        for j in 0..n {
            add(1, vec![vertex(i, j)], &mut simplices, &mut seen);
        }
    }
    for i in 0..n {
        for j in 0..n {
            let a = vertex(i, j);
            let b = vertex(i + 1, j);
            let c = vertex(i, j + 1);
            let d = vertex(i + 1, j + 1);
            for tri in [[a, b, d], [a, d, c]] {
                for x in 0..3 {
                    for y in (x + 1)..3 {
                        add(2, vec![tri[x], tri[y]], &mut simplices, &mut seen);
                    }
                }
                add(3, tri.to_vec(), &mut simplices, &mut seen);
            }
        }
    }
    FilteredSimplicialComplex::new(simplices).expect("valid Klein bottle triangulation")
}

pub fn torus() -> FilteredChainComplex {
    torus_simplicial().chain_complex(1).expect("valid complex")
}

pub fn klein_bottle() -> FilteredChainComplex {
    klein_bottle_simplicial()
        .chain_complex(1)
        .expect("valid complex")
}
