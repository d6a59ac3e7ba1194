//! Integer barcode diagrams in the two flavors the persistence groups
//! support, with deterministic text and SVG emitters.
//!
//! Stagewise mode walks, for each birth stage i, the chain of groups
//! `H^{i,i,k}_n` over the death stage k and emits a bar `[i,k)` at every
//! jump, labeled with the group reached and the step quotient (the two
//! together are what the divisors alone cannot reconstruct over Z).
//! Alternative mode emits one bar per nonzero `BD^{i,k}_n` labeled with its
//! divisors, and joins overlapping bars with an extension link whenever the
//! total group over the overlap window differs from the direct sum of the
//! bars' BD groups.

use num_bigint::BigInt;

use crate::complex::{Degree, FilteredChainComplex, Stage};
use crate::lattice::{direct_sum_divisors, label_for_divisors, Lattice};
use crate::persistence::{self, Death};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BarcodeMode {
    Stagewise,
    Alternative,
}

impl BarcodeMode {
    pub fn name(&self) -> &'static str {
        match self {
            BarcodeMode::Stagewise => "stagewise",
            BarcodeMode::Alternative => "alternative",
        }
    }
}

/// One bar `[birth, death)` with its group and step-quotient labels
/// (divisor lists).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerBar {
    pub degree: Degree,
    pub birth: Stage,
    pub death: Death,
    pub group: Vec<BigInt>,
    pub quotient: Vec<BigInt>,
}

impl IntegerBar {
    /// Last stage at which the bar is alive.
    fn last_alive(&self, max_stage: Stage) -> Stage {
        match self.death {
            Death::At(k) => k - 1,
            Death::Infinite => max_stage,
        }
    }

    pub fn interval_label(&self) -> String {
        format!("[{},{})", self.birth, self.death)
    }
}

/// A nontrivial extension joining two overlapping bars, labeled with the
/// actual total group over the overlap window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionLink {
    pub bars: (usize, usize),
    pub label: Vec<BigInt>,
}

#[derive(Clone, Debug)]
pub struct BarcodeDiagram {
    pub mode: BarcodeMode,
    pub bars: Vec<IntegerBar>,
    pub links: Vec<ExtensionLink>,
    pub filtration_start: Stage,
    pub max_stage: Stage,
}

/// Build the barcode of `c` for the given degrees (all degrees when `None`).
pub fn build_barcode(
    c: &FilteredChainComplex,
    mode: BarcodeMode,
    degrees: Option<(Degree, Degree)>,
) -> BarcodeDiagram {
    let (lo, hi) = degrees.unwrap_or((c.min_degree(), c.max_degree()));
    let fs = c.filtration_start();
    let m = c.max_stage();
    let mut bars = Vec::new();
    let mut links = Vec::new();
    for n in lo..=hi {
        match mode {
            BarcodeMode::Stagewise => stagewise_bars(c, n, &mut bars),
            BarcodeMode::Alternative => alternative_bars(c, n, &mut bars, &mut links),
        }
    }
    // Deterministic ordering: degree, then birth, then death (infinite
    // last among equal births). Links reference bar indices, so reindex.
    let mut order: Vec<usize> = (0..bars.len()).collect();
    order.sort_by_key(|&i| (bars[i].degree, bars[i].birth, bars[i].death));
    let position: std::collections::BTreeMap<usize, usize> = order
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new))
        .collect();
    let bars: Vec<IntegerBar> = order.iter().map(|&i| bars[i].clone()).collect();
    for link in &mut links {
        let a = position[&link.bars.0];
        let b = position[&link.bars.1];
        link.bars = (a.min(b), a.max(b));
    }
    links.sort_by_key(|l| l.bars);
    BarcodeDiagram {
        mode,
        bars,
        links,
        filtration_start: fs,
        max_stage: m,
    }
}

fn stagewise_bars(c: &FilteredChainComplex, n: Degree, bars: &mut Vec<IntegerBar>) {
    let fs = c.filtration_start();
    let m = c.max_stage();
    for i in fs..=m {
        // The filtration of H_n(K^i) by death stage: numerator lattices of
        // H^{i,i,k}, shared denominator d(C^i_{n+1}).
        let den = c.boundaries_in(i, n);
        let old_cycles = c.cycles_in(i - 1, n);
        let mut previous: Option<Lattice> = None;
        for k in i..=m {
            let z = c.almost_cycles(k - i, k, n - k + 1);
            let num = old_cycles
                .sum(&c.boundary_image(&z, n))
                .expect("ambient degree");
            if let Some(prev) = &previous {
                if &num != prev {
                    let group = num.quotient(&den).expect("den inside num");
                    let step = num.quotient(prev).expect("chain is increasing");
                    bars.push(IntegerBar {
                        degree: n,
                        birth: i,
                        death: Death::At(k),
                        group: group.divisors().to_vec(),
                        quotient: step.divisors().to_vec(),
                    });
                }
            }
            previous = Some(num);
        }
        let inf = persistence::bd_group(c, i, Death::Infinite, n).expect("valid query");
        if !inf.is_trivial() {
            let total = persistence::total_prst_group(c, i, m, n).expect("valid query");
            bars.push(IntegerBar {
                degree: n,
                birth: i,
                death: Death::Infinite,
                group: total.divisors().to_vec(),
                quotient: inf.divisors().to_vec(),
            });
        }
    }
}

fn alternative_bars(
    c: &FilteredChainComplex,
    n: Degree,
    bars: &mut Vec<IntegerBar>,
    links: &mut Vec<ExtensionLink>,
) {
    let fs = c.filtration_start();
    let m = c.max_stage();
    let first = bars.len();
    for i in fs..=m {
        for k in (i + 1)..=m {
            let bd = persistence::bd_group(c, i, Death::At(k), n).expect("valid query");
            if !bd.is_trivial() {
                bars.push(IntegerBar {
                    degree: n,
                    birth: i,
                    death: Death::At(k),
                    group: bd.divisors().to_vec(),
                    quotient: bd.divisors().to_vec(),
                });
            }
        }
        let inf = persistence::bd_group(c, i, Death::Infinite, n).expect("valid query");
        if !inf.is_trivial() {
            bars.push(IntegerBar {
                degree: n,
                birth: i,
                death: Death::Infinite,
                group: inf.divisors().to_vec(),
                quotient: inf.divisors().to_vec(),
            });
        }
    }
    // Extension links: compare the total group over each pairwise overlap
    // window with the direct sum of every bar alive throughout the window.
    for a in first..bars.len() {
        for b in (a + 1)..bars.len() {
            let start = bars[a].birth.max(bars[b].birth);
            let end = bars[a].last_alive(m).min(bars[b].last_alive(m));
            if start > end {
                continue;
            }
            let alive: Vec<&IntegerBar> = bars[first..]
                .iter()
                .filter(|bar| bar.birth <= start && bar.last_alive(m) >= end)
                .collect();
            let summands: Vec<&[BigInt]> = alive.iter().map(|bar| bar.group.as_slice()).collect();
            let expected = direct_sum_divisors(&summands);
            let total = persistence::total_prst_group(c, start, end, n).expect("valid query");
            if total.divisors() != expected.as_slice() {
                links.push(ExtensionLink {
                    bars: (a, b),
                    label: total.divisors().to_vec(),
                });
            }
        }
    }
}

/// Fixed-width text rendering: one row per bar with degree, interval, a
/// stage-grid glyph, and the group / quotient labels; link rows after the
/// bars. Byte-stable across runs.
pub fn render_text(d: &BarcodeDiagram) -> String {
    let fs = d.filtration_start;
    let m = d.max_stage;
    let mut out = format!(
        "integer barcode ({})  stages {}..{}\n",
        d.mode.name(),
        fs,
        m
    );
    let interval_width = d
        .bars
        .iter()
        .map(|b| b.interval_label().len())
        .max()
        .unwrap_or(0);
    let group_width = d
        .bars
        .iter()
        .map(|b| label_for_divisors(&b.group).len())
        .max()
        .unwrap_or(0);
    for bar in &d.bars {
        let mut glyph = String::new();
        for stage in fs..=m {
            let ch = if stage == bar.birth {
                '*'
            } else if stage > bar.birth && stage <= bar.last_alive(m) {
                '='
            } else if Death::At(stage) == bar.death {
                'o'
            } else {
                '.'
            };
            glyph.push(ch);
        }
        glyph.push(match bar.death {
            Death::Infinite => '>',
            Death::At(k) if k > m => 'o',
            _ => '.',
        });
        out.push_str(&format!(
            "dim {}  {:iw$}  {}  group {:gw$}  step {}\n",
            bar.degree,
            bar.interval_label(),
            glyph,
            label_for_divisors(&bar.group),
            label_for_divisors(&bar.quotient),
            iw = interval_width,
            gw = group_width,
        ));
    }
    for link in &d.links {
        let a = &d.bars[link.bars.0];
        let b = &d.bars[link.bars.1];
        out.push_str(&format!(
            "dim {}  joined {}+{}  {}\n",
            a.degree,
            a.interval_label(),
            b.interval_label(),
            label_for_divisors(&link.label),
        ));
    }
    out
}

/// SVG 1.1 rendering: horizontal bars on a stage grid, filled circles at
/// births, hollow circles at finite deaths, arrowheads on infinite bars,
/// group labels on the left. Deterministic coordinates.
pub fn render_svg(d: &BarcodeDiagram) -> String {
    let fs = d.filtration_start;
    let m = d.max_stage;
    let cell = 40i64;
    let left = 200i64;
    let top = 40i64;
    let row_height = 26i64;
    let stages = (m - fs + 1).max(1);
    let width = left + cell * (stages + 1) + 40;
    let rows = d.bars.len() as i64 + d.links.len() as i64;
    let height = top + row_height * rows.max(1) + 30;
    let x_of = |stage: Stage| left + (stage - fs) * cell + cell / 2;
    let mut body = String::new();
    // Stage grid.
    for stage in fs..=m {
        let x = x_of(stage);
        body.push_str(&format!(
            "  <line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n",
            top - 10,
            height - 20
        ));
        body.push_str(&format!(
            "  <text x=\"{x}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{stage}</text>\n",
            top - 16
        ));
    }
    for (row, bar) in d.bars.iter().enumerate() {
        let y = top + row_height * row as i64 + row_height / 2;
        let x1 = x_of(bar.birth);
        let (x2, arrow) = match bar.death {
            Death::At(k) => (x_of(k.min(m + 1)), false),
            Death::Infinite => (x_of(m) + cell, true),
        };
        body.push_str(&format!(
            "  <text x=\"8\" y=\"{}\" font-size=\"12\">dim {}  {}  {}</text>\n",
            y + 4,
            bar.degree,
            label_for_divisors(&bar.group),
            label_for_divisors(&bar.quotient),
        ));
        body.push_str(&format!(
            "  <line x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"black\" stroke-width=\"2\"/>\n"
        ));
        body.push_str(&format!(
            "  <circle cx=\"{x1}\" cy=\"{y}\" r=\"4\" fill=\"black\"/>\n"
        ));
        if arrow {
            body.push_str(&format!(
                "  <polygon points=\"{0},{1} {2},{y} {0},{3}\" fill=\"black\"/>\n",
                x2 - 8,
                y - 5,
                x2 + 2,
                y + 5
            ));
        } else {
            body.push_str(&format!(
                "  <circle cx=\"{x2}\" cy=\"{y}\" r=\"4\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n"
            ));
        }
    }
    for (i, link) in d.links.iter().enumerate() {
        let row = d.bars.len() + i;
        let y = top + row_height * row as i64 + row_height / 2;
        let a = &d.bars[link.bars.0];
        let b = &d.bars[link.bars.1];
        body.push_str(&format!(
            "  <text x=\"8\" y=\"{}\" font-size=\"12\">joined {}+{}: {}</text>\n",
            y + 4,
            a.interval_label(),
            b.interval_label(),
            label_for_divisors(&link.label),
        ));
        let ya = top + row_height * link.bars.0 as i64 + row_height / 2;
        let yb = top + row_height * link.bars.1 as i64 + row_height / 2;
        let x = x_of(a.birth.max(b.birth));
        body.push_str(&format!(
            "  <path d=\"M {x} {ya} L {x} {yb}\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"4 3\" fill=\"none\"/>\n"
        ));
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n{body}</svg>\n"
    )
}
