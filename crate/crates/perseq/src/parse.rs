//! Text formats for filtered complexes and equivalences.
//!
//! Simplicial format: one simplex per line, `<stage> <v0> <v1> ... <vk>`,
//! `#` comments and blank lines ignored. Face closure is required, never
//! auto-completed.
//!
//! Chain format: `generator <name> degree <n> stage <p>` lines followed by
//! `d <name> = <c1>*<g1> + <c2>*<g2> - <g3>` lines; an omitted `d` is the
//! zero boundary.
//!
//! Equivalence format: three inline chain-complex blocks
//! (`complex C` .. `end`, `complex D`, `complex EC`) followed by matrix
//! blocks `map f1 degree <n>` .. `end` with one whitespace-separated row per
//! line, for f1, g1, h1 (left reduction D => C) and f2, g2, h2 (right
//! reduction D => EC). Verbose but unambiguous; omitted degrees are zero.

use num_bigint::BigInt;
use std::collections::BTreeMap;
use thiserror::Error;

use crate::complex::{ChainComplexBuilder, Degree, FilteredChainComplex, Stage};
use crate::matrix::IntMatrix;
use crate::simplicial::FilteredSimplicialComplex;
use crate::transfer::{Equivalence, GradedMap, Reduction, TransferError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((idx + 1, line))
        }
    })
}

/// Parse the one-simplex-per-line format. Closure and monotonicity failures
/// are reported with the offending line.
pub fn parse_filtered_simplicial_complex(
    text: &str,
) -> Result<FilteredSimplicialComplex, ParseError> {
    let mut simplices: Vec<(Stage, Vec<u64>)> = Vec::new();
    let mut first_line: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    let mut stage_of: BTreeMap<Vec<u64>, Stage> = BTreeMap::new();
    for (line, content) in meaningful_lines(text) {
        let mut tokens = content.split_whitespace();
        let stage_tok = tokens.next().expect("nonempty line");
        let stage: Stage = stage_tok
            .parse()
            .map_err(|_| syntax(line, format!("expected integer stage, got '{stage_tok}'")))?;
        let mut vertices = Vec::new();
        for tok in tokens {
            let v: u64 = tok
                .parse()
                .map_err(|_| syntax(line, format!("expected integer vertex id, got '{tok}'")))?;
            vertices.push(v);
        }
        if vertices.is_empty() {
            return Err(syntax(line, "a simplex needs at least one vertex"));
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(syntax(line, format!("repeated vertex in {vertices:?}")));
        }
        first_line.entry(sorted.clone()).or_insert(line);
        let entry = stage_of.entry(sorted.clone()).or_insert(stage);
        *entry = (*entry).min(stage);
        simplices.push((stage, sorted));
    }
    // Closure and monotonicity with line attribution.
    for (simplex, &stage) in &stage_of {
        if simplex.len() < 2 {
            continue;
        }
        let line = first_line[simplex];
        for omit in 0..simplex.len() {
            let face: Vec<u64> = simplex
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != omit)
                .map(|(_, &v)| v)
                .collect();
            match stage_of.get(&face) {
                None => {
                    return Err(syntax(
                        line,
                        format!("missing face {face:?} of simplex {simplex:?}"),
                    ))
                }
                Some(&fs) if fs > stage => {
                    return Err(syntax(
                        line,
                        format!(
                            "face {face:?} enters at stage {fs}, after simplex {simplex:?} (stage {stage})"
                        ),
                    ))
                }
                _ => {}
            }
        }
    }
    FilteredSimplicialComplex::new(simplices).map_err(|e| ParseError::Invalid(e.to_string()))
}

fn parse_boundary_terms(rhs: &str, line: usize) -> Result<Vec<(BigInt, String)>, ParseError> {
    // Terms look like "3*b1 + b2 - 2*c"; normalize the separators then split.
    let normalized = rhs.replace('-', " - ").replace('+', " + ");
    let mut terms = Vec::new();
    let mut sign = BigInt::from(1);
    for tok in normalized.split_whitespace() {
        match tok {
            "+" => sign = BigInt::from(1),
            "-" => sign = BigInt::from(-1),
            _ => {
                let (coeff, name) = match tok.split_once('*') {
                    Some((c, name)) => {
                        let c: BigInt = c.trim().parse().map_err(|_| {
                            syntax(line, format!("expected integer coefficient, got '{c}'"))
                        })?;
                        (c, name.trim().to_string())
                    }
                    None => (BigInt::from(1), tok.to_string()),
                };
                if name.is_empty() {
                    return Err(syntax(line, "missing generator name after '*'"));
                }
                terms.push((&sign * coeff, name));
                sign = BigInt::from(1);
            }
        }
    }
    if terms.is_empty() {
        return Err(syntax(line, "empty boundary expression"));
    }
    Ok(terms)
}

type BoundaryLine = (usize, String, Vec<(BigInt, String)>);

fn parse_chain_lines<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
    filtration_start: Stage,
) -> Result<FilteredChainComplex, ParseError> {
    let mut builder = ChainComplexBuilder::new(filtration_start);
    let mut known: BTreeMap<String, usize> = BTreeMap::new();
    let mut boundaries: Vec<BoundaryLine> = Vec::new();
    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.first() {
            Some(&"generator") => {
                if tokens.len() != 6 || tokens[2] != "degree" || tokens[4] != "stage" {
                    return Err(syntax(
                        line,
                        "expected 'generator <name> degree <n> stage <p>'",
                    ));
                }
                let name = tokens[1].to_string();
                let degree: Degree = tokens[3]
                    .parse()
                    .map_err(|_| syntax(line, format!("bad degree '{}'", tokens[3])))?;
                let stage: Stage = tokens[5]
                    .parse()
                    .map_err(|_| syntax(line, format!("bad stage '{}'", tokens[5])))?;
                if known.insert(name.clone(), line).is_some() {
                    return Err(syntax(line, format!("duplicate generator '{name}'")));
                }
                builder.add_generator(&name, degree, stage);
            }
            Some(&"d") => {
                let Some(eq) = content.find('=') else {
                    return Err(syntax(line, "expected 'd <name> = <terms>'"));
                };
                let lhs: Vec<&str> = content[..eq].split_whitespace().collect();
                if lhs.len() != 2 {
                    return Err(syntax(line, "expected 'd <name> = <terms>'"));
                }
                let name = lhs[1].to_string();
                let terms = parse_boundary_terms(&content[eq + 1..], line)?;
                boundaries.push((line, name, terms));
            }
            _ => {
                return Err(syntax(
                    line,
                    format!("expected 'generator' or 'd' line, got '{content}'"),
                ))
            }
        }
    }
    for (line, name, terms) in boundaries {
        if !known.contains_key(&name) {
            return Err(syntax(line, format!("unknown generator '{name}'")));
        }
        for (_, target) in &terms {
            if !known.contains_key(target) {
                return Err(syntax(line, format!("unknown generator '{target}'")));
            }
        }
        builder.add_boundary_big(&name, &terms);
    }
    builder
        .build()
        .map_err(|e| ParseError::Invalid(e.to_string()))
}

/// Parse the generator/differential chain-complex format.
pub fn parse_filtered_chain_complex(
    text: &str,
    filtration_start: Stage,
) -> Result<FilteredChainComplex, ParseError> {
    parse_chain_lines(meaningful_lines(text), filtration_start)
}

/// Detect the format (chain lines start with `generator`) and parse.
/// `start` overrides the convention default: stage 1 for simplicial input,
/// stage 0 for chain input.
pub fn parse_complex_auto(
    text: &str,
    start: Option<Stage>,
) -> Result<FilteredChainComplex, ParseError> {
    let chain_format = meaningful_lines(text)
        .next()
        .map(|(_, l)| l.starts_with("generator ") || l.starts_with("d "))
        .unwrap_or(false);
    if chain_format {
        parse_filtered_chain_complex(text, start.unwrap_or(0))
    } else {
        let k = parse_filtered_simplicial_complex(text)?;
        k.chain_complex(start.unwrap_or(1))
            .map_err(|e| ParseError::Invalid(e.to_string()))
    }
}

/// Parse the three-complex equivalence format.
pub fn parse_equivalence(text: &str) -> Result<Equivalence, ParseError> {
    enum Block<'a> {
        Complex(String, Vec<(usize, &'a str)>),
        Map(String, Degree, Vec<(usize, &'a str)>, usize),
    }
    let mut blocks: Vec<Block> = Vec::new();
    let mut current: Option<Block> = None;
    for (line, content) in meaningful_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match (&mut current, tokens.first().copied()) {
            (None, Some("complex")) => {
                if tokens.len() != 2 {
                    return Err(syntax(line, "expected 'complex <name>'"));
                }
                current = Some(Block::Complex(tokens[1].to_string(), Vec::new()));
            }
            (None, Some("map")) => {
                if tokens.len() != 4 || tokens[2] != "degree" {
                    return Err(syntax(line, "expected 'map <name> degree <n>'"));
                }
                let degree: Degree = tokens[3]
                    .parse()
                    .map_err(|_| syntax(line, format!("bad degree '{}'", tokens[3])))?;
                current = Some(Block::Map(tokens[1].to_string(), degree, Vec::new(), line));
            }
            (None, _) => {
                return Err(syntax(line, "expected 'complex <name>' or 'map <name> degree <n>'"));
            }
            (Some(block), Some("end")) => {
                let finished = std::mem::replace(block, Block::Complex(String::new(), Vec::new()));
                blocks.push(finished);
                current = None;
            }
            (Some(Block::Complex(_, lines)), _) => lines.push((line, content)),
            (Some(Block::Map(_, _, rows, _)), _) => rows.push((line, content)),
        }
    }
    if current.is_some() {
        return Err(ParseError::Invalid("unterminated block (missing 'end')".into()));
    }

    let mut complexes: BTreeMap<String, FilteredChainComplex> = BTreeMap::new();
    let mut maps: BTreeMap<String, GradedMap> = BTreeMap::new();
    for name in ["f1", "g1", "h1", "f2", "g2", "h2"] {
        let shift = if name.starts_with('h') { 1 } else { 0 };
        maps.insert(name.to_string(), GradedMap::zero_shaped(shift));
    }
    type MapBlock = (String, Degree, Vec<(usize, String)>, usize);
    let mut map_blocks: Vec<MapBlock> = Vec::new();
    for block in blocks {
        match block {
            Block::Complex(name, lines) => {
                if !["C", "D", "EC"].contains(&name.as_str()) {
                    return Err(ParseError::Invalid(format!(
                        "unknown complex block '{name}' (expected C, D or EC)"
                    )));
                }
                let parsed = parse_chain_lines(lines.into_iter(), 1)?;
                if complexes.insert(name.clone(), parsed).is_some() {
                    return Err(ParseError::Invalid(format!("duplicate complex block '{name}'")));
                }
            }
            Block::Map(name, degree, rows, line) => {
                map_blocks.push((
                    name,
                    degree,
                    rows.iter().map(|(l, s)| (*l, s.to_string())).collect(),
                    line,
                ));
            }
        }
    }
    for required in ["C", "D", "EC"] {
        if !complexes.contains_key(required) {
            return Err(ParseError::Invalid(format!("missing complex block '{required}'")));
        }
    }
    let c = complexes["C"].clone();
    let d = complexes["D"].clone();
    let ec = complexes["EC"].clone();
    for (name, degree, rows, header_line) in map_blocks {
        let Some(map) = maps.get_mut(&name) else {
            return Err(syntax(
                header_line,
                format!("unknown map '{name}' (expected f1, g1, h1, f2, g2, h2)"),
            ));
        };
        let (target_dim, source_dim) = match name.as_str() {
            "f1" => (c.dim(degree), d.dim(degree)),
            "g1" => (d.dim(degree), c.dim(degree)),
            "f2" => (ec.dim(degree), d.dim(degree)),
            "g2" => (d.dim(degree), ec.dim(degree)),
            _ => (d.dim(degree + 1), d.dim(degree)),
        };
        if rows.len() != target_dim {
            return Err(syntax(
                header_line,
                format!(
                    "map {name} degree {degree}: expected {target_dim} rows, got {}",
                    rows.len()
                ),
            ));
        }
        let mut m = IntMatrix::zeros(target_dim, source_dim);
        for (i, (line, row)) in rows.iter().enumerate() {
            let entries: Result<Vec<BigInt>, _> = row
                .split_whitespace()
                .map(|t| t.parse::<BigInt>())
                .collect();
            let entries =
                entries.map_err(|_| syntax(*line, format!("bad integer row '{row}'")))?;
            if entries.len() != source_dim {
                return Err(syntax(
                    *line,
                    format!("expected {source_dim} entries, got {}", entries.len()),
                ));
            }
            for (j, v) in entries.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        map.set_matrix(degree, m);
    }
    let left = Reduction::new(
        d.clone(),
        c,
        maps.remove("f1").unwrap(),
        maps.remove("g1").unwrap(),
        maps.remove("h1").unwrap(),
    );
    let right = Reduction::new(
        d,
        ec,
        maps.remove("f2").unwrap(),
        maps.remove("g2").unwrap(),
        maps.remove("h2").unwrap(),
    );
    Equivalence::new(left, right).map_err(|e: TransferError| ParseError::Invalid(e.to_string()))
}
