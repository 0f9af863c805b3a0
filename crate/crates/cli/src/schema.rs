//! The `shapes.json` format.

use anyhow::{anyhow, bail, ensure, Context, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use shape_forge::enumerate::{BranchingTree, Enumeration, ExtraEdge, Provenance, ShapeRecord, TreeEdge};
use shape_forge::multipoly::{MPoly, Monomial, SlaterIndex};
use shape_forge::qseries::{shape_poly, Statistics};
use shape_forge::shiftops::SymWord;

pub const GENERATOR_ORDER: &str = "lex, coordinate-major";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeSet {
    pub n: usize,
    pub d: usize,
    pub generator_order: String,
    pub shape_poly: Vec<u64>,
    pub shapes: Vec<ShapeJson>,
    pub tree: TreeJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeJson {
    pub id: usize,
    pub grade: usize,
    pub entropy: f64,
    pub provenance: ProvenanceJson,
    pub poly: Vec<TermJson>,
}

/// `parent` and `word` are null for the root and for oracle shapes; oracle
/// shapes carry their Slater rows instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceJson {
    pub parent: Option<usize>,
    pub word: Option<String>,
    pub content: String,
    pub sign: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slater: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub root: usize,
    pub edges: Vec<EdgeJson>,
    pub extra_edges: Vec<ExtraEdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub parent: usize,
    pub child: usize,
    pub word: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraEdgeJson {
    pub from: usize,
    pub to: usize,
    pub word: String,
    pub content: String,
    pub sign: i8,
}

impl ShapeSet {
    pub fn from_enumeration(n: usize, d: usize, e: &Enumeration) -> Result<Self> {
        let shape_poly = shape_poly(n, d, Statistics::Fermion)
            .coeffs()
            .iter()
            .map(|c| u64::try_from(c).map_err(|_| anyhow!("shape count {c} does not fit in 64 bits")))
            .collect::<Result<_>>()?;
        Ok(ShapeSet {
            n,
            d,
            generator_order: GENERATOR_ORDER.to_string(),
            shape_poly,
            shapes: e.shapes.iter().map(shape_to_json).collect(),
            tree: TreeJson {
                root: e.tree.root,
                edges: e
                    .tree
                    .edges
                    .iter()
                    .map(|t| EdgeJson { parent: t.parent, child: t.child, word: t.word.as_ref().map(ToString::to_string) })
                    .collect(),
                extra_edges: e
                    .tree
                    .extra_edges
                    .iter()
                    .map(|x| ExtraEdgeJson {
                        from: x.from,
                        to: x.to,
                        word: x.word.to_string(),
                        content: x.content.to_string(),
                        sign: x.sign,
                    })
                    .collect(),
            },
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("malformed shape file")
    }

    /// Rebuilds the shape records; the error names the offending id.
    pub fn records(&self) -> Result<Vec<ShapeRecord>> {
        self.shapes.iter().map(|s| shape_from_json(self.n, self.d, s).with_context(|| format!("shape {}", s.id))).collect()
    }

    pub fn branching_tree(&self) -> Result<BranchingTree> {
        let edges = self
            .tree
            .edges
            .iter()
            .map(|e| {
                Ok(TreeEdge { parent: e.parent, child: e.child, word: e.word.as_deref().map(parse_word).transpose()? })
            })
            .collect::<Result<_>>()?;
        let extra_edges = self
            .tree
            .extra_edges
            .iter()
            .map(|x| {
                Ok(ExtraEdge {
                    from: x.from,
                    to: x.to,
                    word: parse_word(&x.word)?,
                    content: parse_int(&x.content)?,
                    sign: x.sign,
                })
            })
            .collect::<Result<_>>()?;
        Ok(BranchingTree { root: self.tree.root, edges, extra_edges })
    }
}

fn shape_to_json(s: &ShapeRecord) -> ShapeJson {
    let (parent, word, slater) = match &s.provenance {
        Provenance::Root { .. } => (None, None, None),
        Provenance::Derived { parent, word, .. } => (Some(*parent), Some(word.to_string()), None),
        Provenance::Oracle { slater, .. } => {
            (None, None, Some(slater.rows().iter().map(|r| r.to_vec()).collect()))
        }
    };
    ShapeJson {
        id: s.id,
        grade: s.grade,
        entropy: s.entropy,
        provenance: ProvenanceJson {
            parent,
            word,
            content: s.provenance.content().to_string(),
            sign: s.provenance.sign(),
            slater,
        },
        poly: s
            .poly
            .terms()
            .iter()
            .map(|(m, c)| TermJson { exp: m.exponents().to_vec(), coef: c.to_string() })
            .collect(),
    }
}

fn shape_from_json(n: usize, d: usize, s: &ShapeJson) -> Result<ShapeRecord> {
    let mut terms = Vec::with_capacity(s.poly.len());
    for t in &s.poly {
        ensure!(t.exp.len() == n * d, "exponent vector of length {}, expected {}", t.exp.len(), n * d);
        terms.push((Monomial::from_exponents(&t.exp), parse_int(&t.coef)?));
    }
    ensure!(terms.windows(2).all(|w| w[0].0 < w[1].0), "terms are not in strictly increasing lex order");
    let poly = MPoly::from_terms(n, d, terms);
    ensure!(poly.len() == s.poly.len(), "zero coefficient in the term list");

    let p = &s.provenance;
    let content = parse_int(&p.content)?;
    let sign = p.sign;
    let provenance = match (&p.parent, &p.word, &p.slater) {
        (None, None, None) => Provenance::Root { content, sign },
        (Some(parent), Some(word), None) => Provenance::Derived { parent: *parent, word: parse_word(word)?, content, sign },
        (None, None, Some(rows)) => {
            let slater = SlaterIndex::new(rows.iter().map(|r| r.iter().copied().collect()).collect())?;
            Provenance::Oracle { slater, content, sign }
        }
        _ => bail!("provenance must be a root, a (parent, word) pair, or a Slater label"),
    };
    Ok(ShapeRecord { id: s.id, grade: s.grade, poly, provenance, entropy: s.entropy })
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse().map_err(|_| anyhow!("not a decimal integer: {s:?}"))
}

fn parse_word(s: &str) -> Result<SymWord> {
    Ok(s.parse()?)
}
