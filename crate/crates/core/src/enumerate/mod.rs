//! Shape enumeration by descent from the source shape.
//!
//! Grades are visited from the top down. At each grade the candidates are
//! the symmetrized lowering words applied to already accepted shapes, in
//! (shape id, word index) order. A candidate becomes a new shape when it is
//! linearly independent of the accepted shapes of its grade modulo the
//! symmetric generators (see [`crate::coinvariant`]), which is the same as
//! extending the module span at that grade. If the words leave a deficit,
//! antisymmetrized Slater monomials fill it.

mod basis;
mod conflict;
mod engine;
mod replay;
mod span;
mod vocabulary;

use std::time::Duration;

use num_bigint::BigInt;

use crate::multipoly::{MPoly, SlaterIndex};
use crate::shiftops::SymWord;

pub use basis::{assemble, express_in_basis, ModuleVector, SymPoly};
pub use conflict::{verify_sign_conflict, SignConflict};
pub use engine::{enumerate_shapes, EnumerationConfig};
pub use replay::{check_record, replay_provenance, ReplayFailure};
pub use span::{
    module_span_matrix, verify_completeness, CompletenessReport, GenMonomial, GradeCheck, ModuleSpan, SpanRow,
};
pub use vocabulary::{build_vocabulary, Vocabulary, VocabularyConfig};

/// How a shape was obtained. In every case the raw polynomial equals
/// `sign * content * poly` of the record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// The product of Vandermonde forms.
    Root { content: BigInt, sign: i8 },
    /// `word` applied to shape `parent`.
    Derived { parent: usize, word: SymWord, content: BigInt, sign: i8 },
    /// Antisymmetrized Slater monomial, used when descent leaves a deficit.
    Oracle { slater: SlaterIndex, content: BigInt, sign: i8 },
}

impl Provenance {
    pub fn parent(&self) -> Option<usize> {
        match self {
            Provenance::Derived { parent, .. } => Some(*parent),
            _ => None,
        }
    }

    pub fn word(&self) -> Option<&SymWord> {
        match self {
            Provenance::Derived { word, .. } => Some(word),
            _ => None,
        }
    }

    pub fn content(&self) -> &BigInt {
        match self {
            Provenance::Root { content, .. }
            | Provenance::Derived { content, .. }
            | Provenance::Oracle { content, .. } => content,
        }
    }

    pub fn sign(&self) -> i8 {
        match self {
            Provenance::Root { sign, .. } | Provenance::Derived { sign, .. } | Provenance::Oracle { sign, .. } => *sign,
        }
    }
}

/// An accepted shape. `poly` is primitive with positive leading coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeRecord {
    pub id: usize,
    pub grade: usize,
    pub poly: MPoly,
    pub provenance: Provenance,
    pub entropy: f64,
}

/// Tree edge into `child`. Oracle shapes hang off the root with no word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEdge {
    pub parent: usize,
    pub child: usize,
    pub word: Option<SymWord>,
}

/// A rejected candidate that reproduced an accepted shape:
/// `word(from) = sign * content * to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtraEdge {
    pub from: usize,
    pub to: usize,
    pub word: SymWord,
    pub content: BigInt,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BranchingTree {
    pub root: usize,
    pub edges: Vec<TreeEdge>,
    pub extra_edges: Vec<ExtraEdge>,
}

impl BranchingTree {
    /// The incoming tree edge of `child`.
    pub fn parent_edge(&self, child: usize) -> Option<&TreeEdge> {
        self.edges.iter().find(|e| e.child == child)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FallbackEvent {
    pub grade: usize,
    pub deficit: usize,
    /// Slater labels tried before the deficit was filled.
    pub tried: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Accepted(usize),
    Zero,
    NotAntisymmetric,
    InSpan,
    /// Extends the span but survives a unit lowering; retried only if the
    /// grade is still short.
    Deferred,
    /// Proportional to an accepted shape.
    Duplicate { of: usize, sign: i8 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub grade: usize,
    pub parent: usize,
    pub word: SymWord,
    pub decision: Decision,
}

#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub n: usize,
    pub d: usize,
    /// Indexed by grade `0..=D(d, N)`.
    pub expected: Vec<usize>,
    pub found: Vec<usize>,
    pub fallbacks: Vec<FallbackEvent>,
    pub audit: Vec<AuditEntry>,
    pub candidates: usize,
    pub elapsed: Duration,
    pub completeness: Option<CompletenessReport>,
}

impl RunReport {
    pub fn histogram_matches(&self) -> bool {
        self.expected == self.found
    }
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub shapes: Vec<ShapeRecord>,
    pub tree: BranchingTree,
    pub report: RunReport,
}

impl Enumeration {
    pub fn polys(&self) -> Vec<MPoly> {
        self.shapes.iter().map(|s| s.poly.clone()).collect()
    }
}
