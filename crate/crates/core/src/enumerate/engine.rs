use std::time::Instant;

use log::{debug, info, warn};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{
    build_vocabulary, AuditEntry, BranchingTree, Decision, Enumeration, ExtraEdge, FallbackEvent, Provenance,
    RunReport, ShapeRecord, TreeEdge, VocabularyConfig,
};
use crate::coinvariant::CoinvariantReducer;
use crate::error::{Error, Result};
use crate::exactla::{Extension, Reduced, SparseIntMatrix, SparseVec};
use crate::multipoly::{antisymmetrize, slater_basis, source_shape, MPoly};
use crate::qseries::{degree_d, shape_entropy, shape_poly, Statistics};
use crate::shiftops::{apply_symword, Letter, SymWord, Word};

#[derive(Debug, Clone)]
pub struct EnumerationConfig {
    pub vocabulary: VocabularyConfig,
    /// Worker threads for candidate construction; `None` uses the global
    /// rayon pool.
    pub threads: Option<usize>,
    /// Largest batch of candidates built between serialized commits.
    pub max_batch: usize,
    /// Record every candidate decision in the report.
    pub audit: bool,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { vocabulary: VocabularyConfig::default(), threads: None, max_batch: 256, audit: true }
    }
}

/// A candidate built and reduced in parallel, committed in order.
struct Candidate {
    pair: usize,
    parent: usize,
    word: SymWord,
    poly: MPoly,
    antisymmetric: bool,
    annihilated: bool,
    image: SparseVec,
    reduced: Option<Reduced>,
}

/// Which candidates a pass over the pairs may accept.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Pass {
    /// Only candidates killed by every unit lowering.
    Annihilated,
    /// Candidates deferred by the first pass.
    Deferred,
}

/// Everything fixed for the run.
struct Context<'a> {
    n: usize,
    d: usize,
    config: &'a EnumerationConfig,
    words: &'a [SymWord],
    reducer: &'a CoinvariantReducer,
    unit_lowerings: &'a [SymWord],
}

/// Running state of one grade.
struct GradeState {
    grade: usize,
    want: usize,
    found: usize,
    span: SparseIntMatrix,
    by_poly: FxHashMap<MPoly, usize>,
    deferred: Vec<usize>,
}

/// Enumerates all `N!^(d-1)` shapes for odd `d`.
pub fn enumerate_shapes(n: usize, d: usize, config: &EnumerationConfig) -> Result<Enumeration> {
    if d.is_multiple_of(2) {
        return Err(Error::OddDimensionRequired(d));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("at least one particle is required".into()));
    }
    match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(|| run(n, d, config)),
        None => run(n, d, config),
    }
}

fn run(n: usize, d: usize, config: &EnumerationConfig) -> Result<Enumeration> {
    let start = Instant::now();
    let vocabulary = build_vocabulary(d, config.vocabulary);
    if vocabulary.descent_words().next().is_none() && n > 1 {
        return Err(Error::EmptyVocabulary);
    }
    let top = degree_d(d, n);
    let expected: Vec<usize> = {
        let p = shape_poly(n, d, Statistics::Fermion);
        (0..=top).map(|g| p.coeff(g).to_usize().expect("count fits")).collect()
    };
    let reducer = CoinvariantReducer::new(n, d);
    let unit_lowerings: Vec<SymWord> = (0..d).map(|c| SymWord::new(Word::new(vec![Letter::down(c, 1)]))).collect();
    let ctx = Context { n, d, config, words: &vocabulary.words, reducer: &reducer, unit_lowerings: &unit_lowerings };

    let mut shapes: Vec<ShapeRecord> = Vec::new();
    let mut tree = BranchingTree::default();
    let mut report = RunReport { n, d, expected: expected.clone(), found: vec![0; top + 1], ..Default::default() };

    let source = source_shape(n, d)?;
    let (normal, content, sign) = source.normalize().expect("source shape is nonzero");
    shapes.push(ShapeRecord {
        id: 0,
        grade: top,
        poly: normal,
        provenance: Provenance::Root { content, sign },
        entropy: shape_entropy(n, d, top)?,
    });
    report.found[top] = 1;
    check_annihilated(&shapes[0], &unit_lowerings, n)?;

    for g in (0..top).rev() {
        let want = expected[g];
        if want == 0 {
            continue;
        }
        let mut state = GradeState {
            grade: g,
            want,
            found: 0,
            span: SparseIntMatrix::new(reducer.quotient_dimension()),
            by_poly: FxHashMap::default(),
            deferred: Vec::new(),
        };

        let pairs: Vec<(usize, usize)> = shapes
            .iter()
            .filter(|s| s.grade > g && s.grade - g <= config.vocabulary.max_drop as usize)
            .flat_map(|s| {
                let drop = (s.grade - g) as i64;
                vocabulary
                    .descent_words()
                    .filter(move |(_, w)| w.net_grade() == -drop)
                    .map(move |(wi, _)| (s.id, wi))
            })
            .collect();

        let all: Vec<usize> = (0..pairs.len()).collect();
        scan(&ctx, &pairs, &all, Pass::Annihilated, &mut state, &mut shapes, &mut tree, &mut report)?;
        if state.found < want && !state.deferred.is_empty() {
            let deferred = std::mem::take(&mut state.deferred);
            warn!("grade {g}: admitting {} candidates that survive a unit lowering", deferred.len());
            scan(&ctx, &pairs, &deferred, Pass::Deferred, &mut state, &mut shapes, &mut tree, &mut report)?;
        }
        debug!("grade {g}: {}/{want} from {} candidate pairs", state.found, pairs.len());

        if state.found < want {
            let deficit = want - state.found;
            let mut tried = 0;
            for label in slater_basis(n, d, g) {
                if state.found == want {
                    break;
                }
                tried += 1;
                let poly = antisymmetrize(&label, d);
                let image = reducer.normal_form(&poly);
                if state.span.try_extend(image)? == Extension::Extended {
                    let (normal, content, sign) = poly.normalize().expect("Slater determinant is nonzero");
                    let id = shapes.len();
                    state.by_poly.insert(normal.clone(), id);
                    shapes.push(ShapeRecord {
                        id,
                        grade: g,
                        poly: normal,
                        provenance: Provenance::Oracle { slater: label, content, sign },
                        entropy: shape_entropy(n, d, g)?,
                    });
                    tree.edges.push(TreeEdge { parent: 0, child: id, word: None });
                    check_annihilated(&shapes[id], &unit_lowerings, n)?;
                    state.found += 1;
                }
            }
            warn!("grade {g}: descent left {deficit} missing, oracle filled after {tried} labels");
            report.fallbacks.push(FallbackEvent { grade: g, deficit, tried });
        }
        if state.found != want {
            return Err(Error::HistogramMismatch { grade: g, found: state.found, expected: want });
        }
        report.found[g] = state.found;
    }

    report.elapsed = start.elapsed();
    info!("N={n} d={d}: {} shapes in {:.2?}", shapes.len(), report.elapsed);
    Ok(Enumeration { shapes, tree, report })
}

/// Builds the candidates `order` (indices into `pairs`) in parallel batches
/// and commits them one by one until the grade is full.
#[allow(clippy::too_many_arguments)]
fn scan(
    ctx: &Context<'_>,
    pairs: &[(usize, usize)],
    order: &[usize],
    pass: Pass,
    state: &mut GradeState,
    shapes: &mut Vec<ShapeRecord>,
    tree: &mut BranchingTree,
    report: &mut RunReport,
) -> Result<()> {
    let max_batch = ctx.config.max_batch.max(1);
    let mut cursor = 0;
    let mut batch = 8usize.min(max_batch);
    while state.found < state.want && cursor < order.len() {
        let chunk = &order[cursor..(cursor + batch).min(order.len())];
        cursor += chunk.len();
        batch = (batch * 2).min(max_batch);

        let snapshot = &state.span;
        let parents: &[ShapeRecord] = shapes;
        let built: Vec<Candidate> = chunk
            .par_iter()
            .map(|&pair| {
                let (parent, wi) = pairs[pair];
                let word = ctx.words[wi].clone();
                let poly = apply_symword(&word, &parents[parent].poly);
                let antisymmetric = poly.is_antisymmetric();
                let live = !poly.is_zero() && antisymmetric;
                let annihilated = live && ctx.unit_lowerings.iter().all(|w| apply_symword(w, &poly).is_zero());
                let image = if live { ctx.reducer.normal_form(&poly) } else { SparseVec::zero() };
                let reduced = (!image.is_zero()).then(|| snapshot.reduce(&image).expect("quotient columns"));
                Candidate { pair, parent, word, poly, antisymmetric, annihilated, image, reduced }
            })
            .collect();

        for cand in built {
            if state.found == state.want {
                break;
            }
            report.candidates += 1;
            let decision = commit(ctx, pass, state, shapes, tree, cand)?;
            if ctx.config.audit {
                report.audit.push(decision);
            }
        }
    }
    Ok(())
}

fn commit(
    ctx: &Context<'_>,
    pass: Pass,
    state: &mut GradeState,
    shapes: &mut Vec<ShapeRecord>,
    tree: &mut BranchingTree,
    cand: Candidate,
) -> Result<AuditEntry> {
    let (g, parent, word) = (state.grade, cand.parent, cand.word.clone());
    let entry = |decision| AuditEntry { grade: g, parent, word: word.clone(), decision };
    if cand.poly.is_zero() {
        return Ok(entry(Decision::Zero));
    }
    if !cand.antisymmetric {
        return Ok(entry(Decision::NotAntisymmetric));
    }
    let (normal, content, sign) = cand.poly.normalize().expect("nonzero");
    if let Some(&to) = state.by_poly.get(&normal) {
        tree.extra_edges.push(ExtraEdge { from: parent, to, word: word.clone(), content, sign });
        return Ok(entry(Decision::Duplicate { of: to, sign }));
    }
    let Some(reduced) = cand.reduced else {
        return Ok(entry(Decision::InSpan));
    };
    if pass == Pass::Annihilated && !cand.annihilated {
        // decide later, against the span as it stands then
        if state.span.reduce(&cand.image)?.is_zero() {
            return Ok(entry(Decision::InSpan));
        }
        state.deferred.push(cand.pair);
        return Ok(entry(Decision::Deferred));
    }
    if state.span.commit(reduced, cand.image) == Extension::InSpan {
        return Ok(entry(Decision::InSpan));
    }
    let id = shapes.len();
    state.by_poly.insert(normal.clone(), id);
    shapes.push(ShapeRecord {
        id,
        grade: g,
        poly: normal,
        provenance: Provenance::Derived { parent, word: word.clone(), content, sign },
        entropy: shape_entropy(ctx.n, ctx.d, g)?,
    });
    tree.edges.push(TreeEdge { parent, child: id, word: Some(word.clone()) });
    check_annihilated(&shapes[id], ctx.unit_lowerings, ctx.n)?;
    state.found += 1;
    Ok(entry(Decision::Accepted(id)))
}

/// Every shape is killed by the symmetrized unit down-shift of each
/// coordinate. Enforced for up to three particles, reported above that.
fn check_annihilated(record: &ShapeRecord, unit_lowerings: &[SymWord], n: usize) -> Result<()> {
    for w in unit_lowerings {
        if !apply_symword(w, &record.poly).is_zero() {
            if n <= 3 {
                return Err(Error::Internal(format!("shape {} survives {w}", record.id)));
            }
            warn!("shape {} is not annihilated by {w}", record.id);
        }
    }
    Ok(())
}
