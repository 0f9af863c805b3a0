use std::fmt::Write;

use shape_forge::enumerate::{CompletenessReport, Decision, Enumeration};
use shape_forge::qseries::{shape_poly, Statistics};

/// Plain-text run summary.
pub fn render(e: &Enumeration, completeness: Option<&CompletenessReport>) -> String {
    let r = &e.report;
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "N = {}, d = {}", r.n, r.d).unwrap();
    writeln!(w, "shape polynomial: {}", shape_poly(r.n, r.d, Statistics::Fermion)).unwrap();
    writeln!(w, "shapes: {}", e.shapes.len()).unwrap();
    writeln!(w, "tree edges: {}, extra edges: {}", e.tree.edges.len(), e.tree.extra_edges.len()).unwrap();
    writeln!(w, "candidates examined: {}", r.candidates).unwrap();
    writeln!(w, "runtime: {:.3} s", r.elapsed.as_secs_f64()).unwrap();

    writeln!(w, "\nhistogram").unwrap();
    writeln!(w, "{:>6} {:>9} {:>6}", "grade", "expected", "found").unwrap();
    for (g, (exp, found)) in r.expected.iter().zip(&r.found).enumerate().rev() {
        if *exp > 0 || *found > 0 {
            writeln!(w, "{g:>6} {exp:>9} {found:>6}").unwrap();
        }
    }
    writeln!(w, "histogram matches: {}", r.histogram_matches()).unwrap();

    writeln!(w, "\nfallback events: {}", r.fallbacks.len()).unwrap();
    for f in &r.fallbacks {
        writeln!(w, "  grade {}: deficit {} filled from {} Slater labels", f.grade, f.deficit, f.tried).unwrap();
    }

    let deferred = r.audit.iter().filter(|a| a.decision == Decision::Deferred).count();
    let from_words = e.shapes.iter().filter(|s| s.provenance.word().is_some()).count();
    writeln!(w, "candidates deferred for surviving a unit lowering: {deferred}").unwrap();
    writeln!(w, "shapes reached by words: {from_words}").unwrap();

    if let Some(c) = completeness {
        writeln!(w, "\ncompleteness").unwrap();
        writeln!(w, "{:>6} {:>9} {:>7} {:>10} {:>10}", "grade", "states", "shapes", "quotient", "explicit").unwrap();
        for g in &c.grades {
            let explicit = g.explicit_rank.map_or_else(|| "-".to_string(), |x| x.to_string());
            writeln!(w, "{:>6} {:>9} {:>7} {:>10} {:>10}", g.grade, g.states, g.shapes, g.quotient_rank, explicit)
                .unwrap();
        }
        writeln!(w, "quotient rank of all shapes: {}", c.quotient_rank).unwrap();
    }
    out
}
