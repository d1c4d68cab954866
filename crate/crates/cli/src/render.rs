//! Human-readable rendering of reports.

use std::fmt::Write;

use xchain::localize::Decoding;

use crate::report::{Exact, Factorization, GraphInfo, Report, Results};

fn sets(items: &[Vec<usize>]) -> String {
    let parts: Vec<String> = items
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn vertices(vs: &[usize]) -> String {
    format!("{{{}}}", vs.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

fn exact(e: &Exact) -> String {
    format!("{} (~{:.6})", e.value, e.decimal)
}

fn graph_line(label: &str, g: &GraphInfo) -> String {
    let edges: Vec<String> = g.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("{label}: n = {}, edges [{}], graph6 {}\n", g.n, edges.join(" "), g.graph6)
}

fn factorization(out: &mut String, f: &Factorization) {
    let gens: Vec<Vec<usize>> = f.generators.iter().map(|g| g.vertices.clone()).collect();
    let _ = writeln!(out, "X-chain generators: {} (dim {})", sets(&gens), gens.len());
    for g in &f.generators {
        let _ = writeln!(out, "  {}  parity {}", vertices(&g.vertices), g.parity.symbol());
    }
    let _ = writeln!(out, "exclusive vertices: {:?}", f.exclusive);
    let _ = writeln!(out, "correlation generators: {}", sets(&f.kappa.iter().map(|&v| vec![v]).collect::<Vec<_>>()));
    let _ = writeln!(out, "x_Gamma: |{}>", f.x_gamma);
    let alpha = f.alpha.map_or_else(|| "deferred".to_string(), |s| s.symbol().to_string());
    let _ = writeln!(out, "alpha: {alpha}");
}

pub fn text(report: &Report) -> String {
    let mut out = String::new();
    if let Some(g) = &report.graph {
        out.push_str(&graph_line("graph", g));
    }
    match &report.results {
        Results::Xchains { factorization: f } => factorization(&mut out, f),
        Results::Represent { factorization: f, expansion, diagram, .. } => {
            factorization(&mut out, f);
            let _ = writeln!(out, "X basis: {expansion}");
            out.push_str("factorization diagram:\n");
            for line in diagram {
                let _ = writeln!(out, "  {line}");
            }
        }
        Results::Bias { bias, balanced, negative_weight } => {
            let _ = writeln!(out, "bias degree: {}", exact(bias));
            let _ = writeln!(out, "Z-balanced: {balanced}");
            let _ = writeln!(out, "negative amplitudes: {negative_weight}");
        }
        Results::Overlap { graph2, overlap, orthogonal } => {
            out.push_str(&graph_line("graph2", graph2));
            let _ = writeln!(out, "overlap: {}", exact(overlap));
            let _ = writeln!(out, "orthogonal: {orthogonal}");
        }
        Results::Balanced { max_n, classes } => {
            let _ = writeln!(out, "Z-balanced classes with an odd X-chain, n <= {max_n}: {}", classes.len());
            for c in classes {
                let edges: Vec<String> = c.class.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                let _ = writeln!(
                    out,
                    "  n = {}  [{}]  witness {} ({} edges)  graph6 {}",
                    c.class.n,
                    edges.join(" "),
                    c.class.witness_xchain.to_set_string(),
                    c.class.witness_edge_count,
                    c.graph6
                );
            }
        }
        Results::Schmidt { rank, geometric_measure, coefficient, alpha, diagram, .. } => {
            let _ = writeln!(out, "Schmidt rank: {rank}");
            let _ = writeln!(out, "geometric measure: {geometric_measure}");
            let _ = writeln!(out, "coefficient: {}, alpha {}", exact(coefficient), alpha.symbol());
            out.push_str("factorization diagram:\n");
            for line in diagram {
                let _ = writeln!(out, "  {line}");
            }
        }
        Results::Localize { part_a, errors, seed, code, trace } => {
            let words: Vec<String> =
                code.codewords.iter().map(|c| format!("{} -> {}", c.label.to_set_string(), c.word)).collect();
            let _ = writeln!(out, "Alice: {}", vertices(part_a));
            let _ = writeln!(out, "code: {} (distance {}, corrects {})", words.join(", "), code.distance, code.correctable());
            let _ = writeln!(out, "seed {seed}, Z errors on {}", vertices(errors));
            let _ = writeln!(out, "ideal outcome {} -> {}, observed {}", trace.ideal.to_set_string(), trace.ideal_word, trace.noisy);
            match &trace.decoding {
                Decoding::Unique { label, corrected, flips } => {
                    let _ = writeln!(out, "decoded {} -> {corrected} ({flips} flips)", label.to_set_string());
                }
                Decoding::Ambiguous { flips, candidates } => {
                    let c: Vec<String> = candidates.iter().map(|c| c.to_set_string()).collect();
                    let _ = writeln!(out, "ambiguous at {flips} flips: {}", c.join(" "));
                }
            }
            if let Some(b) = &trace.bob_state {
                let _ = writeln!(out, "Bob's state: {b}");
            }
            let _ = writeln!(out, "success: {}", trace.success);
        }
        Results::Verify { ok, report } => {
            let _ = writeln!(out, "graphs checked: {}", report.graphs);
            for c in &report.checks {
                let _ = writeln!(out, "  {:<26} {:>9} cases  {} failures", c.name, c.cases, c.failures);
                for e in &c.examples {
                    let _ = writeln!(out, "    {e}");
                }
            }
            for f in &report.findings {
                let _ = writeln!(out, "finding: {f}");
            }
            let _ = writeln!(out, "{}", if *ok { "OK" } else { "MISMATCH" });
        }
    }
    out
}
