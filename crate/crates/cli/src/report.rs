//! Command results as serializable reports.

use serde::{Deserialize, Serialize};

use xchain::bias::{bias_degree, enumerate_balanced, is_balanced, negative_weight, overlap, BalancedClass};
use xchain::graphs::emit_graph6;
use xchain::localize::{extract_code, simulate, LocalizationCode, LocalizationTrace};
use xchain::schmidt::{partition_groups, schmidt_decomposition_with, schmidt_rank_with, PartitionGroups};
use xchain::stab::stabilizer_parity;
use xchain::verify::{run, VerifyConfig, VerifyReport};
use xchain::xchains::{factorize, x_representation_with, xchain_state, XChainData};
use xchain::{Basis, Bipartition, BitVec, DyadicReal, Graph, Result, Sign, VertexSet};

/// States listed one per line in diagrams before eliding the rest.
const DIAGRAM_MAX_STATES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub format: Format,
    pub graph: Option<GraphInfo>,
    pub results: Results,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub graph6: String,
}

impl GraphInfo {
    pub fn of(g: &Graph) -> Self {
        Self { n: g.n(), edges: g.edges(), graph6: emit_graph6(g) }
    }
}

/// A dyadic value with a float rendering for human readers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Exact {
    pub value: DyadicReal,
    pub decimal: f64,
}

impl From<DyadicReal> for Exact {
    fn from(value: DyadicReal) -> Self {
        Self { value, decimal: value.to_f64() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub vertices: Vec<usize>,
    pub parity: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ket {
    pub ket: BitVec,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub generators: Vec<Generator>,
    pub exclusive: Vec<usize>,
    pub kappa: Vec<usize>,
    pub x_gamma: BitVec,
    pub alpha: Option<Sign>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Groups {
    pub k_b: Vec<Vec<usize>>,
    pub k_aa: Vec<Vec<usize>>,
    pub k_simb: Vec<Vec<usize>>,
    pub k_harpoon: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub label: Vec<usize>,
    pub sign: Sign,
    pub alice: String,
    pub bob: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Results {
    Xchains {
        factorization: Factorization,
    },
    Represent {
        factorization: Factorization,
        expansion: String,
        terms: Vec<Ket>,
        diagram: Vec<String>,
    },
    Bias {
        bias: Exact,
        balanced: bool,
        negative_weight: u64,
    },
    Overlap {
        graph2: GraphInfo,
        overlap: Exact,
        orthogonal: bool,
    },
    Balanced {
        max_n: usize,
        classes: Vec<BalancedEntry>,
    },
    Schmidt {
        part_a: Vec<usize>,
        part_b: Vec<usize>,
        rank: u64,
        geometric_measure: u32,
        groups: Groups,
        coefficient: Exact,
        alpha: Sign,
        terms: Vec<Term>,
        diagram: Vec<String>,
    },
    Localize {
        part_a: Vec<usize>,
        errors: Vec<usize>,
        seed: u64,
        code: LocalizationCode,
        trace: LocalizationTrace,
    },
    Verify {
        ok: bool,
        report: VerifyReport,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedEntry {
    pub class: BalancedClass,
    pub graph6: String,
}

fn span_rows(b: &Basis) -> Vec<Vec<usize>> {
    b.rows().iter().map(|r| r.vertices()).collect()
}

fn set_list(sets: &[Vec<usize>]) -> String {
    let inner: Vec<String> = sets
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    inner.join(", ")
}

fn factorization(g: &Graph, xd: &XChainData) -> Result<Factorization> {
    let generators = xd
        .gamma
        .rows()
        .iter()
        .map(|&r| Ok(Generator { vertices: r.vertices(), parity: stabilizer_parity(g, r)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(Factorization {
        generators,
        exclusive: xd.exclusive.clone(),
        kappa: xd.kappa.clone(),
        x_gamma: xd.x_gamma,
        alpha: xd.alpha,
    })
}

pub fn xchains(g: &Graph) -> Result<Results> {
    Ok(Results::Xchains { factorization: factorization(g, &factorize(g))? })
}

/// Text pipeline: subset group split, X-chain states, superposition over the correlation group.
fn factorization_diagram(g: &Graph, xd: &XChainData, f: &Factorization, expansion: &str) -> Result<Vec<String>> {
    let gens: Vec<Vec<usize>> = f.generators.iter().map(|g| g.vertices.clone()).collect();
    let kappa: Vec<Vec<usize>> = xd.kappa.iter().map(|&v| vec![v]).collect();
    let mut lines = vec![
        "P(V) = <Gamma> x <K>".to_string(),
        format!("  Gamma = {{{}}}", set_list(&gens)),
        format!("  K     = {{{}}}", set_list(&kappa)),
        format!("<Gamma> --> X-chain states, x_Gamma = |{}>", xd.x_gamma),
    ];
    for (gen, vs) in f.generators.iter().zip(&gens) {
        lines.push(format!("  pi({}) = {}", set_list(std::slice::from_ref(vs)), gen.parity.symbol()));
    }
    let total = 1usize << xd.kappa.len();
    for xi in xd.correlation_elements().take(DIAGRAM_MAX_STATES) {
        let (sign, ket) = xchain_state(g, xd, xi)?;
        lines.push(format!("  psi({}) = {}|{}>", xi.to_set_string(), sign.symbol(), ket));
    }
    if total > DIAGRAM_MAX_STATES {
        lines.push(format!("  ... {} more", total - DIAGRAM_MAX_STATES));
    }
    let alpha = xd.alpha.map_or('?', Sign::symbol);
    lines.push(format!("<K> --> sum over {total} correlation elements, alpha = {alpha}"));
    lines.push(format!("  |G> = {expansion}"));
    Ok(lines)
}

pub fn represent(g: &Graph) -> Result<Results> {
    let xd = factorize(g);
    let rep = x_representation_with(g, &xd)?;
    let f = factorization(g, &xd)?;
    let expansion = rep.to_string();
    let diagram = factorization_diagram(g, &xd, &f, &expansion)?;
    let terms = rep.terms.iter().map(|(&ket, &sign)| Ket { ket, sign }).collect();
    Ok(Results::Represent { factorization: f, expansion, terms, diagram })
}

pub fn bias(g: &Graph) -> Result<Results> {
    Ok(Results::Bias { bias: bias_degree(g)?.into(), balanced: is_balanced(g), negative_weight: negative_weight(g)? })
}

pub fn overlap_of(g: &Graph, h: &Graph) -> Result<Results> {
    let o = overlap(g, h)?;
    Ok(Results::Overlap { graph2: GraphInfo::of(h), overlap: o.into(), orthogonal: o.is_zero() })
}

pub fn balanced(max_n: usize) -> Result<Results> {
    let mut classes = Vec::new();
    for n in 1..=max_n {
        for class in enumerate_balanced(n)? {
            let graph6 = emit_graph6(&class.graph());
            classes.push(BalancedEntry { class, graph6 });
        }
    }
    Ok(Results::Balanced { max_n, classes })
}

fn schmidt_diagram(pg: &PartitionGroups, groups: &Groups, terms: &[Term], coeff: DyadicReal) -> Vec<String> {
    let xd = &pg.xchains;
    let kappa: Vec<Vec<usize>> = xd.kappa.iter().map(|&v| vec![v]).collect();
    let mut lines = vec![
        format!("A = {}, B = {}", pg.part.a().to_set_string(), pg.part.b().to_set_string()),
        format!("<K> = {{{}}} mod Gamma = {{{}}}", set_list(&kappa), set_list(&span_rows(&xd.gamma))),
        format!("  k_B        = {{{}}}", set_list(&groups.k_b)),
        format!("  k_AA       = {{{}}}", set_list(&groups.k_aa)),
        format!("  k_~B       = {{{}}}", set_list(&groups.k_simb)),
        format!("  k_A->B     = {{{}}}", set_list(&groups.k_harpoon)),
        format!("<k_A->B> --> {} Schmidt terms, coefficient {}", terms.len(), coeff),
    ];
    for t in terms.iter().take(DIAGRAM_MAX_STATES) {
        let label = set_list(std::slice::from_ref(&t.label));
        lines.push(format!("  {label}: {}  {}  (x)  {}", t.sign.symbol(), t.alice, t.bob));
    }
    if terms.len() > DIAGRAM_MAX_STATES {
        lines.push(format!("  ... {} more", terms.len() - DIAGRAM_MAX_STATES));
    }
    lines
}

pub fn schmidt(g: &Graph, part: &Bipartition) -> Result<Results> {
    let pg = partition_groups(g, part)?;
    let rank = schmidt_rank_with(&pg)?;
    let d = schmidt_decomposition_with(g, &pg)?;
    let groups = Groups {
        k_b: span_rows(&pg.k_b),
        k_aa: span_rows(&pg.k_aa),
        k_simb: span_rows(&pg.k_simb),
        k_harpoon: span_rows(&pg.k_harpoon),
    };
    let terms: Vec<Term> = d
        .terms
        .iter()
        .map(|t| Term { label: t.xi.vertices(), sign: t.sign, alice: t.vec_a.to_string(), bob: t.vec_b.to_string() })
        .collect();
    let diagram = schmidt_diagram(&pg, &groups, &terms, d.coeff);
    Ok(Results::Schmidt {
        part_a: part.a().vertices(),
        part_b: part.b().vertices(),
        rank: rank.rank,
        geometric_measure: rank.geometric_measure,
        groups,
        coefficient: d.coeff.into(),
        alpha: d.alpha,
        terms,
        diagram,
    })
}

pub fn localize(g: &Graph, part: &Bipartition, errors: VertexSet, seed: u64) -> Result<Results> {
    let code = extract_code(g, part)?;
    let trace = simulate(g, part, errors, seed)?;
    Ok(Results::Localize { part_a: part.a().vertices(), errors: errors.vertices(), seed, code, trace })
}

pub fn verify(max_n: usize, samples: usize, seed: u64) -> Result<Results> {
    let cfg = VerifyConfig { max_n, samples, seed, exhaustive_n: VerifyConfig::default().exhaustive_n.min(max_n), ..Default::default() };
    let report = run(&cfg)?;
    Ok(Results::Verify { ok: report.ok(), report })
}
