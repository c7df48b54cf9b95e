//! One function per subcommand. Each returns the report text and whether
//! the run ended in a refusal; errors are input errors.

use anyhow::{anyhow, bail, Context, Result};
use knotconc::concordance::{
    cable_operator, cabled_iterate_family, eval_invariants_with, filtration_certify, independence_report,
    kauffman_suite, parse_expr, robustness_check, FactBase, IndependenceConfig, KnotExpr, OperatorSpec,
};
use knotconc::laurent::{fmt_rational, resultant, LaurentPoly};
use knotconc::legendrian::{
    classical_invariants, legendrian_satellite, parse_front, parse_operator_front, q_front, tau_bounds, twist_front,
    unknot_front, FrontWord, LegInvariants, TauBounds,
};
use knotconc::primality::{
    bonciocat_criterion, catalan_solutions, is_irreducible, strongly_coprime, strongly_prime, CoprimalityStatus,
    CriterionOutcome, IrreducibilityStatus, StrongPrimalityStatus,
};
use knotconc::profile::{Rho0, SignatureProfile};
use knotconc::seifert::SeifertMatrix;
use num::BigInt;
use rayon::prelude::*;
use std::fmt::Write as _;

/// Working precision for printed enclosures, in bits.
const BITS: u32 = 80;
const DIGITS: usize = 15;

#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub refused: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, refused: false }
    }
}

/// A knot given as an expression or by a Seifert matrix.
pub enum KnotInput {
    Expr(KnotExpr),
    Matrix(SeifertMatrix),
}

impl KnotInput {
    pub fn expr(text: &str) -> Result<Self> {
        Ok(KnotInput::Expr(parse_expr(text)?))
    }

    pub fn matrix_file(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path))?;
        Ok(KnotInput::Matrix(text.parse().with_context(|| format!("parsing {}", path))?))
    }
}

pub fn load_facts(path: Option<&str>) -> Result<FactBase> {
    match path {
        None => Ok(FactBase::new()),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p))?;
            Ok(FactBase::parse(&text).with_context(|| format!("parsing {}", p))?)
        }
    }
}

/// `a..b` (inclusive), `a,b,c` or a single value.
pub fn parse_range(s: &str) -> Result<Vec<i64>> {
    let bad = || anyhow!("bad range \"{}\": expected a..b, a,b,c or a single integer", s);
    let out: Vec<i64> = if let Some((a, b)) = s.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// Positive values only.
pub fn parse_positive_range(s: &str) -> Result<Vec<u32>> {
    parse_range(s)?
        .into_iter()
        .map(|x| u32::try_from(x).ok().filter(|&x| x > 0).ok_or_else(|| anyhow!("{} in \"{}\" is not positive", x, s)))
        .collect()
}

/// Maps in parallel on `jobs` threads, keeping the input order.
fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync + Send) -> Result<Vec<R>> {
    if jobs <= 1 {
        return Ok(items.iter().map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(|| items.par_iter().map(f).collect()))
}

fn enclosure(r: &Rho0) -> String {
    r.enclose(BITS).to_decimal(DIGITS)
}

fn tau_text(t: &TauBounds) -> String {
    match t.exact {
        Some(v) => format!("{}", v),
        None => format!("in [{}, {}]", t.lower, t.upper),
    }
}

fn profile_table(out: &mut String, profile: &SignatureProfile) {
    writeln!(out, "signature profile (upper half circle, angles as theta/pi):").unwrap();
    for (a, b, level) in profile.arcs(BITS) {
        writeln!(out, "  {} .. {}  level {}", a.to_decimal(DIGITS), b.to_decimal(DIGITS), level).unwrap();
    }
}

pub fn invariants(input: &KnotInput, facts: &FactBase) -> Result<Outcome> {
    let mut out = String::new();
    match input {
        KnotInput::Expr(e) => {
            let inv = eval_invariants_with(e, facts)?;
            writeln!(out, "knot: {}", e).unwrap();
            writeln!(out, "alexander: {}", inv.alexander).unwrap();
            writeln!(out, "arf: {}", inv.arf).unwrap();
            writeln!(out, "genus upper bound: {}", inv.genus_upper).unwrap();
            writeln!(out, "signature at -1: {}", inv.profile.value_at_minus_one()).unwrap();
            profile_table(&mut out, &inv.profile);
            writeln!(out, "rho0: {}", inv.rho0).unwrap();
            writeln!(out, "rho0 enclosure: {}", enclosure(&inv.rho0)).unwrap();
            if let Some(l) = inv.legendrian {
                writeln!(out, "legendrian representative: {}", l).unwrap();
            }
            let src = if inv.tau_injected { " (uses an injected fact)" } else { "" };
            writeln!(out, "tau: {}{}", tau_text(&inv.tau), src).unwrap();
        }
        KnotInput::Matrix(v) => {
            let profile = SignatureProfile::from_seifert(v);
            let rho0 = profile.rho0();
            let g = v.genus() as i64;
            writeln!(out, "knot: Seifert matrix of size {}", v.dim()).unwrap();
            writeln!(out, "alexander: {}", v.alexander_polynomial().normalize()?).unwrap();
            writeln!(out, "arf: {}", if v.dim() == 0 { 0 } else { v.arf() }).unwrap();
            writeln!(out, "genus upper bound: {}", g).unwrap();
            writeln!(out, "signature at -1: {}", profile.value_at_minus_one()).unwrap();
            profile_table(&mut out, &profile);
            writeln!(out, "rho0: {}", rho0).unwrap();
            writeln!(out, "rho0 enclosure: {}", enclosure(&rho0)).unwrap();
            writeln!(out, "tau: in [{}, {}]", -g, g).unwrap();
        }
    }
    Ok(Outcome::ok(out))
}

pub fn profile_dump(input: &KnotInput, facts: &FactBase) -> Result<Outcome> {
    let profile = match input {
        KnotInput::Expr(e) => eval_invariants_with(e, facts)?.profile,
        KnotInput::Matrix(v) => SignatureProfile::from_seifert(v),
    };
    let mut out = String::from("start_theta_over_pi\tend_theta_over_pi\tlevel\n");
    for (a, b, level) in profile.arcs(BITS) {
        writeln!(out, "{}\t{}\t{}", a.to_decimal(DIGITS), b.to_decimal(DIGITS), level).unwrap();
    }
    Ok(Outcome::ok(out))
}

pub fn prime(f: &LaurentPoly, pair: Option<(BigInt, BigInt)>) -> Result<Outcome> {
    let mut out = String::new();
    writeln!(out, "polynomial: {}", f).unwrap();
    let v = is_irreducible(f)?;
    writeln!(out, "verdict: {}", v).unwrap();
    if let IrreducibilityStatus::Reducible(w) = &v.status {
        let q = f.checked_div(w)?.ok_or_else(|| anyhow!("witness {} does not divide", w))?;
        writeln!(out, "witness check: ({}) * ({}) = {}", w, q, f).unwrap();
    }
    let mut refused = false;
    if let Some((q1, q2)) = pair {
        let c = bonciocat_criterion(f, &q1, &q2)?;
        writeln!(out, "two-prime criterion with ({}, {}): {:?}", q1, q2, c).unwrap();
        refused = c == CriterionOutcome::Inconclusive;
    }
    Ok(Outcome { text: out, refused })
}

pub fn strongly_prime_cmd(f: &LaurentPoly, search_bound: u32) -> Result<Outcome> {
    let v = strongly_prime(f, search_bound)?;
    let mut out = format!("polynomial: {}\n", f);
    let refused = match &v.status {
        StrongPrimalityStatus::StronglyPrime => {
            out.push_str("verdict: strongly prime\n");
            false
        }
        StrongPrimalityStatus::NotStronglyPrime(k) => {
            writeln!(out, "verdict: not strongly prime, f(t^{}) is reducible", k).unwrap();
            false
        }
        StrongPrimalityStatus::Unknown => {
            writeln!(out, "verdict: unknown (no reducible substitution up to {})", search_bound).unwrap();
            true
        }
    };
    out.push_str("trace:\n");
    for t in &v.trace {
        writeln!(out, "  - {}", t).unwrap();
    }
    Ok(Outcome { text: out, refused })
}

pub fn strongly_coprime_cmd(f: &LaurentPoly, g: &LaurentPoly) -> Result<Outcome> {
    let v = strongly_coprime(f, g)?;
    let mut out = format!("f: {}\ng: {}\n", f, g);
    writeln!(out, "resultant: {}", fmt_rational(&resultant(f, g)?)).unwrap();
    let refused = match &v.status {
        CoprimalityStatus::StronglyCoprime => {
            out.push_str("verdict: strongly coprime\n");
            false
        }
        CoprimalityStatus::NotStronglyCoprime(k, l) => {
            writeln!(out, "verdict: not strongly coprime, f(t^{}) and g(t^{}) share a factor", k, l).unwrap();
            false
        }
        CoprimalityStatus::Unknown => {
            out.push_str("verdict: unknown\n");
            true
        }
    };
    out.push_str("trace:\n");
    for t in &v.trace {
        writeln!(out, "  - {}", t).unwrap();
    }
    Ok(Outcome { text: out, refused })
}

pub fn catalan(x_max: u64, y_max: u64, a_max: u32, b_max: u32) -> Result<Outcome> {
    if x_max < 2 || y_max < 2 || a_max < 2 || b_max < 2 {
        bail!("all bounds must be at least 2");
    }
    let sols = catalan_solutions(x_max, y_max, a_max, b_max);
    let mut out = format!(
        "solutions of x^a - y^b = 1 with 2 <= x <= {}, 2 <= y <= {}, 2 <= a <= {}, 2 <= b <= {}: {}\n",
        x_max,
        y_max,
        a_max,
        b_max,
        sols.len()
    );
    for (x, a, y, b) in sols {
        writeln!(out, "  {}^{} - {}^{} = 1", x, a, y, b).unwrap();
    }
    Ok(Outcome::ok(out))
}

pub enum FrontSource {
    TwistFront { j: i64 },
    QFront { k: i64, companion: Option<LegInvariants>, iterate: u32 },
    Unknot,
    /// Front text; `endpoints` is set for operator fronts.
    Text { text: String, endpoints: Option<usize> },
}

fn bounds_lines(out: &mut String, inv: &LegInvariants, genus: Option<i64>) -> Result<()> {
    let s = inv.tb + inv.rot.abs() + 1;
    writeln!(out, "tau lower bound: {} (from tb + |rot| + 1 = {})", s.div_euclid(2) + i64::from(s.rem_euclid(2) != 0), s)
        .unwrap();
    if let Some(g) = genus {
        let t = tau_bounds(inv, g)?;
        match t.exact {
            Some(v) => writeln!(out, "tau: {} (lower bound meets the genus bound {})", v, g).unwrap(),
            None => writeln!(out, "tau: in [{}, {}]", t.lower, t.upper).unwrap(),
        }
    }
    Ok(())
}

pub fn legendrian(src: &FrontSource, genus: Option<i64>) -> Result<Outcome> {
    let mut out = String::new();
    let closed = |out: &mut String, name: &str, f: &FrontWord| -> Result<LegInvariants> {
        let inv = classical_invariants(f)?;
        writeln!(out, "front: {}", name).unwrap();
        writeln!(out, "word: {}", f).unwrap();
        writeln!(out, "{}", inv).unwrap();
        Ok(inv)
    };
    match src {
        FrontSource::TwistFront { j } => {
            let inv = closed(&mut out, &format!("twist knot, j = {}", j), &twist_front(*j)?)?;
            bounds_lines(&mut out, &inv, Some(genus.unwrap_or(1)))?;
        }
        FrontSource::Unknot => {
            let inv = closed(&mut out, "unknot", &unknot_front())?;
            bounds_lines(&mut out, &inv, Some(genus.unwrap_or(0)))?;
        }
        FrontSource::QFront { k, companion, iterate } => {
            let f = q_front(*k)?;
            let op = f.operator_invariants()?;
            writeln!(out, "front: operator with twisted bands, k = {}", k).unwrap();
            writeln!(out, "word: {}", f).unwrap();
            writeln!(out, "operator {}", op).unwrap();
            if let Some(c) = companion {
                let mut cur = *c;
                writeln!(out, "companion {}", cur).unwrap();
                for i in 1..=*iterate {
                    let Some(z) = cur.stabilize_to_zero() else {
                        writeln!(out, "refused: the companion has tb < 0, no satellite with tb = 0 exists").unwrap();
                        return Ok(Outcome { text: out, refused: true });
                    };
                    cur = legendrian_satellite(&op, &z)?;
                    writeln!(out, "satellite {}: {}", i, cur).unwrap();
                }
                bounds_lines(&mut out, &cur, genus)?;
            }
        }
        FrontSource::Text { text, endpoints } => match endpoints {
            None => {
                let inv = closed(&mut out, "from file", &parse_front(text)?)?;
                bounds_lines(&mut out, &inv, genus)?;
            }
            Some(e) => {
                let f = parse_operator_front(text, *e)?;
                writeln!(out, "front: operator from file, {} endpoints", e).unwrap();
                writeln!(out, "word: {}", f).unwrap();
                writeln!(out, "operator {}", f.operator_invariants()?).unwrap();
            }
        },
    }
    Ok(Outcome::ok(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    Q,
    R,
}

fn operator(kind: OpKind, k: i64, j: &str) -> Result<OperatorSpec> {
    Ok(match kind {
        OpKind::Q => OperatorSpec::q(k)?,
        OpKind::R => OperatorSpec::r(k, j)?,
    })
}

pub fn robust(kind: OpKind, ks: &[i64], ps: &[u32], j: &str, facts: &FactBase, jobs: usize) -> Result<Outcome> {
    let cells: Vec<(i64, u32)> = ks.iter().flat_map(|&k| ps.iter().map(move |&p| (k, p))).collect();
    let results = par_map(&cells, jobs, |&(k, p)| -> Result<(String, bool)> {
        let op = operator(kind, k, j)?;
        let c = robustness_check(&op, facts, p)?;
        let mut s = format!("== {} cabled by {} ==\n", op.name(), p);
        if p > 1 {
            writeln!(s, "cabled operator: {}", cable_operator(&op, p)?.name()).unwrap();
        }
        s.push_str(&c.to_string());
        Ok((s, c.is_asserted()))
    })?;
    let mut out = String::new();
    let mut asserted = 0;
    for r in results {
        let (s, ok) = r?;
        asserted += usize::from(ok);
        out.push_str(&s);
        out.push('\n');
    }
    writeln!(out, "robust: {} of {} asserted", asserted, cells.len()).unwrap();
    Ok(Outcome { text: out, refused: asserted != cells.len() })
}

pub struct IndependenceParams<'a> {
    pub ks: &'a [i64],
    pub n: usize,
    pub ps: &'a [u32],
    pub m: u32,
    /// Number of `ρ₀(T_{2j})` values in the relation search; at least `m`.
    pub relation_values: u32,
    pub relation_bound: u32,
    pub j: &'a str,
}

pub fn independence(params: &IndependenceParams, facts: &FactBase, jobs: usize) -> Result<Outcome> {
    if params.m == 0 {
        bail!("--m must be positive");
    }
    if params.relation_values < params.m {
        bail!("--relation-values must be at least --m");
    }
    let companions: Vec<KnotExpr> = (1..=params.m as i64).map(|j| KnotExpr::Twist(2 * j)).collect();
    let cfg = IndependenceConfig {
        relation_bound: params.relation_bound,
        evidence_pool: (params.m as i64 + 1..=params.relation_values as i64).map(|j| KnotExpr::Twist(2 * j)).collect(),
        ..IndependenceConfig::default()
    };
    let results = par_map(params.ks, jobs, |&k| -> Result<(String, bool)> {
        let family = cabled_iterate_family(k, params.n, params.ps, &companions, params.j)?;
        let rep = independence_report(&family, facts, &cfg)?;
        let mut s = format!("== family k = {}, depth {}, cables {:?} ==\n", k, params.n, params.ps);
        s.push_str("knots:\n");
        for (i, kn) in rep.knots.iter().enumerate() {
            writeln!(s, "  {}: {}", i, kn).unwrap();
        }
        s.push_str("strong coprimality matrix (members, status, outer resultant):\n");
        for cell in &rep.matrix {
            let status = match cell.status {
                CoprimalityStatus::StronglyCoprime => "strongly coprime".to_string(),
                CoprimalityStatus::NotStronglyCoprime(a, b) => format!("not strongly coprime at ({}, {})", a, b),
                CoprimalityStatus::Unknown => "unknown".to_string(),
            };
            writeln!(
                s,
                "  {} vs {}: {}, {}",
                family[cell.i].label(),
                family[cell.j].label(),
                status,
                fmt_rational(&cell.first_resultant)
            )
            .unwrap();
        }
        let names: Vec<String> = rep.relation_values.iter().map(|k| format!("rho0({})", k)).collect();
        writeln!(s, "relation search over {{{}}}: {}", names.join(", "), match &rep.relation {
            None => "no relation".to_string(),
            Some(r) => format!("relation {:?}", r),
        })
        .unwrap();
        s.push_str(&rep.certificate.to_string());
        Ok((s, rep.certificate.is_asserted()))
    })?;
    let mut out = String::new();
    let mut refused = false;
    for r in results {
        let (s, ok) = r?;
        refused |= !ok;
        out.push_str(&s);
        out.push('\n');
    }
    Ok(Outcome { text: out, refused })
}

pub fn filtration(e: &KnotExpr, facts: &FactBase) -> Result<Outcome> {
    let rep = filtration_certify(e, facts)?;
    let mut out = format!("knot: {}\nlevels: {}\n", e, rep.levels);
    out.push_str(&rep.certificate.to_string());
    Ok(Outcome { text: out, refused: !rep.certificate.is_asserted() })
}

pub fn kauffman(facts: &FactBase) -> Result<Outcome> {
    let rep = kauffman_suite(facts)?;
    let ok = rep.cases.iter().all(|c| c.arf_d_prime == 1 && c.nontriviality.as_ref().map_or(true, |n| n.is_asserted()));
    Ok(Outcome { text: rep.to_string(), refused: !ok })
}
