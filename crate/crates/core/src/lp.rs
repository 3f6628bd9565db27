//! Integer programs for pebbling and for depth reducibility, their LP
//! relaxations, closed-form fractional solutions, and exact feasibility
//! checking. Every number is a `BigRational`; nothing here rounds.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{Dag, NodeId};
use crate::pebbling::{validate, Mode, Pebbling};
use crate::search::{exact_pcc, SearchLimits};

pub type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `2^e` for any integer `e`.
fn pow2(e: i64) -> Q {
    let p = Q::from_integer(BigInt::one() << e.unsigned_abs() as usize);
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

/// `ceil(log2 n)` for `n >= 1`.
pub fn ceil_log2(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Variable {
    pub name: String,
    pub lower: Q,
    pub upper: Option<Q>,
    pub integer: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(usize, Q)>,
    pub relation: Relation,
    pub rhs: Q,
}

/// A minimisation model. Constraints refer to variables by index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LpModel {
    variables: Vec<Variable>,
    index: FxHashMap<String, usize>,
    constraints: Vec<Constraint>,
    objective: Vec<(usize, Q)>,
}

impl LpModel {
    /// Panics on a duplicate name.
    pub fn add_var(&mut self, name: String, lower: Q, upper: Option<Q>, integer: bool) -> usize {
        let id = self.variables.len();
        assert!(self.index.insert(name.clone(), id).is_none(), "duplicate variable {name}");
        self.variables.push(Variable { name, lower, upper, integer });
        id
    }

    pub fn add_constraint(&mut self, name: String, terms: Vec<(usize, Q)>, relation: Relation, rhs: Q) {
        assert!(terms.iter().all(|(v, _)| *v < self.variables.len()), "constraint {name} uses an undeclared variable");
        self.constraints.push(Constraint { name, terms, relation, rhs });
    }

    pub fn set_objective(&mut self, terms: Vec<(usize, Q)>) {
        self.objective = terms;
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[(usize, Q)] {
        &self.objective
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn is_integral(&self) -> bool {
        self.variables.iter().any(|v| v.integer)
    }

    /// Variables whose bounds pin them to 0.
    pub fn zero_fixed(&self) -> usize {
        self.variables.iter().filter(|v| v.lower.is_zero() && v.upper.as_ref().is_some_and(Zero::is_zero)).count()
    }
}

/// `prefix` followed by `_i` for each index. Hot in the model builders,
/// so it avoids the formatting machinery.
fn name(prefix: &str, idx: &[usize]) -> String {
    let mut out = String::with_capacity(prefix.len() + 6 * idx.len());
    out.push_str(prefix);
    let mut buf = [0u8; 20];
    for &i in idx {
        out.push('_');
        let mut k = buf.len();
        let mut x = i;
        loop {
            k -= 1;
            buf[k] = b'0' + (x % 10) as u8;
            x /= 10;
            if x == 0 {
                break;
            }
        }
        out.push_str(std::str::from_utf8(&buf[k..]).expect("ascii digits"));
    }
    out
}

fn xname(v: usize, t: usize) -> String {
    name("x", &[v, t])
}

/// Binary `x_v_t` for `t` in `0..=horizon` (default `n^2`), with `x_v_0`
/// pinned to 0, a covering row per sink, and for every non-source `v` and
/// `t < horizon` the transition row
/// `x_v^{t+1} <= x_v^t + sum_{p in parents(v)} x_p^t / |parents(v)|`.
pub fn build_pebbling_ip(g: &Dag, horizon: Option<usize>) -> LpModel {
    let n = g.n();
    let h = horizon.unwrap_or(n * n).max(1);
    let mut m = LpModel::default();
    for v in 1..=n {
        for t in 0..=h {
            let upper = if t == 0 { q(0) } else { q(1) };
            m.add_var(xname(v, t), q(0), Some(upper), true);
        }
    }
    let id = |v: usize, t: usize| (v - 1) * (h + 1) + t;
    for s in g.sinks() {
        let v = s.get() as usize;
        m.add_constraint(name("sink", &[v]), (0..=h).map(|t| (id(v, t), q(1))).collect(), Relation::Ge, q(1));
    }
    for node in g.nodes() {
        let ps = g.parents(node);
        if ps.is_empty() {
            continue;
        }
        let v = node.get() as usize;
        let share = frac(1, ps.len() as i64);
        for t in 0..h {
            let mut terms = vec![(id(v, t + 1), q(1)), (id(v, t), q(-1))];
            terms.extend(ps.iter().map(|p| (id(p.get() as usize, t), -share.clone())));
            m.add_constraint(name("tr", &[v, t]), terms, Relation::Le, q(0));
        }
    }
    m.set_objective((0..m.variables.len()).map(|i| (i, q(1))).collect());
    m
}

/// Binary `s_v`, continuous `d_u_v` in `[0, d]` for every ordered pair, and
/// `d_w_v - d_w_u + (d+1) s_u + (d+1) s_v >= 1` for every node `w` and edge `(u, v)`.
pub fn build_reducible_ip(g: &Dag, d: usize) -> LpModel {
    let n = g.n();
    let mut m = LpModel::default();
    for v in 1..=n {
        m.add_var(name("s", &[v]), q(0), Some(q(1)), true);
    }
    for u in 1..=n {
        for v in 1..=n {
            m.add_var(name("d", &[u, v]), q(0), Some(q(d as i64)), false);
        }
    }
    let dist = |u: usize, v: usize| n + (u - 1) * n + (v - 1);
    let big = q(d as i64 + 1);
    for w in 1..=n {
        for (u, v) in g.edges() {
            let (u, v) = (u.get() as usize, v.get() as usize);
            let terms = vec![(dist(w, v), q(1)), (dist(w, u), q(-1)), (u - 1, big.clone()), (v - 1, big.clone())];
            m.add_constraint(name("path", &[w, u, v]), terms, Relation::Ge, q(1));
        }
    }
    m.set_objective((0..n).map(|i| (i, q(1))).collect());
    m
}

/// Clears every integrality flag; bounds are kept.
pub fn relax(mut m: LpModel) -> LpModel {
    m.variables.iter_mut().for_each(|v| v.integer = false);
    m
}

/// Exact values by variable name. Names absent from the map read as
/// missing, not as zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LpSolution {
    pub values: FxHashMap<String, Q>,
}

impl LpSolution {
    pub fn get(&self, name: &str) -> Option<&Q> {
        self.values.get(name)
    }

    /// Values as strings such as `"3/4"`, keyed by variable name.
    pub fn to_json(&self) -> Value {
        Value::Object(self.values.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect())
    }

    /// Accepts the `to_json` shape; values may also be JSON integers.
    pub fn from_json(text: &str) -> Result<LpSolution, LpError> {
        let malformed = |what: String| LpError::MalformedSolution(what);
        let raw: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        let Value::Object(map) = raw else {
            return Err(malformed("expected an object of name to value".into()));
        };
        let mut values = FxHashMap::default();
        for (name, v) in map {
            let x = match &v {
                Value::String(s) => {
                    s.trim().parse::<Q>().map_err(|_| malformed(format!("{name}: `{s}` is not a rational")))?
                }
                Value::Number(n) => match n.as_i64() {
                    Some(i) => q(i),
                    None => {
                        return Err(malformed(format!("{name}: {n} is not an integer; write fractions as strings")))
                    }
                },
                other => return Err(malformed(format!("{name}: unexpected {other}"))),
            };
            values.insert(name, x);
        }
        Ok(LpSolution { values })
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("solution has no value for variable {0}")]
    MissingVariable(String),
    #[error("pebbling is illegal for this graph")]
    IllegalPebbling,
    #[error("horizon {horizon} is shorter than the {needed} steps required")]
    HorizonTooShort { horizon: usize, needed: usize },
    #[error("malformed solution: {0}")]
    MalformedSolution(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub objective: Q,
    /// Constraint or bound name with its (negative) slack.
    pub violated: Vec<(String, Q)>,
}

impl FeasibilityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "feasible": self.feasible,
            "objective": self.objective.to_string(),
            "violated": self.violated.iter().map(|(n, s)| json!([n, s.to_string()])).collect::<Vec<_>>(),
        })
    }
}

/// Evaluates every bound, integrality flag and constraint exactly.
pub fn verify_solution(m: &LpModel, s: &LpSolution) -> Result<FeasibilityReport, LpError> {
    let mut vals = Vec::with_capacity(m.variables.len());
    for v in &m.variables {
        vals.push(s.get(&v.name).ok_or_else(|| LpError::MissingVariable(v.name.clone()))?);
    }
    let mut violated = Vec::new();
    for (v, x) in m.variables.iter().zip(&vals) {
        if *x < &v.lower {
            violated.push((format!("lower:{}", v.name), *x - &v.lower));
        }
        if let Some(u) = &v.upper {
            if *x > u {
                violated.push((format!("upper:{}", v.name), u - *x));
            }
        }
        if v.integer && !x.is_integer() {
            violated.push((format!("integer:{}", v.name), -x.fract().abs()));
        }
    }
    for c in &m.constraints {
        let lhs = dot(&c.terms, &vals);
        let slack = match c.relation {
            Relation::Le => &c.rhs - &lhs,
            Relation::Ge => &lhs - &c.rhs,
            Relation::Eq => -(&lhs - &c.rhs).abs(),
        };
        if slack.is_negative() {
            violated.push((c.name.clone(), slack));
        }
    }
    let objective = dot(&m.objective, &vals);
    Ok(FeasibilityReport { feasible: violated.is_empty(), objective, violated })
}

/// `sum a_i x_i`, skipping zero values.
fn dot(terms: &[(usize, Q)], vals: &[&Q]) -> Q {
    let mut acc = Q::zero();
    for (i, a) in terms {
        let x = vals[*i];
        if x.is_zero() {
            continue;
        }
        if x.is_one() {
            acc += a;
        } else {
            acc += a * x;
        }
    }
    acc
}

/// Every `x_v_t` for `t` in `0..=horizon`, set to 0.
fn zero_pebbling_solution(n: usize, horizon: usize) -> Vec<Vec<Q>> {
    vec![vec![Q::zero(); horizon + 1]; n]
}

fn pebbling_solution_from(table: Vec<Vec<Q>>) -> LpSolution {
    let mut values =
        FxHashMap::with_capacity_and_hasher(table.len() * table.first().map_or(0, Vec::len), Default::default());
    for (vi, row) in table.into_iter().enumerate() {
        for (t, x) in row.into_iter().enumerate() {
            values.insert(xname(vi + 1, t), x);
        }
    }
    LpSolution { values }
}

/// Spreads `1/n` over the first `t` nodes at each step `t <= n`, then
/// doubles every node's value each step until it reaches 1.
pub fn fractional_pebbling_solution(g: &Dag, horizon: Option<usize>) -> Result<LpSolution, LpError> {
    let n = g.n();
    let h = horizon.unwrap_or(n * n).max(1);
    let lg = ceil_log2(n);
    if h < n + lg {
        return Err(LpError::HorizonTooShort { horizon: h, needed: n + lg });
    }
    let mut x = zero_pebbling_solution(n, h);
    let share = frac(1, n as i64);
    for t in 1..=n {
        for row in x.iter_mut().take(t) {
            row[t] = share.clone();
        }
    }
    for t in n + 1..=n + lg {
        let val = (pow2((t - n) as i64) * &share).min(q(1));
        for row in x.iter_mut() {
            row[t] = val.clone();
        }
    }
    Ok(pebbling_solution_from(x))
}

/// `(n+1)/2 + sum_{j=1}^{L-1} min(n, 2^j) + n` with `L = ceil(lg n)`; 1 when `n = 1`.
pub fn fractional_pebbling_objective(n: usize) -> Q {
    if n == 1 {
        return q(1);
    }
    let lg = ceil_log2(n);
    let mid: i64 = (1..lg).map(|j| (n as i64).min(1 << j)).sum();
    frac(n as i64 + 1, 2) + q(mid) + q(n as i64)
}

/// Horizon `n`: `x_i^i = 1`, nothing before, and for `t > i` the larger of
/// `1/n` and `2^{2 - dist(i, t+j) - j}` over `j >= 1` with `t + j <= n`
/// reachable from `i`. Feasibility depends on the graph.
pub fn fractional_timed_solution(g: &Dag) -> (LpSolution, FeasibilityReport) {
    let n = g.n();
    let mut x = zero_pebbling_solution(n, n);
    let floor = frac(1, n as i64);
    for i in 1..=n {
        let dist = g.distances_from(NodeId::new(i as u32));
        x[i - 1][i] = q(1);
        for (t, slot) in x[i - 1].iter_mut().enumerate().take(n + 1).skip(i + 1) {
            // 2^{2 - dist - j} is largest at the smallest dist + j
            let best = (t + 1..=n)
                .filter_map(|target| dist[target - 1].map(|dd| dd + (target - t)))
                .min()
                .map(|e| pow2(2 - e as i64));
            *slot = match best {
                Some(b) if b > floor => b,
                _ => floor.clone(),
            };
        }
    }
    let sol = pebbling_solution_from(x);
    let report = verify_solution(&relax(build_pebbling_ip(g, Some(n))), &sol).expect("every variable is set");
    (sol, report)
}

/// `s_v = 1/d` and every `d_u_v = 0`.
pub fn fractional_reducible_solution(g: &Dag, d: usize) -> LpSolution {
    assert!(d >= 1, "the closed form needs d >= 1");
    let n = g.n();
    let mut values = FxHashMap::default();
    for v in 1..=n {
        values.insert(name("s", &[v]), frac(1, d as i64));
        for u in 1..=n {
            values.insert(name("d", &[u, v]), Q::zero());
        }
    }
    LpSolution { values }
}

/// `x_v_t = 1` exactly when `v` is pebbled in round `t`.
pub fn pebbling_to_solution(g: &Dag, p: &Pebbling, horizon: Option<usize>) -> Result<LpSolution, LpError> {
    let h = horizon.unwrap_or(g.n() * g.n()).max(1);
    if !validate(g, p).is_legal() {
        return Err(LpError::IllegalPebbling);
    }
    if p.len() > h {
        return Err(LpError::HorizonTooShort { horizon: h, needed: p.len() });
    }
    let mut x = zero_pebbling_solution(g.n(), h);
    for (t, round) in p.rounds().iter().enumerate() {
        for v in round {
            x[v.index()][t + 1] = q(1);
        }
    }
    Ok(pebbling_solution_from(x))
}

fn lcm_of_denominators<'a>(coeffs: impl Iterator<Item = &'a Q>) -> BigInt {
    coeffs.fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn push_terms(out: &mut String, terms: &[(usize, Q)], scale: &BigInt, names: &[Variable]) {
    if terms.is_empty() {
        out.push_str(" 0");
        return;
    }
    for (k, (i, a)) in terms.iter().enumerate() {
        let c = (a * Q::from_integer(scale.clone())).to_integer();
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        if k > 0 && k % 8 == 0 {
            out.push_str("\n  ");
        }
        if k == 0 && sign == "+" {
            out.push(' ');
        } else {
            let _ = write!(out, " {sign} ");
        }
        if !mag.is_one() {
            let _ = write!(out, "{mag} ");
        }
        out.push_str(&names[*i].name);
    }
}

/// CPLEX LP format. Rows are scaled to integer coefficients; integral
/// models get a `Generals` section.
pub fn emit(m: &LpModel) -> String {
    let mut out = String::from("Minimize\n obj:");
    let obj_scale = lcm_of_denominators(m.objective.iter().map(|(_, a)| a));
    push_terms(&mut out, &m.objective, &obj_scale, &m.variables);
    out.push_str("\nSubject To\n");
    for c in &m.constraints {
        let scale = lcm_of_denominators(c.terms.iter().map(|(_, a)| a).chain([&c.rhs]));
        let _ = write!(out, " {}:", c.name);
        push_terms(&mut out, &c.terms, &scale, &m.variables);
        let rhs = (&c.rhs * Q::from_integer(scale)).to_integer();
        let _ = writeln!(out, " {} {rhs}", c.relation.symbol());
    }
    out.push_str("Bounds\n");
    for v in &m.variables {
        match &v.upper {
            Some(u) if *u == v.lower => {
                let _ = writeln!(out, " {} = {}", v.name, u);
            }
            Some(u) => {
                let _ = writeln!(out, " {} <= {} <= {}", v.lower, v.name, u);
            }
            None => {
                let _ = writeln!(out, " {} >= {}", v.name, v.lower);
            }
        }
    }
    if m.is_integral() {
        out.push_str("Generals\n");
        for v in m.variables.iter().filter(|v| v.integer) {
            let _ = writeln!(out, " {}", v.name);
        }
    }
    out.push_str("End\n");
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct GapReport {
    pub n: usize,
    pub fractional: Q,
    pub pcc: u64,
    /// False when `pcc` is only the trivial upper bound.
    pub pcc_proven: bool,
    /// `pcc / fractional`. Can fall below 1 because the closed-form
    /// solution is feasible but not optimal for the relaxation.
    pub ratio: Q,
    /// `pcc / min(fractional, pcc)`: a lower bound on the integrality gap,
    /// valid because the relaxation optimum is at most both values.
    pub gap_lower_bound: Q,
}

impl GapReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "fractional": self.fractional.to_string(),
            "pcc": self.pcc,
            "pcc_proven": self.pcc_proven,
            "ratio": self.ratio.to_string(),
            "gap_lower_bound": self.gap_lower_bound.to_string(),
        })
    }
}

pub fn gap_report(g: &Dag, limits: &SearchLimits) -> GapReport {
    let n = g.n();
    let lg = ceil_log2(n);
    let sol = fractional_pebbling_solution(g, Some((n + lg).max(1))).expect("horizon fits");
    let fractional = verify_solution(&relax(build_pebbling_ip(g, Some((n + lg).max(1)))), &sol)
        .expect("every variable is set")
        .objective;
    let (pcc, pcc_proven) = match exact_pcc(g, Mode::Parallel, limits) {
        Ok(r) => (r.optimum, r.proven),
        Err(_) => ((n * (n + 1) / 2) as u64, false),
    };
    let pq = q(pcc as i64);
    let ratio = &pq / &fractional;
    let gap_lower_bound = &pq / fractional.clone().min(pq.clone());
    GapReport { n, fractional, pcc, pcc_proven, ratio, gap_lower_bound }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::chain;
    use crate::pebbling::trivial_pebbling;

    #[test]
    fn pebbling_ip_counts_for_short_chain() {
        let m = build_pebbling_ip(&chain(2), Some(4));
        assert_eq!(m.variables().len(), 10);
        assert_eq!(m.zero_fixed(), 2);
        assert_eq!(m.constraints().iter().filter(|c| c.name.starts_with("sink")).count(), 1);
        assert_eq!(m.constraints().iter().filter(|c| c.name.starts_with("tr")).count(), 4);
        assert!(build_pebbling_ip(&chain(1), None).constraints().iter().all(|c| !c.name.starts_with("tr")));
    }

    #[test]
    fn reducible_ip_counts() {
        let m = build_reducible_ip(&chain(3), 1);
        assert_eq!(m.variables().len(), 12);
        assert_eq!(m.constraints().len(), 6);
        let c = &m.constraints()[0];
        assert_eq!(c.terms[2].1, q(2));
    }

    #[test]
    fn thm6_closed_form() {
        assert_eq!(fractional_pebbling_objective(4), frac(17, 2));
        assert_eq!(fractional_pebbling_objective(1), q(1));
        for n in 1..=9 {
            let g = chain(n);
            let sol = fractional_pebbling_solution(&g, None).unwrap();
            let r = verify_solution(&relax(build_pebbling_ip(&g, None)), &sol).unwrap();
            assert!(r.feasible, "{n}: {:?}", r.violated);
            assert_eq!(r.objective, fractional_pebbling_objective(n));
        }
    }

    #[test]
    fn fractional_values_fail_integral_model() {
        let g = chain(4);
        let sol = fractional_pebbling_solution(&g, None).unwrap();
        let r = verify_solution(&build_pebbling_ip(&g, None), &sol).unwrap();
        assert!(!r.feasible);
        assert!(r.violated.iter().all(|(n, _)| n.starts_with("integer:")));
    }

    #[test]
    fn negative_value_is_reported() {
        let g = chain(2);
        let mut sol = pebbling_to_solution(&g, &trivial_pebbling(&g), Some(4)).unwrap();
        sol.values.insert("x_1_3".into(), q(-1));
        let r = verify_solution(&build_pebbling_ip(&g, Some(4)), &sol).unwrap();
        assert!(r.violated.iter().any(|(n, _)| n == "lower:x_1_3"));
        sol.values.remove("x_1_3");
        assert_eq!(
            verify_solution(&build_pebbling_ip(&g, Some(4)), &sol),
            Err(LpError::MissingVariable("x_1_3".into()))
        );
    }

    #[test]
    fn embedding_matches_cost() {
        let g = chain(3);
        let sol = pebbling_to_solution(&g, &trivial_pebbling(&g), None).unwrap();
        let r = verify_solution(&build_pebbling_ip(&g, None), &sol).unwrap();
        assert!(r.feasible);
        assert_eq!(r.objective, q(6));
        let bad = Pebbling::from_labels(Mode::Parallel, &[&[2]]);
        assert_eq!(pebbling_to_solution(&g, &bad, None), Err(LpError::IllegalPebbling));
    }

    #[test]
    fn reducible_closed_form() {
        let g = chain(6);
        let m = relax(build_reducible_ip(&g, 3));
        let r = verify_solution(&m, &fractional_reducible_solution(&g, 3)).unwrap();
        assert!(r.feasible);
        assert_eq!(r.objective, q(2));
    }

    #[test]
    fn timed_solution_on_chain() {
        let g = chain(8);
        let (sol, report) = fractional_timed_solution(&g);
        // a direct parent of the next node holds a whole pebble
        assert_eq!(sol.get("x_3_3"), Some(&q(1)));
        // node 5 is two steps from node 3
        assert_eq!(sol.get("x_3_4"), Some(&frac(1, 2)));
        assert!(report.feasible, "{:?}", report.violated);
    }

    #[test]
    fn emitted_text_shape() {
        let text = emit(&build_pebbling_ip(&chain(2), Some(2)));
        assert!(text.starts_with("Minimize\n"));
        assert!(text.contains("\nBounds\n x_1_0 = 0\n"));
        assert!(text.contains("Generals\n"));
        assert!(text.contains(" tr_2_0: x_2_1 - x_2_0 - x_1_0 <= 0\n"));
        let relaxed = emit(&relax(build_pebbling_ip(&chain(2), Some(2))));
        assert!(!relaxed.contains("Generals"));
        assert!(relaxed.ends_with("End\n"));
    }

    #[test]
    fn fractional_rows_are_scaled() {
        let g = crate::graph::pyramid(2);
        let text = emit(&build_pebbling_ip(&g, Some(1)));
        assert!(text.contains(" tr_3_0: 2 x_3_1 - 2 x_3_0 - x_1_0 - x_2_0 <= 0\n"), "{text}");
    }

    #[test]
    fn gap_on_chain() {
        let r = gap_report(&chain(8), &SearchLimits::default());
        assert_eq!(r.pcc, 8);
        assert!(r.pcc_proven);
        assert!(r.fractional <= q(32));
        assert!(r.gap_lower_bound >= q(1));
    }

    #[test]
    fn solution_json_round_trip() {
        let sol = fractional_pebbling_solution(&chain(3), None).unwrap();
        let text = sol.to_json().to_string();
        assert_eq!(LpSolution::from_json(&text).unwrap(), sol);
        let mixed = LpSolution::from_json(r#"{"a": 2, "b": "-3/6"}"#).unwrap();
        assert_eq!(mixed.get("b"), Some(&frac(-1, 2)));
        assert_eq!(mixed.get("a"), Some(&q(2)));
        assert!(LpSolution::from_json(r#"{"a": 0.5}"#).is_err());
        assert!(LpSolution::from_json(r#"[1]"#).is_err());
    }
}
