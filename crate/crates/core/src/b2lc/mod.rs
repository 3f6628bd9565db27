//! Bounded 2-Linear Covering instances, their exhaustive decision
//! procedures, and the 3-PARTITION oracle that feeds them.
//!
//! An instance is a list of difference equations `x_alpha + c = x_beta`
//! over `n_vars` variables and a budget of `m` assignments. It is a yes
//! instance when the equations can be split into at most `m` groups that
//! are each simultaneously satisfiable by nonnegative integers. Only the
//! differences are constrained, so shifting every connected component of a
//! group's constraint graph down to 0 always yields a nonnegative solution.

mod potential;

pub use potential::PotentialDsu;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on `m^k` for [`solve_b2lc`].
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 26;

/// Default cap on `n` for [`solve_3partition`].
pub const DEFAULT_PARTITION_CAP: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum B2lcError {
    #[error("variable index {index} outside 1..={n_vars} in equation {equation}")]
    VariableOutOfRange { equation: usize, index: usize, n_vars: usize },
    #[error("equation {equation} relates x{var} to itself")]
    SelfEquation { equation: usize, var: usize },
    #[error("an instance needs at least one equation")]
    NoEquations,
    #[error("assignment budget m must be at least 1")]
    ZeroBudget,
    #[error("enumeration of {size} candidates exceeds the cap {cap}")]
    TooLarge { size: u128, cap: u128 },
    #[error("3-PARTITION needs exactly 3n elements, got {got} for n = {n}")]
    WrongElementCount { got: usize, n: usize },
    #[error("3-PARTITION elements must be positive")]
    NonPositiveElement,
}

/// `x_alpha + c = x_beta`, with 1-based variable indices.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub alpha: usize,
    pub c: u64,
    pub beta: usize,
}

impl Equation {
    pub fn new(alpha: usize, c: u64, beta: usize) -> Self {
        Equation { alpha, c, beta }
    }

    pub fn holds(&self, values: &[u64]) -> bool {
        values[self.alpha - 1] + self.c == values[self.beta - 1]
    }
}

impl Serialize for Equation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.alpha, self.c, self.beta).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Equation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (alpha, c, beta) = <(usize, u64, usize)>::deserialize(d)?;
        Ok(Equation { alpha, c, beta })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct B2lcInstance {
    n_vars: usize,
    m: usize,
    equations: Vec<Equation>,
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    n_vars: usize,
    m: usize,
    equations: Vec<Equation>,
}

impl TryFrom<RawInstance> for B2lcInstance {
    type Error = B2lcError;

    fn try_from(raw: RawInstance) -> Result<Self, Self::Error> {
        B2lcInstance::new(raw.n_vars, raw.m, raw.equations)
    }
}

impl From<B2lcInstance> for RawInstance {
    fn from(inst: B2lcInstance) -> Self {
        RawInstance { n_vars: inst.n_vars, m: inst.m, equations: inst.equations }
    }
}

impl B2lcInstance {
    /// Offsets of 0 are accepted, and so is `m > k` (see [`Self::warnings`]).
    pub fn new(n_vars: usize, m: usize, equations: Vec<Equation>) -> Result<Self, B2lcError> {
        if equations.is_empty() {
            return Err(B2lcError::NoEquations);
        }
        if m == 0 {
            return Err(B2lcError::ZeroBudget);
        }
        for (i, e) in equations.iter().enumerate() {
            for index in [e.alpha, e.beta] {
                if index == 0 || index > n_vars {
                    return Err(B2lcError::VariableOutOfRange { equation: i + 1, index, n_vars });
                }
            }
            if e.alpha == e.beta {
                return Err(B2lcError::SelfEquation { equation: i + 1, var: e.alpha });
            }
        }
        Ok(B2lcInstance { n_vars, m, equations })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn with_budget(&self, m: usize) -> Result<Self, B2lcError> {
        B2lcInstance::new(self.n_vars, m, self.equations.clone())
    }

    /// Number of equations.
    pub fn k(&self) -> usize {
        self.equations.len()
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// `c`: the sum of all offsets.
    pub fn total_offset(&self) -> u64 {
        self.equations.iter().map(|e| e.c).sum()
    }

    /// Non-fatal remarks about the instance.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.m > self.k() {
            out.push(format!("budget m = {} exceeds k = {}; the instance is trivially yes", self.m, self.k()));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance json is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witness has {got} group labels for {k} equations")]
    GroupCount { got: usize, k: usize },
    #[error("witness has {got} assignments, expected {m}")]
    AssignmentCount { got: usize, m: usize },
    #[error("assignment {assignment} has {got} values, expected {n_vars}")]
    AssignmentWidth { assignment: usize, got: usize, n_vars: usize },
    #[error("equation {equation} is assigned to group {group}, outside 1..={m}")]
    GroupOutOfRange { equation: usize, group: usize, m: usize },
    #[error("equation {equation} does not hold under assignment {group}")]
    Unsatisfied { equation: usize, group: usize },
}

/// `m` assignments plus, for each equation, the 1-based assignment that satisfies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct B2lcWitness {
    pub group_of: Vec<usize>,
    pub values: Vec<Vec<u64>>,
}

impl B2lcWitness {
    pub fn check(&self, inst: &B2lcInstance) -> Result<(), WitnessError> {
        if self.group_of.len() != inst.k() {
            return Err(WitnessError::GroupCount { got: self.group_of.len(), k: inst.k() });
        }
        if self.values.len() != inst.m() {
            return Err(WitnessError::AssignmentCount { got: self.values.len(), m: inst.m() });
        }
        for (y, row) in self.values.iter().enumerate() {
            if row.len() != inst.n_vars() {
                return Err(WitnessError::AssignmentWidth { assignment: y + 1, got: row.len(), n_vars: inst.n_vars() });
            }
        }
        for (i, (e, &g)) in inst.equations().iter().zip(&self.group_of).enumerate() {
            if g == 0 || g > inst.m() {
                return Err(WitnessError::GroupOutOfRange { equation: i + 1, group: g, m: inst.m() });
            }
            if !e.holds(&self.values[g - 1]) {
                return Err(WitnessError::Unsatisfied { equation: i + 1, group: g });
            }
        }
        Ok(())
    }
}

/// Whether the equations with the given (0-based) indices can hold at once.
/// On success returns the canonical solution: every connected component
/// shifted so its minimum is 0, unconstrained variables at 0.
pub fn group_consistent(inst: &B2lcInstance, group: &[usize]) -> Option<Vec<u64>> {
    let mut dsu = PotentialDsu::new(inst.n_vars());
    for &i in group {
        let e = inst.equations()[i];
        if !dsu.relate(e.alpha - 1, e.beta - 1, e.c as i64) {
            return None;
        }
    }
    Some(dsu.canonical_values())
}

/// Exhaustive decision over all ways to split the equations into `m`
/// groups. Fails with `TooLarge` when `m^k` exceeds `cap`, except that
/// `m >= k` is answered directly.
pub fn solve_b2lc(inst: &B2lcInstance, cap: u64) -> Result<Option<B2lcWitness>, B2lcError> {
    let k = inst.k();
    let m = inst.m();
    if m >= k {
        return Ok(Some(one_equation_per_assignment(inst)));
    }
    let size = (m as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(B2lcError::TooLarge { size, cap: cap as u128 });
    }
    let mut search = CoverSearch { inst, groups: vec![PotentialDsu::new(inst.n_vars()); m], group_of: vec![0; k] };
    if !search.assign(0, 0) {
        return Ok(None);
    }
    let values = search.groups.iter().map(PotentialDsu::canonical_values).collect();
    Ok(Some(B2lcWitness { group_of: search.group_of.iter().map(|g| g + 1).collect(), values }))
}

fn one_equation_per_assignment(inst: &B2lcInstance) -> B2lcWitness {
    let mut values = vec![vec![0u64; inst.n_vars()]; inst.m()];
    for (i, e) in inst.equations().iter().enumerate() {
        values[i][e.beta - 1] = e.c;
    }
    B2lcWitness { group_of: (1..=inst.k()).collect(), values }
}

struct CoverSearch<'a> {
    inst: &'a B2lcInstance,
    groups: Vec<PotentialDsu>,
    group_of: Vec<usize>,
}

impl CoverSearch<'_> {
    /// Places equation `i`; groups `0..used` are non-empty so far. New
    /// groups are opened in index order, which skips relabelled duplicates.
    fn assign(&mut self, i: usize, used: usize) -> bool {
        if i == self.inst.k() {
            return true;
        }
        let e = self.inst.equations()[i];
        let limit = (used + 1).min(self.groups.len());
        for y in 0..limit {
            let cp = self.groups[y].checkpoint();
            if self.groups[y].relate(e.alpha - 1, e.beta - 1, e.c as i64) {
                self.group_of[i] = y;
                if self.assign(i + 1, used.max(y + 1)) {
                    return true;
                }
            }
            self.groups[y].rollback(cp);
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePartitionInstance {
    elements: Vec<u64>,
    n: usize,
}

impl ThreePartitionInstance {
    pub fn new(elements: Vec<u64>, n: usize) -> Result<Self, B2lcError> {
        if elements.len() != 3 * n || n == 0 {
            return Err(B2lcError::WrongElementCount { got: elements.len(), n });
        }
        if elements.contains(&0) {
            return Err(B2lcError::NonPositiveElement);
        }
        Ok(ThreePartitionInstance { elements, n })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `T`, the sum of all elements.
    pub fn total(&self) -> u64 {
        self.elements.iter().sum()
    }

    /// Whether every element lies strictly between `T/(4n)` and `T/(2n)`.
    pub fn promise_holds(&self) -> bool {
        let t = self.total();
        let n = self.n as u64;
        self.elements.iter().all(|&x| t < 4 * n * x && 2 * n * x < t)
    }
}

/// Exhaustive search for a split into `n` triples of sum `T/n`.
pub fn solve_3partition(inst: &ThreePartitionInstance, cap: usize) -> Result<Option<Vec<[u64; 3]>>, B2lcError> {
    let n = inst.n();
    if n > cap {
        return Err(B2lcError::TooLarge { size: n as u128, cap: cap as u128 });
    }
    let total = inst.total();
    if !total.is_multiple_of(n as u64) {
        return Ok(None);
    }
    let target = total / n as u64;
    let mut items = inst.elements().to_vec();
    items.sort_unstable_by(|a, b| b.cmp(a));
    let mut buckets: Vec<Vec<u64>> = vec![Vec::with_capacity(3); n];
    let mut sums = vec![0u64; n];
    if fill_triples(&items, 0, target, &mut buckets, &mut sums) {
        Ok(Some(buckets.into_iter().map(|b| [b[0], b[1], b[2]]).collect()))
    } else {
        Ok(None)
    }
}

fn fill_triples(items: &[u64], i: usize, target: u64, buckets: &mut [Vec<u64>], sums: &mut [u64]) -> bool {
    if i == items.len() {
        return sums.iter().all(|&s| s == target);
    }
    let x = items[i];
    for b in 0..buckets.len() {
        if buckets[b].len() == 3 || sums[b] + x > target {
            continue;
        }
        // identical bucket states are interchangeable
        if (0..b).any(|a| buckets[a].len() == buckets[b].len() && sums[a] == sums[b]) {
            continue;
        }
        buckets[b].push(x);
        sums[b] += x;
        if fill_triples(items, i + 1, target, buckets, sums) {
            return true;
        }
        buckets[b].pop();
        sums[b] -= x;
    }
    false
}
