//! Brute-force subalgebra lattices over GF(p).

mod fp;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::algebra::{ChainKind, ChainRecord, LieAlgebra, StepCertificate};
use crate::error::{Error, Result};
use crate::linalg::Subspace;

pub(crate) use fp::FpAlgebra;
use fp::{combinations, free_positions, FpSpace};

/// Limits on lattice enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBudget {
    pub max_subspace_count: u64,
    pub max_node_count: u64,
    pub time_hint: Option<Duration>,
}

impl Default for LatticeBudget {
    fn default() -> Self {
        LatticeBudget {
            max_subspace_count: 250_000,
            max_node_count: 4_000,
            time_hint: None,
        }
    }
}

impl LatticeBudget {
    /// Parses `N` (subspace limit) or `subspaces=N,nodes=M,seconds=S`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut b = LatticeBudget::default();
        let bad = |m: &str| Error::parse("budget", m);
        let text = text.trim();
        if let Ok(n) = text.parse::<u64>() {
            b.max_subspace_count = n;
            return Ok(b);
        }
        for part in text.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let v: u64 = v.trim().parse().map_err(|_| bad("expected an integer"))?;
            match k.trim() {
                "subspaces" => b.max_subspace_count = v,
                "nodes" => b.max_node_count = v,
                "seconds" => b.time_hint = Some(Duration::from_secs(v)),
                other => return Err(bad(&format!("unknown budget key '{other}'"))),
            }
        }
        Ok(b)
    }
}

/// Number of subspaces of GF(p)^n, all dimensions together.
pub fn subspace_count(p: u32, n: usize) -> u64 {
    (0..=n)
        .map(|k| {
            combinations(n, k)
                .iter()
                .map(|piv| (p as u64).saturating_pow(free_positions(n, piv).len() as u32))
                .fold(0u64, u64::saturating_add)
        })
        .fold(0u64, u64::saturating_add)
}

#[derive(Clone, Debug)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(w * 64 + t)
            })
        })
    }
    fn first_common(&self, other: &BitSet) -> Option<usize> {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .find(|(_, (a, b))| *a & *b != 0)
            .map(|(w, (a, b))| w * 64 + (a & b).trailing_zeros() as usize)
    }
    fn last_common(&self, other: &BitSet) -> Option<usize> {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .rev()
            .find(|(_, (a, b))| *a & *b != 0)
            .map(|(w, (a, b))| w * 64 + 63 - (a & b).leading_zeros() as usize)
    }
}

/// All subalgebras of an algebra over GF(p), ordered by dimension and then
/// by echelon basis, with containment, covers and join/meet tables.
pub struct SubalgebraLattice {
    alg: LieAlgebra,
    fa: FpAlgebra,
    spaces: Vec<FpSpace>,
    nodes: Vec<Subspace>,
    index: HashMap<FpSpace, usize>,
    // up[i] = { j : node i ⊆ node j }, down[i] = { j : node j ⊆ node i }
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    ideal: Vec<bool>,
    upper_covers: Vec<Vec<usize>>,
    subspaces_scanned: u64,
    tables: OnceLock<(Vec<u32>, Vec<u32>)>,
    modular: OnceLock<Vec<bool>>,
    quasi: OnceLock<Vec<bool>>,
}

impl std::fmt::Debug for SubalgebraLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SubalgebraLattice({} nodes over {:?})", self.len(), self.alg)
    }
}

fn enumerate_pattern(fa: &FpAlgebra, pivots: &[usize], deadline: Option<Instant>, stop: &AtomicBool) -> Vec<FpSpace> {
    let n = fa.n;
    let p = fa.p;
    let free = free_positions(n, pivots);
    let k = pivots.len();
    let mut rows = vec![vec![0u32; n]; k];
    for (r, &c) in pivots.iter().enumerate() {
        rows[r][c] = 1;
    }
    let mut digits = vec![0u32; free.len()];
    let mut out = Vec::new();
    let mut counter: u64 = 0;
    loop {
        counter += 1;
        if counter % 4096 == 0 {
            if stop.load(Ordering::Relaxed) {
                return out;
            }
            if deadline.is_some_and(|d| Instant::now() > d) {
                stop.store(true, Ordering::Relaxed);
                return out;
            }
        }
        let space = FpSpace {
            rows: rows.clone(),
            pivots: pivots.to_vec(),
        };
        if fa.is_subalgebra(&space) {
            out.push(space);
        }
        // odometer over the free entries
        let mut i = 0;
        loop {
            if i == free.len() {
                return out;
            }
            digits[i] += 1;
            let (r, c) = free[i];
            if digits[i] < p {
                rows[r][c] = digits[i];
                break;
            }
            digits[i] = 0;
            rows[r][c] = 0;
            i += 1;
        }
    }
}

impl SubalgebraLattice {
    pub fn enumerate(alg: &LieAlgebra, budget: &LatticeBudget) -> Result<Self> {
        let fa = FpAlgebra::new(alg).ok_or_else(|| Error::UnsupportedField(alg.field().to_string()))?;
        let n = alg.dim();
        let total = subspace_count(fa.p, n);
        if total > budget.max_subspace_count {
            return Err(Error::BudgetExceeded {
                what: "subspaces",
                count: total,
                limit: budget.max_subspace_count,
            });
        }
        let patterns: Vec<Vec<usize>> = (0..=n).flat_map(|k| combinations(n, k)).collect();
        let deadline = budget.time_hint.map(|t| Instant::now() + t);
        let stop = AtomicBool::new(false);
        let found: Vec<Vec<FpSpace>> = patterns
            .par_iter()
            .map(|piv| enumerate_pattern(&fa, piv, deadline, &stop))
            .collect();
        if stop.load(Ordering::Relaxed) {
            let limit = budget.time_hint.map_or(0, |t| t.as_secs());
            return Err(Error::BudgetExceeded {
                what: "seconds",
                count: limit + 1,
                limit,
            });
        }
        let mut spaces: Vec<FpSpace> = found.into_iter().flatten().collect();
        if spaces.len() as u64 > budget.max_node_count {
            return Err(Error::BudgetExceeded {
                what: "nodes",
                count: spaces.len() as u64,
                limit: budget.max_node_count,
            });
        }
        spaces.sort_by(|a, b| (a.rows.len(), &a.rows).cmp(&(b.rows.len(), &b.rows)));
        Ok(Self::build(alg.clone(), fa, spaces, total))
    }

    fn build(alg: LieAlgebra, fa: FpAlgebra, spaces: Vec<FpSpace>, scanned: u64) -> Self {
        let count = spaces.len();
        let index: HashMap<FpSpace, usize> = spaces.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let up: Vec<BitSet> = (0..count)
            .into_par_iter()
            .map(|i| {
                let mut b = BitSet::new(count);
                for (j, s) in spaces.iter().enumerate().skip(i) {
                    if fa.contains(s, &spaces[i]) {
                        b.set(j);
                    }
                }
                b
            })
            .collect();
        let mut down = vec![BitSet::new(count); count];
        for (i, u) in up.iter().enumerate() {
            for j in u.iter() {
                down[j].set(i);
            }
        }
        let full = fa.span((0..fa.n).map(|i| {
            let mut v = vec![0u32; fa.n];
            v[i] = 1;
            v
        }));
        let ideal: Vec<bool> = spaces.par_iter().map(|s| fa.normalizes(&full, s)).collect();
        let upper_covers: Vec<Vec<usize>> = (0..count)
            .into_par_iter()
            .map(|i| {
                up[i]
                    .iter()
                    .filter(|&j| j != i && down[j].iter().filter(|&k| up[i].get(k)).count() == 2)
                    .collect()
            })
            .collect();
        let nodes = spaces.iter().map(|s| fa.to_subspace(s)).collect();
        SubalgebraLattice {
            alg,
            fa,
            spaces,
            nodes,
            index,
            up,
            down,
            ideal,
            upper_covers,
            subspaces_scanned: scanned,
            tables: OnceLock::new(),
            modular: OnceLock::new(),
            quasi: OnceLock::new(),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn subspaces_scanned(&self) -> u64 {
        self.subspaces_scanned
    }

    pub fn nodes(&self) -> &[Subspace] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Subspace {
        &self.nodes[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(&self.fa.from_subspace(s)).copied()
    }

    /// Node `i` is contained in node `j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].get(j)
    }

    pub fn is_ideal(&self, i: usize) -> bool {
        self.ideal[i]
    }

    pub fn ideal_flags(&self) -> &[bool] {
        &self.ideal
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    /// Co-atoms, i.e. the maximal subalgebras.
    pub fn maximal_subalgebras(&self) -> Vec<usize> {
        let top = self.top();
        (0..top).filter(|&i| self.upper_covers[i] == [top]).collect()
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        i != self.top() && self.upper_covers[i] == [self.top()]
    }

    fn tables(&self) -> &(Vec<u32>, Vec<u32>) {
        self.tables.get_or_init(|| {
            let n = self.len();
            let rows: Vec<(Vec<u32>, Vec<u32>)> = (0..n)
                .into_par_iter()
                .map(|i| {
                    let join = (0..n).map(|j| self.up[i].first_common(&self.up[j]).unwrap() as u32).collect();
                    let meet = (0..n).map(|j| self.down[i].last_common(&self.down[j]).unwrap() as u32).collect();
                    (join, meet)
                })
                .collect();
            let mut join = Vec::with_capacity(n * n);
            let mut meet = Vec::with_capacity(n * n);
            for (j, m) in rows {
                join.extend(j);
                meet.extend(m);
            }
            (join, meet)
        })
    }

    /// Subalgebra generated by two nodes.
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.tables().0[i * self.len() + j] as usize
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.tables().1[i * self.len() + j] as usize
    }

    /// Largest ideal of `L` inside node `i`.
    pub fn core(&self, i: usize) -> usize {
        self.down[i].iter().filter(|&k| self.ideal[k]).last().unwrap_or(0)
    }

    fn is_modular_node(&self, u: usize) -> bool {
        if self.ideal[u] {
            return true;
        }
        let n = self.len();
        let (join, meet) = self.tables();
        let j = |a: usize, b: usize| join[a * n + b] as usize;
        let m = |a: usize, b: usize| meet[a * n + b] as usize;
        for c in 0..n {
            for b in self.down[c].iter() {
                if m(j(u, b), c) != j(b, m(u, c)) {
                    return false;
                }
            }
        }
        for c in self.up[u].iter() {
            for b in 0..n {
                if m(j(u, b), c) != j(m(b, c), u) {
                    return false;
                }
            }
        }
        true
    }

    pub fn modular_flags(&self) -> &[bool] {
        self.modular.get_or_init(|| {
            self.tables();
            (0..self.len()).into_par_iter().map(|u| self.is_modular_node(u)).collect()
        })
    }

    pub fn quasi_ideal_flags(&self) -> &[bool] {
        self.quasi
            .get_or_init(|| self.spaces.par_iter().map(|s| self.fa.is_quasi_ideal(s)).collect())
    }

    /// Longest chain from the bottom to the top through flagged nodes.
    fn longest_flagged_chain(&self, flag: impl Fn(usize) -> bool) -> Vec<usize> {
        let n = self.len();
        let mut best: Vec<Option<(usize, usize)>> = vec![None; n];
        best[0] = Some((0, 0));
        for j in 1..n {
            if !flag(j) {
                continue;
            }
            best[j] = self.down[j]
                .iter()
                .filter(|&i| i != j)
                .filter_map(|i| best[i].map(|(len, _)| (len + 1, i)))
                .max_by_key(|&(len, i)| (len, std::cmp::Reverse(i)));
        }
        let mut chain = vec![self.top()];
        while let Some(&last) = chain.last() {
            if last == 0 {
                break;
            }
            chain.push(best[last].expect("top is reachable").1);
        }
        chain.reverse();
        chain
    }

    fn record(&self, kind: ChainKind, idx: &[usize], cert: impl Fn(usize, usize) -> StepCertificate) -> ChainRecord {
        let members = idx.iter().map(|&i| self.nodes[i].clone()).collect();
        let certs = idx.windows(2).map(|w| cert(w[0], w[1])).collect();
        ChainRecord::new(kind, members, certs).expect("lattice chains are strict")
    }

    /// Chief series by greedy ascent through minimal ideals over the current
    /// term; `reverse` flips the tie order.
    pub fn chief_series(&self, reverse: bool) -> ChainRecord {
        let mut cur = 0;
        let mut idx = vec![0];
        while cur != self.top() {
            let above: Vec<usize> = self.up[cur].iter().filter(|&k| k != cur && self.ideal[k]).collect();
            let minimal = above
                .iter()
                .copied()
                .filter(|&k| !above.iter().any(|&o| o != k && self.leq(o, k)));
            cur = if reverse { minimal.last() } else { minimal.min() }.expect("top is an ideal");
            idx.push(cur);
        }
        self.record(ChainKind::Chief, &idx, |_, _| StepCertificate::IdealStep)
    }

    /// `ℓ(L)`, the chief length.
    pub fn ell(&self) -> usize {
        self.ideal_chain_length(self.top(), 0, self.top())
    }

    /// Longest chain between `lo` and `hi` of nodes that are ideals of node
    /// `x`. With `lo` an ideal of `x`, this is `il_{x/lo}(hi/lo)`.
    pub fn ideal_chain_length(&self, x: usize, lo: usize, hi: usize) -> usize {
        let xs = &self.spaces[x];
        let ok: Vec<bool> = (0..self.len())
            .map(|k| self.leq(lo, k) && self.leq(k, hi) && self.fa.normalizes(xs, &self.spaces[k]))
            .collect();
        let mut best: Vec<Option<usize>> = vec![None; self.len()];
        best[lo] = Some(0);
        for j in self.up[lo].iter() {
            if j == lo || !ok[j] {
                continue;
            }
            best[j] = self.down[j].iter().filter(|&i| i != j).filter_map(|i| best[i]).max().map(|v| v + 1);
        }
        best[hi].unwrap_or(0)
    }

    /// Shortest maximal chain (each step a cover), found breadth-first.
    pub fn minmax(&self) -> ChainRecord {
        let n = self.len();
        let mut prev = vec![usize::MAX; n];
        let mut queue = VecDeque::from([0usize]);
        prev[0] = 0;
        while let Some(i) = queue.pop_front() {
            if i == self.top() {
                break;
            }
            for &j in &self.upper_covers[i] {
                if prev[j] == usize::MAX {
                    prev[j] = i;
                    queue.push_back(j);
                }
            }
        }
        let mut idx = vec![self.top()];
        while *idx.last().unwrap() != 0 {
            idx.push(prev[*idx.last().unwrap()]);
        }
        idx.reverse();
        self.record(ChainKind::Maximal, &idx, |_, _| StepCertificate::BruteMaximal)
    }

    pub fn modl(&self) -> ChainRecord {
        let flags = self.modular_flags();
        let idx = self.longest_flagged_chain(|k| flags[k]);
        self.record(ChainKind::Modular, &idx, |_, b| self.step_cert(b))
    }

    pub fn qil(&self) -> ChainRecord {
        let flags = self.quasi_ideal_flags();
        let idx = self.longest_flagged_chain(|k| flags[k]);
        self.record(ChainKind::Quasiideal, &idx, |_, b| self.step_cert(b))
    }

    fn step_cert(&self, b: usize) -> StepCertificate {
        if self.ideal[b] {
            StepCertificate::IdealStep
        } else {
            StepCertificate::BruteMaximal
        }
    }

    /// Frattini ideal: core of the intersection of the maximal subalgebras.
    pub fn frattini(&self) -> Subspace {
        let meet = self
            .maximal_subalgebras()
            .into_iter()
            .fold(self.top(), |acc, m| self.down[acc].last_common(&self.down[m]).unwrap());
        self.nodes[self.core(meet)].clone()
    }

    /// Graphviz rendering; nodes are labelled `dim:index` and styled by the
    /// requested flags (`ideal`, `modular`, `quasiideal`).
    pub fn to_dot(&self, flags: &[&str]) -> String {
        let mut out = String::from("digraph subalgebras {\n  rankdir=BT;\n  node [shape=ellipse];\n");
        let modular = flags.contains(&"modular").then(|| self.modular_flags());
        let quasi = flags.contains(&"quasiideal").then(|| self.quasi_ideal_flags());
        let want_ideal = flags.contains(&"ideal");
        for i in 0..self.len() {
            let mut style = Vec::new();
            let mut tags = Vec::new();
            if want_ideal && self.ideal[i] {
                style.push("penwidth=2");
                tags.push("I");
            }
            if modular.is_some_and(|m| m[i]) {
                style.push("style=filled, fillcolor=lightblue");
                tags.push("M");
            }
            if quasi.is_some_and(|q| q[i]) {
                style.push("shape=box");
                tags.push("Q");
            }
            let tag = if tags.is_empty() { String::new() } else { format!(" [{}]", tags.join("")) };
            let _ = write!(out, "  n{i} [label=\"{}:{i}{tag}\"", self.nodes[i].dim());
            for s in style {
                let _ = write!(out, ", {s}");
            }
            out.push_str("];\n");
        }
        for i in 0..self.len() {
            for &j in &self.upper_covers[i] {
                let _ = writeln!(out, "  n{i} -> n{j};");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{heisenberg, sl2};
    use crate::fields::FieldSpec;

    fn gf(p: u32) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn lattice(alg: &LieAlgebra) -> SubalgebraLattice {
        SubalgebraLattice::enumerate(alg, &LatticeBudget::default()).unwrap()
    }

    #[test]
    fn abelian_cube_over_gf2() {
        let a = LieAlgebra::abelian(gf(2), 3).unwrap();
        let lat = lattice(&a);
        assert_eq!(lat.len(), 16);
        assert_eq!(lat.ell(), 3);
        assert_eq!(lat.minmax().length(), 3);
        assert_eq!(lat.modl().length(), 3);
        assert_eq!(lat.qil().length(), 3);
        assert!(lat.frattini().is_zero());
        assert_eq!(subspace_count(2, 3), 16);
    }

    #[test]
    fn heisenberg_over_gf2() {
        let h = heisenberg(gf(2));
        let lat = lattice(&h);
        assert_eq!(lat.len(), 12);
        assert_eq!(lat.frattini(), h.center());
        assert_eq!(lat.modl().length(), 3);
        assert_eq!(lat.maximal_subalgebras().len(), 3);
    }

    #[test]
    fn joins_are_closures_of_sums() {
        let s = sl2(gf(3));
        let lat = lattice(&s);
        for i in 0..lat.len() {
            for j in 0..lat.len() {
                let sum = lat.node(i).sum(lat.node(j)).unwrap();
                assert_eq!(lat.node(lat.join(i, j)), &s.closure(&sum));
                assert_eq!(lat.node(lat.meet(i, j)), &lat.node(i).intersect(lat.node(j)).unwrap());
            }
        }
    }

    #[test]
    fn chief_series_independent_of_ties() {
        let a = LieAlgebra::abelian(gf(3), 3).unwrap();
        let lat = lattice(&a);
        assert_eq!(lat.chief_series(false).length(), lat.chief_series(true).length());
        assert_ne!(lat.chief_series(false).members, lat.chief_series(true).members);
    }

    #[test]
    fn fast_quasi_ideal_test_matches_exact_one() {
        let s = sl2(gf(3));
        let lat = lattice(&s);
        for (i, &q) in lat.quasi_ideal_flags().iter().enumerate() {
            assert_eq!(q, crate::algebra::quasi_ideal_lines(&s, lat.node(i)).unwrap());
        }
        // span(e) is not a quasi-ideal, the Borel span(e, h) is
        let e = lat.index_of(&s.span([s.basis_vector(0)])).unwrap();
        let borel = lat.index_of(&s.span([s.basis_vector(0), s.basis_vector(1)])).unwrap();
        assert!(!lat.quasi_ideal_flags()[e]);
        assert!(lat.quasi_ideal_flags()[borel]);
    }

    #[test]
    fn budget_is_enforced_and_parsed() {
        let a = LieAlgebra::abelian(gf(5), 5).unwrap();
        let tight = LatticeBudget::parse("1000").unwrap();
        assert!(matches!(
            SubalgebraLattice::enumerate(&a, &tight),
            Err(Error::BudgetExceeded { what: "subspaces", .. })
        ));
        let b = LatticeBudget::parse("subspaces=10,nodes=3").unwrap();
        assert_eq!((b.max_subspace_count, b.max_node_count), (10, 3));
        assert!(LatticeBudget::parse("bogus=1").is_err());
    }

    #[test]
    fn dot_output_lists_covers() {
        let a = LieAlgebra::abelian(gf(2), 2).unwrap();
        let dot = lattice(&a).to_dot(&["ideal"]);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("->").count(), 6);
    }
}
