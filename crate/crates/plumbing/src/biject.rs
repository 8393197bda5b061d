//! The constructive maps between closed pipe configurations and Bruhat-lower
//! permutations, together with the counting and verification harness.
//!
//! For a target `s` below the grid permutation, the greedy construction
//! scans the city's word in flow order and plants a crossing whenever doing
//! so still allows the remaining letters to finish the job; the antigreedy
//! construction plants an elbow whenever the remaining letters alone can
//! still finish the job. Completability is decided through the subword
//! characterization of Bruhat order: the remainder must stay below the
//! Demazure product of the unscanned suffix. Suffix Demazure products are
//! precomputed in one backward pass.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::city::{CellId, City};
use crate::config::{enumerate_configs_with_guard, ConfigFilter, PipeConfig};
use crate::error::{Error, Result};
use crate::perm::{
    enumerate_lower_interval, enumerate_yoshi_permutations, BoundsProfile, Permutation,
};

/// Elbow count per configuration; `N − length(σ)` per permutation.
///
/// `coefficient(k)` counts the objects of size `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizePolynomial(pub Vec<u64>);

impl SizePolynomial {
    pub fn from_sizes(sizes: impl IntoIterator<Item = usize>) -> Self {
        let mut coeffs = Vec::new();
        for s in sizes {
            if coeffs.len() <= s {
                coeffs.resize(s + 1, 0);
            }
            coeffs[s] += 1;
        }
        SizePolynomial(coeffs)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

struct FacetScan {
    city: City,
    /// Demazure products of the word suffixes: `suffix[k]` covers letters
    /// `k..N`.
    suffix: Vec<Permutation>,
    target: Permutation,
}

impl FacetScan {
    fn new(city: &City, target: &Permutation) -> Result<Self> {
        let m = city.m();
        if target.m() != m {
            return Err(Error::SizeMismatch {
                left: target.m(),
                right: m,
            });
        }
        let letters = city.word();
        let n = letters.len();
        let mut suffix = vec![Permutation::identity(m)?; n + 1];
        for k in (0..n).rev() {
            let c = letters.letters()[k];
            let prev = &suffix[k + 1];
            // 0-Hecke step with the generator on the right: absorb the
            // letter unless it lengthens (positions c, c+1 in one-line form)
            suffix[k] = if prev.image(c) < prev.image(c + 1) {
                let mut images = prev.images().to_vec();
                images.swap(c - 1, c);
                Permutation::from_images(images).expect("swap keeps a bijection")
            } else {
                prev.clone()
            };
        }
        let tau = &suffix[0];
        if !target.bruhat_leq(tau)? {
            return Err(Error::NotRealizable {
                sigma: target.to_string(),
                tau: tau.to_string(),
            });
        }
        Ok(FacetScan {
            city: city.clone(),
            suffix,
            target: target.clone(),
        })
    }

    /// Can the letters `k..N` extend the accumulated crossing product `rho`
    /// to the target? Requires the lengths to add up and the remainder to be
    /// reachable inside the suffix.
    fn can_extend(&self, rho: &Permutation, k: usize) -> bool {
        let rem = self
            .target
            .compose(&rho.inverse())
            .expect("equal sizes by construction");
        self.target.length() == rho.length() + rem.length()
            && rem
                .bruhat_leq(&self.suffix[k])
                .expect("equal sizes by construction")
    }

    fn run(&self, prefer_cross: bool) -> PipeConfig {
        let mut rho = Permutation::identity(self.city.m()).expect("m >= 1");
        let mut elbows: BTreeSet<CellId> = BTreeSet::new();
        for (k, &cell) in self.city.cells().iter().enumerate() {
            let q = cell.x();
            let cross = if prefer_cross {
                rho.lmul_lengthens(q) && self.can_extend(&rho.lmul_adjacent(q), k + 1)
            } else {
                !self.can_extend(&rho, k + 1)
            };
            if cross {
                debug_assert!(rho.lmul_lengthens(q));
                rho = rho.lmul_adjacent(q);
                debug_assert!(self.can_extend(&rho, k + 1));
            } else {
                debug_assert!(self.can_extend(&rho, k + 1));
                elbows.insert(cell);
            }
        }
        debug_assert_eq!(rho, self.target);
        PipeConfig::new(self.city.clone(), elbows).expect("elbows are city cells")
    }
}

/// The crossings-first facet of `s`: the unique facet of `s` that is
/// bottom-diamond closed and never crosses wires that brushed elbows before.
///
/// Errors with [`Error::NotRealizable`] when `s` is not below the grid
/// permutation.
pub fn greedy_facet(city: &City, s: &Permutation) -> Result<PipeConfig> {
    Ok(FacetScan::new(city, s)?.run(true))
}

/// The crossings-last facet of `s`: the unique facet of `s` that is
/// top-diamond closed and never crosses wires that will brush elbows later.
pub fn antigreedy_facet(city: &City, s: &Permutation) -> Result<PipeConfig> {
    Ok(FacetScan::new(city, s)?.run(false))
}

/// The bill assignment realized by a configuration.
pub fn config_to_permutation(cfg: &PipeConfig) -> Permutation {
    cfg.trace().permutation
}

/// A set of subintervals `[a, b]` of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalCollection {
    n: usize,
    intervals: BTreeSet<(usize, usize)>,
}

impl IntervalCollection {
    pub fn new(n: usize, intervals: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let intervals: BTreeSet<(usize, usize)> = intervals.into_iter().collect();
        for &(a, b) in &intervals {
            if a < 1 || a > b || b > n {
                return Err(Error::InvalidInterval { a, b, n });
            }
        }
        Ok(IntervalCollection { n, intervals })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn intervals(&self) -> &BTreeSet<(usize, usize)> {
        &self.intervals
    }

    /// Whenever `[a,c]` and `[b,d]` overlap as `a ≤ b ≤ c ≤ d`, their
    /// intersection `[b,c]` is in the collection.
    pub fn is_intersection_closed(&self) -> bool {
        self.closed_under(|(_, c), (b, _)| (b, c))
    }

    /// Same pattern, requiring the union `[a,d]` instead.
    pub fn is_union_closed(&self) -> bool {
        self.closed_under(|(a, _), (_, d)| (a, d))
    }

    fn closed_under(
        &self,
        implied: impl Fn((usize, usize), (usize, usize)) -> (usize, usize),
    ) -> bool {
        for &first in &self.intervals {
            for &second in &self.intervals {
                let (a, c) = first;
                let (b, d) = second;
                if a <= b && b <= c && c <= d && !self.intervals.contains(&implied(first, second)) {
                    return false;
                }
            }
        }
        true
    }

    /// Elbow set on the triangular city under the identification
    /// `(a, b) ↔ [a, b]`.
    pub fn to_config(&self) -> PipeConfig {
        let city = City::yoshi_hill(self.n).expect("n >= 1");
        let elbows = self.intervals.iter().map(|&(a, b)| CellId::new(a, b));
        PipeConfig::new(city, elbows).expect("intervals are triangle cells")
    }

    /// Reads the elbow set back; the configuration must live on the
    /// triangular city.
    pub fn from_config(cfg: &PipeConfig) -> Result<Self> {
        let m = cfg.city().m();
        let n = m / 2;
        if !m.is_multiple_of(2) || *cfg.city() != City::yoshi_hill(n.max(1))? {
            return Err(Error::WrongCity {
                expected: "the triangular interval city".to_string(),
            });
        }
        IntervalCollection::new(n, cfg.elbows().iter().map(|c| (c.a, c.b)))
    }
}

/// A graph on `[n]` given by its edge set, pairs `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdgeSet {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl GraphEdgeSet {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        for &(a, b) in &edges {
            if a < 1 || a >= b || b > n {
                return Err(Error::InvalidEdge { a, b, n });
            }
        }
        Ok(GraphEdgeSet { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// For crossing edges `(a,c)` and `(b,d)` with `a < b < c < d`, the
    /// inner edge `(b,c)` is present.
    pub fn is_internally_closed(&self) -> bool {
        self.closed_under(|(_, c), (b, _)| (b, c))
    }

    /// Same pattern, requiring the outer edge `(a,d)`.
    pub fn is_externally_closed(&self) -> bool {
        self.closed_under(|(a, _), (_, d)| (a, d))
    }

    fn closed_under(
        &self,
        implied: impl Fn((usize, usize), (usize, usize)) -> (usize, usize),
    ) -> bool {
        for &first in &self.edges {
            for &second in &self.edges {
                let (a, c) = first;
                let (b, d) = second;
                if a < b && b < c && c < d && !self.edges.contains(&implied(first, second)) {
                    return false;
                }
            }
        }
        true
    }

    /// Elbow set on the strip city under the identification `(a, b)` edge ↔
    /// cell.
    pub fn to_config(&self) -> Result<PipeConfig> {
        let city = City::yoshi_graph(self.n)?;
        let elbows = self.edges.iter().map(|&(a, b)| CellId::new(a, b));
        Ok(PipeConfig::new(city, elbows).expect("edges are strip cells"))
    }

    pub fn from_config(cfg: &PipeConfig) -> Result<Self> {
        let m = cfg.city().m();
        let n = m / 2;
        if !m.is_multiple_of(2) || n < 2 || *cfg.city() != City::yoshi_graph(n)? {
            return Err(Error::WrongCity {
                expected: "the strip graph city".to_string(),
            });
        }
        GraphEdgeSet::new(n, cfg.elbows().iter().map(|c| (c.a, c.b)))
    }
}

pub const VERIFY_CELL_GUARD: usize = 20;
pub const VERIFY_WIRE_GUARD: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyCounts {
    pub bottom: u64,
    pub top: u64,
    pub interval: u64,
}

/// Outcome of the exhaustive bijection check on one city.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub city: City,
    pub tau: String,
    pub counts: VerifyCounts,
    pub size_polynomial: SizePolynomial,
    pub pass: bool,
    /// Human-readable descriptions of any failed checks.
    pub failures: Vec<String>,
}

/// Exhaustively checks, on one city, that tracing restricts to a bijection
/// from bottom-closed configurations onto the Bruhat lower interval of the
/// grid permutation with inverse `greedy_facet` (dually for top-closed
/// configurations and `antigreedy_facet`), that every `σ` has exactly one
/// closed facet of each kind, and that the three size polynomials agree.
pub fn verify_bijection(city: &City) -> Result<VerifyReport> {
    if city.cell_count() > VERIFY_CELL_GUARD {
        return Err(Error::GuardExceeded(format!(
            "{} cells exceed the verification guard of {VERIFY_CELL_GUARD}",
            city.cell_count()
        )));
    }
    if city.m() > VERIFY_WIRE_GUARD {
        return Err(Error::GuardExceeded(format!(
            "{} wires exceed the verification guard of {VERIFY_WIRE_GUARD}",
            city.m()
        )));
    }

    let mut failures: Vec<String> = Vec::new();
    let n_cells = city.cell_count();
    let tau = city.grid_permutation();

    let interval: Vec<Permutation> = enumerate_lower_interval(&tau).collect();
    let interval_set: BTreeSet<&Permutation> = interval.iter().collect();

    let mut bottom_sizes = Vec::new();
    let mut top_sizes = Vec::new();
    // per sigma: how many facets are bottom-closed / top-closed
    let mut closed_facets: BTreeMap<Permutation, (u64, u64)> = BTreeMap::new();

    for cfg in enumerate_configs_with_guard(city, ConfigFilter::All, VERIFY_CELL_GUARD)? {
        let sigma = cfg.trace().permutation;
        let bottom = cfg.is_bottom_closed();
        let top = cfg.is_top_closed();
        let facet = cfg.crossing_count() == sigma.length();
        if bottom || top {
            if !facet {
                failures.push(format!(
                    "closed configuration with elbows {:?} is not crossing-minimal",
                    cfg.elbows()
                ));
            }
            if !interval_set.contains(&sigma) {
                failures.push(format!(
                    "closed configuration traces to {sigma}, which is not below {tau}"
                ));
            }
        }
        if facet {
            let entry = closed_facets.entry(sigma.clone()).or_insert((0, 0));
            if bottom {
                entry.0 += 1;
            }
            if top {
                entry.1 += 1;
            }
        }
        if bottom {
            bottom_sizes.push(cfg.elbow_count());
            match greedy_facet(city, &sigma) {
                Ok(rebuilt) => {
                    if rebuilt.elbows() != cfg.elbows() {
                        failures.push(format!(
                            "greedy facet of {sigma} differs from the bottom-closed configuration"
                        ));
                    }
                }
                Err(e) => failures.push(format!("greedy facet of {sigma} failed: {e}")),
            }
        }
        if top {
            top_sizes.push(cfg.elbow_count());
            match antigreedy_facet(city, &sigma) {
                Ok(rebuilt) => {
                    if rebuilt.elbows() != cfg.elbows() {
                        failures.push(format!(
                            "antigreedy facet of {sigma} differs from the top-closed configuration"
                        ));
                    }
                }
                Err(e) => failures.push(format!("antigreedy facet of {sigma} failed: {e}")),
            }
        }
    }

    for sigma in &interval {
        match closed_facets.get(sigma) {
            Some(&(1, 1)) => {}
            Some(&(b, t)) => failures.push(format!(
                "{sigma} has {b} bottom-closed and {t} top-closed facets instead of one each"
            )),
            None => failures.push(format!("{sigma} has no facet at all")),
        }
        for (label, facet) in [
            ("greedy", greedy_facet(city, sigma)),
            ("antigreedy", antigreedy_facet(city, sigma)),
        ] {
            match facet {
                Ok(cfg) => {
                    if cfg.trace().permutation != *sigma {
                        failures.push(format!("{label} facet of {sigma} traces elsewhere"));
                    }
                    if cfg.elbow_count() != n_cells - sigma.length() {
                        failures.push(format!(
                            "{label} facet of {sigma} has the wrong number of elbows"
                        ));
                    }
                }
                Err(e) => failures.push(format!("{label} facet of {sigma} failed: {e}")),
            }
        }
    }

    let bottom_poly = SizePolynomial::from_sizes(bottom_sizes);
    let top_poly = SizePolynomial::from_sizes(top_sizes);
    let interval_poly = SizePolynomial::from_sizes(interval.iter().map(|s| n_cells - s.length()));
    if bottom_poly != interval_poly || top_poly != interval_poly {
        failures.push(format!(
            "size polynomials differ: bottom {:?}, top {:?}, interval {:?}",
            bottom_poly.0, top_poly.0, interval_poly.0
        ));
    }

    let counts = VerifyCounts {
        bottom: bottom_poly.total(),
        top: top_poly.total(),
        interval: interval.len() as u64,
    };
    if counts.bottom != counts.interval || counts.top != counts.interval {
        failures.push(format!(
            "counts differ: bottom {}, top {}, interval {}",
            counts.bottom, counts.top, counts.interval
        ));
    }

    Ok(VerifyReport {
        city: city.clone(),
        tau: tau.to_string(),
        counts,
        size_polynomial: interval_poly,
        pass: failures.is_empty(),
        failures,
    })
}

/// Comparison of the Bruhat lower interval with the reachability box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxReport {
    pub unique_peak: bool,
    pub unique_valley: bool,
    pub interval_size: u64,
    pub box_size: u64,
    pub interval_inside_box: bool,
    pub equal: bool,
    /// The box theorem: a unique peak or valley forces equality.
    pub pass: bool,
}

/// Compares `{σ ≤ τ}` with `{σ : μ(i) ≤ σ(i) ≤ ν(i)}`.
///
/// The box size is computed by a bitmask count over value subsets, so the
/// box is never materialized; the interval is always contained in the box,
/// hence set equality is containment plus equal cardinality.
pub fn mu_nu_box_report(city: &City) -> Result<BoxReport> {
    if city.m() > 16 {
        return Err(Error::GuardExceeded(format!(
            "{} wires exceed the box comparison guard of 16",
            city.m()
        )));
    }
    let bounds = city.mu_nu();
    let tau = city.grid_permutation();
    let mut interval_size = 0u64;
    let mut interval_inside_box = true;
    for sigma in enumerate_lower_interval(&tau) {
        interval_size += 1;
        if !bounds.satisfied_by(&sigma)? {
            interval_inside_box = false;
        }
    }
    let box_size = count_box(&bounds);
    let unique_peak = city.top_path().has_unique_peak();
    let unique_valley = city.bottom_path().has_unique_valley();
    let equal = interval_inside_box && box_size == interval_size;
    let pass = interval_inside_box && (!(unique_peak || unique_valley) || equal);
    Ok(BoxReport {
        unique_peak,
        unique_valley,
        interval_size,
        box_size,
        interval_inside_box,
        equal,
        pass,
    })
}

/// Number of permutations inside a bounds box, by dynamic programming over
/// the set of used values (position = popcount).
pub fn count_box(bounds: &BoundsProfile) -> u64 {
    let m = bounds.m();
    let mut counts = vec![0u64; 1 << m];
    counts[0] = 1;
    for mask in 0..(1usize << m) {
        if counts[mask] == 0 {
            continue;
        }
        let i = mask.count_ones() as usize; // next position, 0-based
        if i == m {
            continue;
        }
        for v in bounds.lo()[i]..=bounds.hi()[i] {
            let bit = 1usize << (v - 1);
            if mask & bit == 0 {
                counts[mask | bit] += counts[mask];
            }
        }
    }
    counts[(1 << m) - 1]
}

/// Which closure of a subset family to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    /// Intersection closed intervals / crossing internally closed graphs.
    Inner,
    /// Union closed intervals / crossing externally closed graphs.
    Outer,
}

/// The object families counted by the median Genocchi numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Intersection closed interval collections on `[n]`.
    Intervals,
    /// Crossing internally closed graphs on `[n]`.
    Graphs,
    /// Yoshi permutations of `[2n]`.
    Permutations,
    /// Yoshi derangements of `[2n]`.
    Derangements,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "intervals" => Ok(Family::Intervals),
            "graphs" => Ok(Family::Graphs),
            "permutations" => Ok(Family::Permutations),
            "derangements" => Ok(Family::Derangements),
            _ => Err(Error::PermParse {
                input: s.to_string(),
                reason: "expected intervals, graphs, permutations, or derangements".to_string(),
            }),
        }
    }
}

const SUBSET_GUARD_BITS: usize = 24;
const BACKTRACK_GUARD: usize = 8;

/// Exact count of the family at parameter `n`, single-threaded.
///
/// Subset families are counted by exhaustive enumeration over bitmasks;
/// permutation families by definition-based backtracking, independent of the
/// city bijections, so that bijection-produced counts can be cross-checked
/// against these.
pub fn yoshi_count(n: usize, family: Family) -> Result<u64> {
    yoshi_count_threaded(n, family, 1)
}

/// Like [`yoshi_count`], with subset families sharded over `threads` workers.
pub fn yoshi_count_threaded(n: usize, family: Family, threads: usize) -> Result<u64> {
    match family {
        Family::Intervals => count_interval_collections_threaded(n, Closure::Inner, threads),
        Family::Graphs => count_closed_graphs_threaded(n, Closure::Inner, threads),
        Family::Permutations => {
            if n == 0 {
                return Ok(1);
            }
            guard_backtrack(n)?;
            Ok(enumerate_yoshi_permutations(n)?.count() as u64)
        }
        Family::Derangements => {
            if n == 0 {
                return Ok(1);
            }
            guard_backtrack(n)?;
            Ok(BoundsProfile::yoshi_derangement(n)?.enumerate_box().count() as u64)
        }
    }
}

fn guard_backtrack(n: usize) -> Result<()> {
    if n > BACKTRACK_GUARD {
        return Err(Error::GuardExceeded(format!(
            "n={n} exceeds the backtracking guard of {BACKTRACK_GUARD}"
        )));
    }
    Ok(())
}

/// Number of Dumont-type permutations of `[2n]`, by the same backtracking.
pub fn count_dumont_type(n: usize) -> Result<u64> {
    if n == 0 {
        return Ok(1);
    }
    guard_backtrack(n)?;
    Ok(BoundsProfile::dumont(n)?.enumerate_box().count() as u64)
}

pub fn count_interval_collections(n: usize, closure: Closure) -> Result<u64> {
    count_interval_collections_threaded(n, closure, 1)
}

/// Exhaustive count of closed interval collections on `[n]` over all
/// `2^(n(n+1)/2)` subsets.
pub fn count_interval_collections_threaded(
    n: usize,
    closure: Closure,
    threads: usize,
) -> Result<u64> {
    // items: all intervals [a,b]; constraints from strictly crossing pairs
    let mut items = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            items.push((a, b));
        }
    }
    guard_subsets(items.len())?;
    let constraints = closure_constraints(&items, closure, false);
    count_closed_subsets(items.len(), &constraints, threads)
}

pub fn count_closed_graphs(n: usize, closure: Closure) -> Result<u64> {
    count_closed_graphs_threaded(n, closure, 1)
}

/// Exhaustive count of closed graphs on `[n]` over all `2^(n choose 2)`
/// subsets.
pub fn count_closed_graphs_threaded(n: usize, closure: Closure, threads: usize) -> Result<u64> {
    let mut items = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            items.push((a, b));
        }
    }
    guard_subsets(items.len())?;
    let constraints = closure_constraints(&items, closure, true);
    count_closed_subsets(items.len(), &constraints, threads)
}

/// For each constrained pair, the bitmask of the two antecedents and the bit
/// of the implied item.
fn closure_constraints(
    items: &[(usize, usize)],
    closure: Closure,
    strict: bool,
) -> Vec<(u32, u32)> {
    let index: BTreeMap<(usize, usize), usize> =
        items.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut out = Vec::new();
    for &(a, c) in items {
        for &(b, d) in items {
            let crossing = if strict {
                a < b && b < c && c < d
            } else {
                a <= b && b <= c && c <= d
            };
            if !crossing {
                continue;
            }
            let implied = match closure {
                Closure::Inner => (b, c),
                Closure::Outer => (a, d),
            };
            if implied == (a, c) || implied == (b, d) {
                continue;
            }
            let pair = (1u32 << index[&(a, c)]) | (1u32 << index[&(b, d)]);
            let need = 1u32 << index[&implied];
            out.push((pair, need));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn guard_subsets(bits: usize) -> Result<()> {
    if bits > SUBSET_GUARD_BITS {
        return Err(Error::GuardExceeded(format!(
            "2^{bits} subsets exceed the guard of 2^{SUBSET_GUARD_BITS}"
        )));
    }
    Ok(())
}

fn count_closed_subsets(bits: usize, constraints: &[(u32, u32)], threads: usize) -> Result<u64> {
    guard_subsets(bits)?;
    let total: u64 = 1 << bits;
    let threads = threads.clamp(1, 64);
    let count_range = |from: u64, to: u64| -> u64 {
        let mut count = 0;
        for mask in from..to {
            let mask = mask as u32;
            if constraints
                .iter()
                .all(|&(pair, need)| mask & pair != pair || mask & need == need)
            {
                count += 1;
            }
        }
        count
    };
    if threads == 1 {
        return Ok(count_range(0, total));
    }
    let chunk = total.div_ceil(threads as u64);
    let counts = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads as u64)
            .map(|t| {
                let from = (t * chunk).min(total);
                let to = ((t + 1) * chunk).min(total);
                scope.spawn(move || count_range(from, to))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).sum()
    });
    Ok(counts)
}
