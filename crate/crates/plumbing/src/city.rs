//! Staircase polyomino cities.
//!
//! A city is the region of unit diamond cells enclosed between two step
//! paths of common length `m` that start at elevation 0 and end at the same
//! elevation, the top path staying weakly above the bottom path. The `m`
//! steps of the top path are the faucets, the `m` steps of the bottom path
//! the customers, both numbered left to right. Water flows downward.
//!
//! Cell `(a, b)` sits at the intersection of the `a`th uphill street with
//! the `b`th downhill avenue; its center has abscissa `x = a + b − 1` and
//! elevation `e = b − a`, and it acts on the wire slots `(x, x+1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{BoundsProfile, Permutation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Up,
    Down,
}

/// A path of up/down steps with elevations `e(0) = 0`, `e(j) = e(j−1) ± 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepPath {
    steps: Vec<Step>,
}

impl StepPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptyPath);
        }
        Ok(StepPath { steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Elevations at integer abscissas `0..=m`.
    pub fn elevations(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut e = 0i64;
        out.push(e);
        for step in &self.steps {
            e += match step {
                Step::Up => 1,
                Step::Down => -1,
            };
            out.push(e);
        }
        out
    }

    pub fn end_elevation(&self) -> i64 {
        *self.elevations().last().expect("nonempty path")
    }

    /// True iff the path is `U…UD…D` (exactly one switch, both runs nonempty).
    pub fn has_unique_peak(&self) -> bool {
        let first_down = self.steps.iter().position(|s| *s == Step::Down);
        match first_down {
            None | Some(0) => false,
            Some(k) => self.steps[k..].iter().all(|s| *s == Step::Down),
        }
    }

    /// True iff the path is `D…DU…U`.
    pub fn has_unique_valley(&self) -> bool {
        let first_up = self.steps.iter().position(|s| *s == Step::Up);
        match first_up {
            None | Some(0) => false,
            Some(k) => self.steps[k..].iter().all(|s| *s == Step::Up),
        }
    }
}

impl fmt::Display for StepPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            f.write_str(match step {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for StepPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::Up),
                'D' | 'd' => Ok(Step::Down),
                _ => Err(Error::PathParse {
                    input: s.to_string(),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        StepPath::new(steps)
    }
}

/// A diamond cell: `a`th uphill street meets `b`th downhill avenue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "(usize, usize)", try_from = "(usize, usize)")]
pub struct CellId {
    pub a: usize,
    pub b: usize,
}

impl CellId {
    pub fn new(a: usize, b: usize) -> Self {
        CellId { a, b }
    }

    /// Letter column: the cell acts on slots `(x, x+1)`.
    pub fn x(&self) -> usize {
        self.a + self.b - 1
    }

    /// Elevation of the cell center.
    pub fn e(&self) -> i64 {
        self.b as i64 - self.a as i64
    }
}

impl From<CellId> for (usize, usize) {
    fn from(c: CellId) -> Self {
        (c.a, c.b)
    }
}

impl TryFrom<(usize, usize)> for CellId {
    type Error = Error;

    fn try_from((a, b): (usize, usize)) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::NotACell { a, b });
        }
        Ok(CellId { a, b })
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Four cells in diamond position: rows `a < b`, columns `c < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diamond {
    pub row_lo: usize,
    pub row_hi: usize,
    pub col_lo: usize,
    pub col_hi: usize,
}

impl Diamond {
    pub fn left(&self) -> CellId {
        CellId::new(self.row_lo, self.col_lo)
    }

    pub fn right(&self) -> CellId {
        CellId::new(self.row_hi, self.col_hi)
    }

    pub fn bottom(&self) -> CellId {
        CellId::new(self.row_hi, self.col_lo)
    }

    pub fn top(&self) -> CellId {
        CellId::new(self.row_lo, self.col_hi)
    }
}

#[derive(Serialize, Deserialize)]
struct CityRepr {
    top: String,
    bottom: String,
}

/// A staircase polyomino city.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CityRepr", try_from = "CityRepr")]
pub struct City {
    m: usize,
    top: StepPath,
    bottom: StepPath,
    top_elev: Vec<i64>,
    bottom_elev: Vec<i64>,
    /// Cells in flow order: elevation descending, ties by column ascending.
    cells_flow: Vec<CellId>,
    cell_set: BTreeSet<CellId>,
    diamonds: Vec<Diamond>,
}

impl From<City> for CityRepr {
    fn from(c: City) -> Self {
        CityRepr {
            top: c.top.to_string(),
            bottom: c.bottom.to_string(),
        }
    }
}

impl TryFrom<CityRepr> for City {
    type Error = Error;

    fn try_from(repr: CityRepr) -> Result<Self> {
        City::from_paths(repr.top.parse()?, repr.bottom.parse()?)
    }
}

impl City {
    /// Builds a city from its two step paths, computing and validating the
    /// cell set.
    pub fn from_paths(top: StepPath, bottom: StepPath) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::PathLengthMismatch {
                top: top.len(),
                bottom: bottom.len(),
            });
        }
        let m = top.len();
        let top_elev = top.elevations();
        let bottom_elev = bottom.elevations();
        if top_elev[m] != bottom_elev[m] {
            return Err(Error::EndpointMismatch {
                top: top_elev[m],
                bottom: bottom_elev[m],
            });
        }
        for j in 0..=m {
            if top_elev[j] < bottom_elev[j] {
                return Err(Error::TopBelowBottom { at: j });
            }
        }

        // a cell with center (x, e) exists iff bottom(x) < e < top(x);
        // parity makes x + e odd automatically (x + e = 2b − 1)
        let mut cells = Vec::new();
        for x in 1..m {
            let mut e = bottom_elev[x] + 1;
            if (x as i64 + e).rem_euclid(2) == 0 {
                e += 1;
            }
            while e < top_elev[x] {
                let a = ((x as i64 + 1 - e) / 2) as usize;
                let b = ((x as i64 + 1 + e) / 2) as usize;
                cells.push(CellId::new(a, b));
                e += 2;
            }
        }
        if cells.is_empty() {
            return Err(Error::EmptyCity);
        }
        let cell_set: BTreeSet<CellId> = cells.iter().copied().collect();
        if !edge_connected(&cell_set) {
            return Err(Error::DisconnectedCity);
        }

        let mut cells_flow = cells;
        cells_flow.sort_by_key(|c| (-c.e(), c.x()));

        let diamonds = find_diamonds(&cell_set);

        Ok(City {
            m,
            top,
            bottom,
            top_elev,
            bottom_elev,
            cells_flow,
            cell_set,
            diamonds,
        })
    }

    /// The triangular city with cells `{(a,b) : 1 ≤ a ≤ b ≤ n}`:
    /// top path `UⁿDⁿ`, bottom path `(DU)ⁿ`, `2n` wires.
    pub fn yoshi_hill(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let top: StepPath = format!("{}{}", "U".repeat(n), "D".repeat(n)).parse()?;
        let bottom: StepPath = "DU".repeat(n).parse()?;
        let city = City::from_paths(top, bottom)?;
        debug_assert_eq!(city.cell_count(), n * (n + 1) / 2);
        Ok(city)
    }

    /// The strip city with cells `{(a,b) : 1 ≤ a < b ≤ n}` inside `2n` wires:
    /// top path `UⁿDⁿ`, bottom path `U(DU)ⁿ⁻¹D`. Wires 1 and 2n traverse no
    /// cell.
    pub fn yoshi_graph(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::ZeroSize);
        }
        let top: StepPath = format!("{}{}", "U".repeat(n), "D".repeat(n)).parse()?;
        let bottom: StepPath = format!("U{}D", "DU".repeat(n - 1)).parse()?;
        let city = City::from_paths(top, bottom)?;
        debug_assert_eq!(city.cell_count(), n * (n - 1) / 2);
        Ok(city)
    }

    /// A seeded random valid city with `m` wires and at most `max_cells`
    /// cells, by rejection sampling over step-path pairs.
    pub fn random<R: Rng>(rng: &mut R, m: usize, max_cells: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::ZeroSize);
        }
        for _ in 0..100_000 {
            let ups = rng.random_range(1..m);
            let top = random_path(rng, m, ups);
            let bottom = random_path(rng, m, ups);
            if let Ok(city) = City::from_paths(top, bottom) {
                if city.cell_count() <= max_cells {
                    return Ok(city);
                }
            }
        }
        Err(Error::GuardExceeded(format!(
            "no valid random city with m={m} and at most {max_cells} cells found"
        )))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn top_path(&self) -> &StepPath {
        &self.top
    }

    pub fn bottom_path(&self) -> &StepPath {
        &self.bottom
    }

    pub fn top_elevations(&self) -> &[i64] {
        &self.top_elev
    }

    pub fn bottom_elevations(&self) -> &[i64] {
        &self.bottom_elev
    }

    /// Cells in flow order (elevation descending, ties by column ascending).
    pub fn cells(&self) -> &[CellId] {
        &self.cells_flow
    }

    pub fn cell_count(&self) -> usize {
        self.cells_flow.len()
    }

    pub fn contains(&self, cell: CellId) -> bool {
        self.cell_set.contains(&cell)
    }

    /// Cells grouped by elevation, highest level first.
    pub fn levels(&self) -> Vec<(i64, Vec<CellId>)> {
        let mut groups: BTreeMap<i64, Vec<CellId>> = BTreeMap::new();
        for &c in &self.cells_flow {
            groups.entry(c.e()).or_default().push(c);
        }
        groups.into_iter().rev().collect()
    }

    /// The word read off the cells in flow order; letter = cell column.
    pub fn word(&self) -> Word {
        let letters = self.cells_flow.iter().map(|c| c.x()).collect();
        Word::new(self.m, letters).expect("cell columns lie in [1, m-1]")
    }

    /// The bill assignment of the all-crossings configuration, computed by
    /// wire tracing: every cell swaps the wires in its two slots.
    pub fn grid_permutation(&self) -> Permutation {
        let m = self.m;
        let mut wire_in_slot: Vec<usize> = (0..=m).collect(); // 1-based slots
        for cell in &self.cells_flow {
            let x = cell.x();
            wire_in_slot.swap(x, x + 1);
        }
        let mut slot_of_wire = vec![0; m];
        for slot in 1..=m {
            slot_of_wire[wire_in_slot[slot] - 1] = slot;
        }
        Permutation::from_images(slot_of_wire).expect("tracing yields a bijection")
    }

    /// Leftmost and rightmost customers reachable from each faucet, over all
    /// configurations: dynamic program over slots, descending through the
    /// levels, allowing both exits at every cell met.
    pub fn mu_nu(&self) -> BoundsProfile {
        let m = self.m;
        let levels = self.levels();
        let mut lo = vec![0; m];
        let mut hi = vec![0; m];
        for wire in 1..=m {
            let mut reach = vec![false; m + 2];
            reach[wire] = true;
            for (_, cells) in &levels {
                let mut next = reach.clone();
                for cell in cells {
                    let x = cell.x();
                    if reach[x] {
                        next[x + 1] = true;
                    }
                    if reach[x + 1] {
                        next[x] = true;
                    }
                }
                reach = next;
            }
            lo[wire - 1] = (1..=m).find(|&s| reach[s]).expect("reach nonempty");
            hi[wire - 1] = (1..=m).rev().find(|&s| reach[s]).expect("reach nonempty");
        }
        BoundsProfile::new(lo, hi).expect("reachability bounds are within [1, m]")
    }

    /// All diamonds fitting in the city, in lexicographic
    /// `(row_lo, row_hi, col_lo, col_hi)` order.
    pub fn diamonds(&self) -> &[Diamond] {
        &self.diamonds
    }
}

fn random_path<R: Rng>(rng: &mut R, m: usize, ups: usize) -> StepPath {
    let mut steps = vec![Step::Down; m];
    let mut placed = 0;
    while placed < ups {
        let i = rng.random_range(0..m);
        if steps[i] == Step::Down {
            steps[i] = Step::Up;
            placed += 1;
        }
    }
    StepPath::new(steps).expect("m >= 2")
}

fn edge_connected(cells: &BTreeSet<CellId>) -> bool {
    let start = match cells.iter().next() {
        Some(c) => *c,
        None => return false,
    };
    let mut seen = BTreeSet::new();
    let mut queue = vec![start];
    seen.insert(start);
    while let Some(c) = queue.pop() {
        let mut push = |a: usize, b: usize| {
            if a >= 1 && b >= 1 {
                let n = CellId::new(a, b);
                if cells.contains(&n) && seen.insert(n) {
                    queue.push(n);
                }
            }
        };
        push(c.a + 1, c.b);
        push(c.a.wrapping_sub(1), c.b);
        push(c.a, c.b + 1);
        push(c.a, c.b.wrapping_sub(1));
    }
    seen.len() == cells.len()
}

fn find_diamonds(cells: &BTreeSet<CellId>) -> Vec<Diamond> {
    let rows: Vec<usize> = {
        let set: BTreeSet<usize> = cells.iter().map(|c| c.a).collect();
        set.into_iter().collect()
    };
    let cols: Vec<usize> = {
        let set: BTreeSet<usize> = cells.iter().map(|c| c.b).collect();
        set.into_iter().collect()
    };
    let mut out = Vec::new();
    for (i, &row_lo) in rows.iter().enumerate() {
        for &row_hi in &rows[i + 1..] {
            for (j, &col_lo) in cols.iter().enumerate() {
                for &col_hi in &cols[j + 1..] {
                    let d = Diamond {
                        row_lo,
                        row_hi,
                        col_lo,
                        col_hi,
                    };
                    if cells.contains(&d.left())
                        && cells.contains(&d.right())
                        && cells.contains(&d.bottom())
                        && cells.contains(&d.top())
                    {
                        out.push(d);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells_of(city: &City) -> BTreeSet<(usize, usize)> {
        city.cells().iter().map(|c| (c.a, c.b)).collect()
    }

    #[test]
    fn city_from_paths_examples() {
        let city = City::from_paths("UUDD".parse().unwrap(), "DUDU".parse().unwrap()).unwrap();
        assert_eq!(city.m(), 4);
        assert_eq!(
            cells_of(&city),
            [(1, 1), (1, 2), (2, 2)].into_iter().collect()
        );

        let single = City::from_paths("UD".parse().unwrap(), "DU".parse().unwrap()).unwrap();
        assert_eq!(single.m(), 2);
        assert_eq!(cells_of(&single), [(1, 1)].into_iter().collect());

        // equal paths leave no room for any cell
        assert_eq!(
            City::from_paths("UUDD".parse().unwrap(), "UUDD".parse().unwrap()),
            Err(Error::EmptyCity)
        );
        assert_eq!(
            City::from_paths("UD".parse().unwrap(), "UD".parse().unwrap()),
            Err(Error::EmptyCity)
        );
    }

    #[test]
    fn city_from_paths_errors() {
        let top: StepPath = "UUDD".parse().unwrap();
        assert_eq!(
            City::from_paths(top.clone(), "DU".parse().unwrap()),
            Err(Error::PathLengthMismatch { top: 4, bottom: 2 })
        );
        assert_eq!(
            City::from_paths(top.clone(), "DUUU".parse().unwrap()),
            Err(Error::EndpointMismatch { top: 0, bottom: 2 })
        );
        assert_eq!(
            City::from_paths("DUDU".parse().unwrap(), "UDUD".parse().unwrap()),
            Err(Error::TopBelowBottom { at: 1 })
        );
        // pinched in the middle: cells at x=1 and x=3 only
        assert_eq!(
            City::from_paths("UDUD".parse().unwrap(), "DUDU".parse().unwrap()),
            Err(Error::DisconnectedCity)
        );
    }

    #[test]
    fn yoshi_hill_shapes() {
        let h1 = City::yoshi_hill(1).unwrap();
        assert_eq!(h1.m(), 2);
        assert_eq!(cells_of(&h1), [(1, 1)].into_iter().collect());

        let h2 = City::yoshi_hill(2).unwrap();
        assert_eq!(h2.m(), 4);
        assert_eq!(
            cells_of(&h2),
            [(1, 1), (1, 2), (2, 2)].into_iter().collect()
        );

        let h3 = City::yoshi_hill(3).unwrap();
        assert_eq!(h3.m(), 6);
        assert_eq!(h3.cell_count(), 6);
        assert!(City::yoshi_hill(0).is_err());
    }

    #[test]
    fn yoshi_graph_shapes() {
        let g2 = City::yoshi_graph(2).unwrap();
        assert_eq!(g2.m(), 4);
        assert_eq!(cells_of(&g2), [(1, 2)].into_iter().collect());
        assert_eq!(g2.grid_permutation(), "1324".parse().unwrap());

        let g3 = City::yoshi_graph(3).unwrap();
        assert_eq!(g3.m(), 6);
        assert_eq!(
            cells_of(&g3),
            [(1, 2), (1, 3), (2, 3)].into_iter().collect()
        );

        assert!(City::yoshi_graph(1).is_err());
    }

    #[test]
    fn word_in_flow_order() {
        assert_eq!(City::yoshi_hill(2).unwrap().word().letters(), &[2, 1, 3]);
        assert_eq!(City::yoshi_hill(1).unwrap().word().letters(), &[1]);
        assert_eq!(City::yoshi_graph(3).unwrap().word().letters(), &[3, 2, 4]);
    }

    #[test]
    fn grid_permutation_examples() {
        assert_eq!(
            City::yoshi_hill(2).unwrap().grid_permutation(),
            "2413".parse().unwrap()
        );
        assert_eq!(
            City::yoshi_hill(1).unwrap().grid_permutation(),
            "21".parse().unwrap()
        );
    }

    #[test]
    fn grid_permutation_matches_products() {
        for city in [
            City::yoshi_hill(1).unwrap(),
            City::yoshi_hill(2).unwrap(),
            City::yoshi_hill(3).unwrap(),
            City::yoshi_hill(4).unwrap(),
            City::yoshi_graph(2).unwrap(),
            City::yoshi_graph(4).unwrap(),
        ] {
            let tau = city.grid_permutation();
            let word = city.word();
            assert_eq!(word.ordinary_product(), tau);
            assert_eq!(word.demazure_product(), tau);
            assert_eq!(tau.length(), city.cell_count());
        }
    }

    #[test]
    fn mu_nu_examples() {
        let h2 = City::yoshi_hill(2).unwrap();
        let bounds = h2.mu_nu();
        assert_eq!(bounds.lo(), &[1, 1, 1, 3]);
        assert_eq!(bounds.hi(), &[2, 4, 4, 4]);

        let single = City::yoshi_hill(1).unwrap();
        let bounds = single.mu_nu();
        assert_eq!(bounds.lo(), &[1, 1]);
        assert_eq!(bounds.hi(), &[2, 2]);

        // the all-crossings route is one route
        for city in [City::yoshi_hill(3).unwrap(), City::yoshi_graph(3).unwrap()] {
            let tau = city.grid_permutation();
            assert!(city.mu_nu().satisfied_by(&tau).unwrap());
        }
    }

    #[test]
    fn diamond_enumeration() {
        assert!(City::yoshi_hill(2).unwrap().diamonds().is_empty());
        assert!(City::yoshi_hill(1).unwrap().diamonds().is_empty());
        let h3 = City::yoshi_hill(3).unwrap();
        assert_eq!(h3.diamonds().len(), 1);
        let d = h3.diamonds()[0];
        assert_eq!((d.row_lo, d.row_hi, d.col_lo, d.col_hi), (1, 2, 2, 3));
        assert_eq!(d.left(), CellId::new(1, 2));
        assert_eq!(d.right(), CellId::new(2, 3));
        assert_eq!(d.bottom(), CellId::new(2, 2));
        assert_eq!(d.top(), CellId::new(1, 3));
    }

    #[test]
    fn unique_peak_and_valley() {
        let p = |s: &str| s.parse::<StepPath>().unwrap();
        assert!(p("UUDD").has_unique_peak());
        assert!(!p("UDUD").has_unique_peak());
        assert!(p("UUUDDD").has_unique_peak());
        assert!(!p("UUU").has_unique_peak());
        assert!(!p("DDU").has_unique_peak());
        assert!(!p("DUDU").has_unique_valley());
        assert!(p("DDUU").has_unique_valley());
    }

    #[test]
    fn city_json_round_trip() {
        let city = City::yoshi_hill(2).unwrap();
        let json = serde_json::to_string(&city).unwrap();
        assert_eq!(json, r#"{"top":"UUDD","bottom":"DUDU"}"#);
        let back: City = serde_json::from_str(&json).unwrap();
        assert_eq!(back, city);
        // derived fields on input are ignored
        let with_extra = r#"{"top":"UUDD","bottom":"DUDU","m":4,"cells":[[1,1]]}"#;
        let back: City = serde_json::from_str(with_extra).unwrap();
        assert_eq!(back, city);
        // invalid cities are rejected at parse time
        assert!(serde_json::from_str::<City>(r#"{"top":"UD","bottom":"UD"}"#).is_err());
    }

    #[test]
    fn random_cities_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let city = City::random(&mut rng, 6, 12).unwrap();
            assert_eq!(city.m(), 6);
            assert!(city.cell_count() >= 1 && city.cell_count() <= 12);
            let tau = city.grid_permutation();
            assert_eq!(city.word().ordinary_product(), tau);
        }
    }
}
