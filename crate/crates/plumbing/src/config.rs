//! Pipe configurations: an elbow/crossing choice for every cell of a city.
//!
//! A configuration is encoded by its elbow set; all other cells are
//! crossings. Tracing processes the cells in flow order: at a crossing the
//! two wires in slots `(x, x+1)` swap, at an elbow they bounce and keep
//! their slots.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::city::{CellId, City};
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeetingKind {
    Cross,
    Elbow,
}

/// One cell's event during tracing: which wires met there and what happened.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Meeting {
    pub cell: CellId,
    /// Wires entering from the left and right slots, in that order.
    pub wires: (usize, usize),
    pub kind: MeetingKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceResult {
    pub permutation: Permutation,
    /// One meeting per cell, in processing order.
    pub meetings: Vec<Meeting>,
}

#[derive(Serialize, Deserialize)]
struct PipeConfigRepr {
    city: City,
    elbows: Vec<CellId>,
}

/// A city together with its elbow set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PipeConfigRepr", try_from = "PipeConfigRepr")]
pub struct PipeConfig {
    city: City,
    elbows: BTreeSet<CellId>,
}

impl From<PipeConfig> for PipeConfigRepr {
    fn from(cfg: PipeConfig) -> Self {
        PipeConfigRepr {
            elbows: cfg.elbows.iter().copied().collect(),
            city: cfg.city,
        }
    }
}

impl TryFrom<PipeConfigRepr> for PipeConfig {
    type Error = Error;

    fn try_from(repr: PipeConfigRepr) -> Result<Self> {
        PipeConfig::new(repr.city, repr.elbows)
    }
}

impl PipeConfig {
    pub fn new(city: City, elbows: impl IntoIterator<Item = CellId>) -> Result<Self> {
        let elbows: BTreeSet<CellId> = elbows.into_iter().collect();
        for &cell in &elbows {
            if !city.contains(cell) {
                return Err(Error::NotACell {
                    a: cell.a,
                    b: cell.b,
                });
            }
        }
        Ok(PipeConfig { city, elbows })
    }

    pub fn all_elbows(city: City) -> Self {
        let elbows = city.cells().iter().copied().collect();
        PipeConfig { city, elbows }
    }

    pub fn all_crossings(city: City) -> Self {
        PipeConfig {
            city,
            elbows: BTreeSet::new(),
        }
    }

    pub fn city(&self) -> &City {
        &self.city
    }

    pub fn elbows(&self) -> &BTreeSet<CellId> {
        &self.elbows
    }

    pub fn is_elbow(&self, cell: CellId) -> bool {
        self.elbows.contains(&cell)
    }

    pub fn elbow_count(&self) -> usize {
        self.elbows.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.city.cell_count() - self.elbows.len()
    }

    /// Traces every wire through the configuration in flow order.
    pub fn trace(&self) -> TraceResult {
        self.trace_over(self.city.cells())
    }

    /// Traces with an explicit cell order, which must be a flow order:
    /// the same cells, with elevations non-increasing.
    ///
    /// Tracing does not depend on the order of cells within one level, since
    /// cells of one level act on disjoint slot pairs.
    pub fn trace_ordered(&self, cells: &[CellId]) -> Result<TraceResult> {
        let canonical: BTreeSet<CellId> = self.city.cells().iter().copied().collect();
        let given: BTreeSet<CellId> = cells.iter().copied().collect();
        if canonical != given || cells.len() != self.city.cell_count() {
            return Err(Error::BadCellOrder);
        }
        if cells.windows(2).any(|w| w[0].e() < w[1].e()) {
            return Err(Error::BadCellOrder);
        }
        Ok(self.trace_over(cells))
    }

    fn trace_over(&self, cells: &[CellId]) -> TraceResult {
        let m = self.city.m();
        let mut wire_in_slot: Vec<usize> = (0..=m).collect();
        let mut meetings = Vec::with_capacity(cells.len());
        for &cell in cells {
            let x = cell.x();
            let wires = (wire_in_slot[x], wire_in_slot[x + 1]);
            let kind = if self.elbows.contains(&cell) {
                MeetingKind::Elbow
            } else {
                wire_in_slot.swap(x, x + 1);
                MeetingKind::Cross
            };
            meetings.push(Meeting { cell, wires, kind });
        }
        let mut slot_of_wire = vec![0; m];
        for slot in 1..=m {
            slot_of_wire[wire_in_slot[slot] - 1] = slot;
        }
        let permutation =
            Permutation::from_images(slot_of_wire).expect("tracing yields a bijection");
        TraceResult {
            permutation,
            meetings,
        }
    }

    /// A facet of `s`: the configuration realizes `s` with as few crossings
    /// as possible, i.e. `#crossings = length(s)`.
    pub fn is_facet(&self, s: &Permutation) -> Result<bool> {
        if s.m() != self.city.m() {
            return Err(Error::SizeMismatch {
                left: s.m(),
                right: self.city.m(),
            });
        }
        Ok(self.crossing_count() == s.length() && self.trace().permutation == *s)
    }

    /// For every diamond: elbows at the left and right vertices force an
    /// elbow at the bottom vertex.
    pub fn is_bottom_closed(&self) -> bool {
        self.city.diamonds().iter().all(|d| {
            !(self.elbows.contains(&d.left()) && self.elbows.contains(&d.right()))
                || self.elbows.contains(&d.bottom())
        })
    }

    /// Dual closure with the diamond's top vertex.
    pub fn is_top_closed(&self) -> bool {
        self.city.diamonds().iter().all(|d| {
            !(self.elbows.contains(&d.left()) && self.elbows.contains(&d.right()))
                || self.elbows.contains(&d.top())
        })
    }

    /// No crossing between two wires that brushed elbows earlier in flow
    /// order.
    pub fn no_cross_after_elbow(&self) -> bool {
        let mut brushed: BTreeSet<(usize, usize)> = BTreeSet::new();
        for meeting in self.trace().meetings {
            let pair = normalize(meeting.wires);
            match meeting.kind {
                MeetingKind::Elbow => {
                    brushed.insert(pair);
                }
                MeetingKind::Cross => {
                    if brushed.contains(&pair) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// No crossing between two wires that will brush elbows later in flow
    /// order.
    pub fn no_cross_before_elbow(&self) -> bool {
        let mut will_brush: BTreeSet<(usize, usize)> = BTreeSet::new();
        for meeting in self.trace().meetings.iter().rev() {
            let pair = normalize(meeting.wires);
            match meeting.kind {
                MeetingKind::Elbow => {
                    will_brush.insert(pair);
                }
                MeetingKind::Cross => {
                    if will_brush.contains(&pair) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn normalize((u, v): (usize, usize)) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Which configurations to keep while enumerating subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigFilter {
    All,
    BottomClosed,
    TopClosed,
    FacetOf(Permutation),
}

impl ConfigFilter {
    /// Parses `"all"`, `"bottom-closed"`, `"top-closed"`, or `"facet:<perm>"`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(ConfigFilter::All),
            "bottom-closed" => Ok(ConfigFilter::BottomClosed),
            "top-closed" => Ok(ConfigFilter::TopClosed),
            _ => {
                if let Some(rest) = s.strip_prefix("facet:") {
                    Ok(ConfigFilter::FacetOf(rest.parse()?))
                } else {
                    Err(Error::PermParse {
                        input: s.to_string(),
                        reason: "unknown filter; expected all, bottom-closed, top-closed, or facet:<permutation>".to_string(),
                    })
                }
            }
        }
    }

    fn keeps(&self, cfg: &PipeConfig) -> Result<bool> {
        Ok(match self {
            ConfigFilter::All => true,
            ConfigFilter::BottomClosed => cfg.is_bottom_closed(),
            ConfigFilter::TopClosed => cfg.is_top_closed(),
            ConfigFilter::FacetOf(s) => cfg.is_facet(s)?,
        })
    }
}

pub const DEFAULT_CELL_GUARD: usize = 24;

/// Enumerates all subsets of the city's cells as elbow sets, in increasing
/// bitmask order over the flow-ordered cells, keeping those passing the
/// filter.
pub fn enumerate_configs(city: &City, filter: ConfigFilter) -> Result<ConfigIter> {
    enumerate_configs_with_guard(city, filter, DEFAULT_CELL_GUARD)
}

pub fn enumerate_configs_with_guard(
    city: &City,
    filter: ConfigFilter,
    guard_cells: usize,
) -> Result<ConfigIter> {
    let n = city.cell_count();
    if n > guard_cells {
        return Err(Error::GuardExceeded(format!(
            "{n} cells exceed the subset enumeration guard of {guard_cells}"
        )));
    }
    if let ConfigFilter::FacetOf(s) = &filter {
        if s.m() != city.m() {
            return Err(Error::SizeMismatch {
                left: s.m(),
                right: city.m(),
            });
        }
    }
    Ok(ConfigIter {
        city: city.clone(),
        filter,
        next_mask: 0,
        end: 1u64 << n,
    })
}

pub struct ConfigIter {
    city: City,
    filter: ConfigFilter,
    next_mask: u64,
    end: u64,
}

impl Iterator for ConfigIter {
    type Item = PipeConfig;

    fn next(&mut self) -> Option<PipeConfig> {
        while self.next_mask < self.end {
            let mask = self.next_mask;
            self.next_mask += 1;
            let elbows: BTreeSet<CellId> = self
                .city
                .cells()
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &c)| c)
                .collect();
            let cfg = PipeConfig {
                city: self.city.clone(),
                elbows,
            };
            if self
                .filter
                .keeps(&cfg)
                .expect("filter size checked upfront")
            {
                return Some(cfg);
            }
        }
        None
    }
}
