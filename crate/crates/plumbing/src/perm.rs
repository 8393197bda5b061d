//! Permutations of `[m]`, words in adjacent transpositions, Bruhat order,
//! Demazure (0-Hecke) products, and constrained permutation enumerators.
//!
//! Composition convention, used everywhere in this crate:
//! `compose(p, q)(i) = p(q(i))` — `q` acts first. A letter `k` of a [`Word`]
//! is the adjacent transposition swapping the *values* `k` and `k+1`, i.e. it
//! multiplies on the left: after processing letters `c1, c2, …` the
//! accumulated product is `s(c_last) ∘ … ∘ s(c2) ∘ s(c1)`. This is exactly
//! what wire tracing does: a crossing in slots `(k, k+1)` swaps the slots of
//! the two wires currently there, which rewrites the slot assignment by
//! `σ ↦ s_k ∘ σ`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `[m] = {1, …, m}` in one-line notation.
///
/// Position `i` (1-based) holds the image `σ(i)`.
///
/// ```
/// use plumbing::Permutation;
/// let p: Permutation = "2413".parse().unwrap();
/// assert_eq!(p.image(2), 4);
/// assert_eq!(p.length(), 3);
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity permutation of `[m]`.
    pub fn identity(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroSize);
        }
        Ok(Permutation {
            images: (1..=m).collect(),
        })
    }

    /// Builds a permutation from its one-line notation (1-based values).
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        if m == 0 {
            return Err(Error::ZeroSize);
        }
        let mut seen = vec![false; m + 1];
        for &v in &images {
            if v == 0 || v > m || seen[v] {
                return Err(Error::NotBijection(images.clone(), m));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn m(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)` with a 1-based position.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// 1-based position of a value: `σ⁻¹(v)`.
    pub fn position_of(&self, v: usize) -> usize {
        self.images
            .iter()
            .position(|&w| w == v)
            .expect("value in range")
            + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Coxeter length: the number of inversions `#{i < j : σ(i) > σ(j)}`.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `self ∘ q`: applies `q` first, then `self`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.m() != q.m() {
            return Err(Error::SizeMismatch {
                left: self.m(),
                right: q.m(),
            });
        }
        Ok(Permutation {
            images: q.images.iter().map(|&v| self.images[v - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Left multiplication by the adjacent transposition of values `k, k+1`.
    pub fn lmul_adjacent(&self, k: usize) -> Permutation {
        let images = self
            .images
            .iter()
            .map(|&v| {
                if v == k {
                    k + 1
                } else if v == k + 1 {
                    k
                } else {
                    v
                }
            })
            .collect();
        Permutation { images }
    }

    /// Whether left multiplication by `s_k` increases length.
    ///
    /// Equivalent to the value `k` appearing before `k+1` in one-line order.
    pub fn lmul_lengthens(&self, k: usize) -> bool {
        for &v in &self.images {
            if v == k {
                return true;
            }
            if v == k + 1 {
                return false;
            }
        }
        unreachable!("k and k+1 are both values of the permutation")
    }

    /// The rank table `R(i, j) = #{k ≤ i : σ(k) ≤ j}` as an m×m matrix.
    fn rank_table(&self) -> Vec<Vec<usize>> {
        let m = self.m();
        let mut table = vec![vec![0usize; m + 1]; m + 1];
        #[allow(clippy::needless_range_loop)]
        for i in 1..=m {
            for j in 1..=m {
                table[i][j] = table[i - 1][j] + usize::from(self.images[i - 1] <= j);
            }
        }
        table
    }

    /// Strong Bruhat order: `self ≤ t` iff
    /// `#{k ≤ i : self(k) ≤ j} ≥ #{k ≤ i : t(k) ≤ j}` for all `i, j`.
    pub fn bruhat_leq(&self, t: &Permutation) -> Result<bool> {
        if self.m() != t.m() {
            return Err(Error::SizeMismatch {
                left: self.m(),
                right: t.m(),
            });
        }
        let m = self.m();
        let rs = self.rank_table();
        let rt = t.rank_table();
        for i in 1..=m {
            for j in 1..=m {
                if rs[i][j] < rt[i][j] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// A reduced word for `self`, in fold order:
    /// `Word::ordinary_product` of the result returns `self` and its length
    /// equals `self.length()`.
    pub fn reduced_word(&self) -> Word {
        let m = self.m();
        let mut delta = self.clone();
        let mut letters = Vec::with_capacity(self.length());
        'outer: while !delta.is_identity() {
            for k in 1..m {
                if !delta.lmul_lengthens(k) {
                    // s_k shortens delta
                    letters.push(k);
                    delta = delta.lmul_adjacent(k);
                    continue 'outer;
                }
            }
            unreachable!("a non-identity permutation has a left descent");
        }
        letters.reverse();
        Word::new(m, letters).expect("letters are in range by construction")
    }

    /// Yoshi test on `[2n]`: `σ(i) ≤ 2i` and `σ(2n−i+1) ≥ 2(n−i)+1` for `i ∈ [n]`.
    pub fn is_yoshi(&self) -> Result<bool> {
        let n = self.even_half()?;
        for i in 1..=n {
            if self.image(i) > 2 * i || self.image(2 * n - i + 1) < 2 * (n - i) + 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Strict variant: `σ(i) < 2i` and `σ(2n−i+1) > 2(n−i)+1` for `i ∈ [n]`.
    pub fn is_yoshi_derangement(&self) -> Result<bool> {
        let n = self.even_half()?;
        for i in 1..=n {
            if self.image(i) >= 2 * i || self.image(2 * n - i + 1) <= 2 * (n - i) + 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Dumont-type test on `[2n]`: `σ(2i−1) ≥ 2i−1` and `σ(2i) ≤ 2i` for `i ∈ [n]`.
    pub fn is_dumont_type(&self) -> Result<bool> {
        let n = self.even_half()?;
        for i in 1..=n {
            if self.image(2 * i - 1) < 2 * i - 1 || self.image(2 * i) > 2 * i {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn even_half(&self) -> Result<usize> {
        let m = self.m();
        if !m.is_multiple_of(2) {
            return Err(Error::OddSize(m));
        }
        Ok(m / 2)
    }
}

impl fmt::Display for Permutation {
    /// Digit string for `m ≤ 9` (e.g. `351624`), comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m() <= 9 {
            for &v in &self.images {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts both the digit-string form (`"2413"`) and the comma form
    /// (`"2,4,1,3"`).
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::PermParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<usize>()
                        .map_err(|_| parse_err("not an integer"))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| parse_err("not a digit"))
                })
                .collect::<Result<_>>()?
        };
        if values.is_empty() {
            return Err(parse_err("empty"));
        }
        let n = values.len();
        Permutation::from_images(values)
            .map_err(|_| parse_err(&format!("values are not a permutation of 1..={n}")))
    }
}

/// A word in adjacent transpositions: letters in `[1, m−1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    m: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(m: usize, letters: Vec<usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroSize);
        }
        for &c in &letters {
            if c == 0 || c >= m {
                return Err(Error::LetterOutOfRange {
                    letter: c,
                    max: m - 1,
                });
            }
        }
        Ok(Word { m, letters })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Plain product: fold with unconditional left multiplication.
    ///
    /// This matches wire tracing through a grid with crossings everywhere.
    pub fn ordinary_product(&self) -> Permutation {
        let mut delta = Permutation::identity(self.m).expect("m >= 1");
        for &c in &self.letters {
            delta = delta.lmul_adjacent(c);
        }
        delta
    }

    /// Demazure (0-Hecke) product: a letter is absorbed whenever it would
    /// shorten the accumulated product.
    pub fn demazure_product(&self) -> Permutation {
        let mut delta = Permutation::identity(self.m).expect("m >= 1");
        for &c in &self.letters {
            if delta.lmul_lengthens(c) {
                delta = delta.lmul_adjacent(c);
            }
        }
        delta
    }

    /// A word is reduced when its plain product has length equal to the
    /// word's length.
    pub fn is_reduced(&self) -> bool {
        self.ordinary_product().length() == self.letters.len()
    }
}

/// Per-position value bounds: `lo(i) ≤ σ(i) ≤ hi(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsProfile {
    lo: Vec<usize>,
    hi: Vec<usize>,
}

impl BoundsProfile {
    pub fn new(lo: Vec<usize>, hi: Vec<usize>) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(Error::InvalidBounds);
        }
        let m = lo.len();
        for i in 0..m {
            if lo[i] < 1 || lo[i] > hi[i] || hi[i] > m {
                return Err(Error::InvalidBounds);
            }
        }
        Ok(BoundsProfile { lo, hi })
    }

    pub fn m(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[usize] {
        &self.lo
    }

    pub fn hi(&self) -> &[usize] {
        &self.hi
    }

    /// `lo(i) ≤ p(i) ≤ hi(i)` for all positions.
    pub fn satisfied_by(&self, p: &Permutation) -> Result<bool> {
        if p.m() != self.m() {
            return Err(Error::SizeMismatch {
                left: p.m(),
                right: self.m(),
            });
        }
        Ok((0..self.m()).all(|i| {
            let v = p.images()[i];
            self.lo[i] <= v && v <= self.hi[i]
        }))
    }

    /// The Yoshi box on `[2n]`: position `i` allows values `≤ 2i`,
    /// position `2n−i+1` requires values `≥ 2(n−i)+1`.
    pub fn yoshi(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let m = 2 * n;
        let lo = (1..=m)
            .map(|j| if j > n { 2 * (j - n) - 1 } else { 1 })
            .collect();
        let hi = (1..=m).map(|j| (2 * j).min(m)).collect();
        BoundsProfile::new(lo, hi)
    }

    /// Strict variant of the Yoshi box.
    pub fn yoshi_derangement(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let m = 2 * n;
        let lo = (1..=m)
            .map(|j| if 2 * j > m { (2 * (j - n)).max(1) } else { 1 })
            .collect();
        let hi = (1..=m).map(|j| (2 * j - 1).min(m)).collect();
        BoundsProfile::new(lo, hi)
    }

    /// Dumont-type box on `[2n]`: odd positions bounded below by themselves,
    /// even positions bounded above by themselves.
    pub fn dumont(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let m = 2 * n;
        let lo = (1..=m).map(|j| if j % 2 == 1 { j } else { 1 }).collect();
        let hi = (1..=m).map(|j| if j % 2 == 0 { j } else { m }).collect();
        BoundsProfile::new(lo, hi)
    }

    /// All permutations inside the box, in lexicographic order.
    pub fn enumerate_box(&self) -> BoundedPerms {
        BoundedPerms::new(self.clone())
    }
}

/// Backtracking enumerator for permutations inside a [`BoundsProfile`] box.
///
/// Values are assigned position by position in increasing order, so the
/// output stream is strictly lexicographically increasing. Prefixes are
/// pruned with a counting feasibility check: for every remaining lower
/// bound `t` there must be enough unused values `≥ t` to fill the remaining
/// positions requiring them (and dually for upper bounds).
pub struct BoundedPerms {
    bounds: BoundsProfile,
    m: usize,
    prefix: Vec<usize>,
    used: Vec<bool>,
    next_try: Vec<usize>,
    // distinct thresholds with, per depth d, the number of positions > d
    // whose lower bound is >= t (resp. upper bound <= t)
    lo_thresholds: Vec<(usize, Vec<usize>)>,
    hi_thresholds: Vec<(usize, Vec<usize>)>,
    done: bool,
}

impl BoundedPerms {
    fn new(bounds: BoundsProfile) -> Self {
        let m = bounds.m();
        let mut lo_vals: Vec<usize> = bounds.lo.clone();
        lo_vals.sort_unstable();
        lo_vals.dedup();
        let mut hi_vals: Vec<usize> = bounds.hi.clone();
        hi_vals.sort_unstable();
        hi_vals.dedup();
        let suffix_counts = |pred: &dyn Fn(usize) -> bool| -> Vec<usize> {
            // counts[d] = #{positions with index >= d (0-based) satisfying pred}
            let mut counts = vec![0; m + 1];
            for d in (0..m).rev() {
                counts[d] = counts[d + 1] + usize::from(pred(d));
            }
            counts
        };
        let lo_thresholds = lo_vals
            .into_iter()
            .map(|t| (t, suffix_counts(&|d| bounds.lo[d] >= t)))
            .collect();
        let hi_thresholds = hi_vals
            .into_iter()
            .map(|t| (t, suffix_counts(&|d| bounds.hi[d] <= t)))
            .collect();
        BoundedPerms {
            m,
            prefix: Vec::with_capacity(m),
            used: vec![false; m + 1],
            next_try: vec![1; m],
            lo_thresholds,
            hi_thresholds,
            done: false,
            bounds,
        }
    }

    /// Checks that positions `d..m` (0-based) can still be filled.
    fn suffix_feasible(&self, d: usize) -> bool {
        let unused_total = self.m - d;
        // ge[v] = #unused values >= v
        let mut ge = vec![0usize; self.m + 2];
        for v in (1..=self.m).rev() {
            ge[v] = ge[v + 1] + usize::from(!self.used[v]);
        }
        for (t, counts) in &self.lo_thresholds {
            if ge[*t] < counts[d] {
                return false;
            }
        }
        for (t, counts) in &self.hi_thresholds {
            if unused_total - ge[*t + 1] < counts[d] {
                return false;
            }
        }
        true
    }

    fn pop(&mut self) {
        let v = self.prefix.pop().expect("pop on nonempty prefix");
        self.used[v] = false;
    }
}

impl Iterator for BoundedPerms {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        loop {
            let d = self.prefix.len();
            if d == self.m {
                let out = Permutation {
                    images: self.prefix.clone(),
                };
                self.pop();
                return Some(out);
            }
            let mut v = self.next_try[d].max(self.bounds.lo[d]);
            while v <= self.bounds.hi[d] && self.used[v] {
                v += 1;
            }
            if v > self.bounds.hi[d] {
                self.next_try[d] = 1;
                if d == 0 {
                    self.done = true;
                    return None;
                }
                self.pop();
            } else {
                self.next_try[d] = v + 1;
                self.used[v] = true;
                self.prefix.push(v);
                if !self.suffix_feasible(d + 1) {
                    self.pop();
                }
            }
        }
    }
}

/// All Yoshi permutations of `[2n]`, lexicographically increasing.
///
/// Backtracks over one-line values, pruning with the per-position upper
/// bounds and the suffix lower-bound feasibility count.
pub fn enumerate_yoshi_permutations(n: usize) -> Result<BoundedPerms> {
    Ok(BoundsProfile::yoshi(n)?.enumerate_box())
}

/// All permutations `σ ≤ t` in strong Bruhat order, lexicographically
/// increasing.
///
/// Backtracks over one-line prefixes; a prefix is cut as soon as one of its
/// rank counts falls below the corresponding count of `t`, which can never
/// be repaired by later values.
pub fn enumerate_lower_interval(t: &Permutation) -> LowerInterval {
    LowerInterval::new(t)
}

pub struct LowerInterval {
    m: usize,
    // rank table of t: rt[i][j] with 1-based i, j
    rt: Vec<Vec<usize>>,
    prefix: Vec<usize>,
    // stack of cumulative rank rows; row[d] corresponds to prefix length d
    rows: Vec<Vec<usize>>,
    used: Vec<bool>,
    next_try: Vec<usize>,
    done: bool,
}

impl LowerInterval {
    fn new(t: &Permutation) -> Self {
        let m = t.m();
        LowerInterval {
            m,
            rt: t.rank_table(),
            prefix: Vec::with_capacity(m),
            rows: vec![vec![0; m + 1]],
            used: vec![false; m + 1],
            next_try: vec![1; m],
            done: false,
        }
    }

    fn pop(&mut self) {
        let v = self.prefix.pop().expect("pop on nonempty prefix");
        self.used[v] = false;
        self.rows.pop();
    }
}

impl Iterator for LowerInterval {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        loop {
            let d = self.prefix.len();
            if d == self.m {
                let out = Permutation {
                    images: self.prefix.clone(),
                };
                self.pop();
                return Some(out);
            }
            let mut v = self.next_try[d];
            while v <= self.m && self.used[v] {
                v += 1;
            }
            if v > self.m {
                self.next_try[d] = 1;
                if d == 0 {
                    self.done = true;
                    return None;
                }
                self.pop();
            } else {
                self.next_try[d] = v + 1;
                // build the rank row for prefix extended by v and check it
                let prev = self.rows.last().expect("row stack nonempty");
                let mut row = prev.clone();
                for entry in row.iter_mut().skip(v) {
                    *entry += 1;
                }
                let i = d + 1;
                let ok = (1..=self.m).all(|j| row[j] >= self.rt[i][j]);
                if ok {
                    self.used[v] = true;
                    self.prefix.push(v);
                    self.rows.push(row);
                }
            }
        }
    }
}
