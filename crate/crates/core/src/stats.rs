//! Size-binned null-model comparison of anchored triad censuses.
//!
//! Censuses are grouped by user count. Within each bin the baseline corpus
//! supplies a per-class mean and population standard deviation, and the
//! focus corpus is scored as `Z = (mean_focus - mu_null) / sigma_null`,
//! which equals the average of the per-graph standardized counts.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::census::Census;
use crate::error::Error;
use crate::NUM_CLASSES;

/// Inclusive node-count range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinRange {
    pub lo: usize,
    pub hi: usize,
}

impl BinRange {
    pub fn contains(self, n: usize) -> bool {
        (self.lo..=self.hi).contains(&n)
    }
}

impl fmt::Display for BinRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinSpec {
    ranges: Vec<BinRange>,
}

impl BinSpec {
    /// Ranges must be non-empty, ascending and disjoint.
    pub fn new(ranges: Vec<BinRange>) -> Result<Self, Error> {
        if ranges.is_empty() {
            return Err(Error::InvalidBins(String::from("no ranges")));
        }
        for r in &ranges {
            if r.lo > r.hi {
                return Err(Error::InvalidBins(alloc::format!("empty range {r}")));
            }
        }
        for w in ranges.windows(2) {
            if w[1].lo <= w[0].hi {
                return Err(Error::InvalidBins(alloc::format!(
                    "range {} overlaps or precedes {}",
                    w[1],
                    w[0]
                )));
            }
        }
        Ok(BinSpec { ranges })
    }

    pub fn ranges(&self) -> &[BinRange] {
        &self.ranges
    }

    pub fn len(&self) -> usize {
        self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn bin_of(&self, n_users: usize) -> Option<usize> {
        self.ranges.iter().position(|r| r.contains(n_users))
    }
}

impl Default for BinSpec {
    /// `1-5, 6-10, ..., 36-40`.
    fn default() -> Self {
        let ranges = (0..8).map(|i| BinRange { lo: 5 * i + 1, hi: 5 * i + 5 }).collect();
        BinSpec { ranges }
    }
}

impl FromStr for BinSpec {
    type Err = Error;

    /// Parses `"1-5,6-10,11-15"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |what: &str| Error::InvalidBins(alloc::format!("cannot parse {what:?}"));
        let ranges = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                let (lo, hi) = part.split_once('-').ok_or_else(|| bad(part))?;
                let lo = lo.trim().parse().map_err(|_| bad(part))?;
                let hi = hi.trim().parse().map_err(|_| bad(part))?;
                Ok(BinRange { lo, hi })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        BinSpec::new(ranges)
    }
}

impl fmt::Display for BinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.ranges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Class-count vectors grouped by bin.
#[derive(Debug, Clone, PartialEq)]
pub struct Binned {
    pub spec: BinSpec,
    pub groups: Vec<Vec<[u64; NUM_CLASSES]>>,
    /// Censuses whose size falls outside every range.
    pub unbinned: usize,
}

pub fn assign_bins<'a, I>(censuses: I, spec: &BinSpec) -> Binned
where
    I: IntoIterator<Item = &'a Census>,
{
    let mut groups = alloc::vec![Vec::new(); spec.len()];
    let mut unbinned = 0;
    for c in censuses {
        match spec.bin_of(c.n_users) {
            Some(b) => groups[b].push(c.counts),
            None => unbinned += 1,
        }
    }
    Binned {
        spec: spec.clone(),
        groups,
        unbinned,
    }
}

/// Mean and population standard deviation of one class within one bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
}

impl Moments {
    pub fn of(samples: impl Iterator<Item = u64> + Clone) -> Option<Moments> {
        let n = samples.clone().count();
        if n == 0 {
            return None;
        }
        let mean = samples.clone().map(|x| x as f64).sum::<f64>() / n as f64;
        let var = samples
            .map(|x| {
                let d = x as f64 - mean;
                d * d
            })
            .sum::<f64>()
            / n as f64;
        Some(Moments {
            n,
            mean,
            sd: libm::sqrt(var),
        })
    }

    /// `sd / sqrt(n)`.
    pub fn standard_error(&self) -> f64 {
        self.sd / libm::sqrt(self.n as f64)
    }
}

fn bin_moments(group: &[[u64; NUM_CLASSES]]) -> Option<Vec<Moments>> {
    (0..NUM_CLASSES)
        .map(|i| Moments::of(group.iter().map(move |c| c[i])))
        .collect()
}

/// Baseline statistics per bin; `None` marks an empty bin.
#[derive(Debug, Clone, PartialEq)]
pub struct NullModel {
    pub spec: BinSpec,
    pub bins: Vec<Option<Vec<Moments>>>,
}

impl NullModel {
    pub fn graphs_in(&self, bin: usize) -> usize {
        self.bins[bin].as_ref().map_or(0, |m| m[0].n)
    }
}

pub fn fit_null_model(baseline: &Binned) -> NullModel {
    NullModel {
        spec: baseline.spec.clone(),
        bins: baseline.groups.iter().map(|g| bin_moments(g)).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Undefined {
    EmptyBaselineBin,
    EmptyFocusBin,
    ZeroBaselineVariance,
}

impl Undefined {
    pub fn reason(self) -> &'static str {
        match self {
            Undefined::EmptyBaselineBin => "empty baseline bin",
            Undefined::EmptyFocusBin => "empty focus bin",
            Undefined::ZeroBaselineVariance => "zero baseline variance",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expression {
    Over,
    Under,
    Equal,
    Rare,
}

impl Expression {
    pub fn as_str(self) -> &'static str {
        match self {
            Expression::Over => "over",
            Expression::Under => "under",
            Expression::Equal => "equal",
            Expression::Rare => "rare",
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One (bin, class) comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ZCell {
    pub bin: usize,
    pub class: usize,
    pub null: Option<Moments>,
    pub focus: Option<Moments>,
    pub z: Result<f64, Undefined>,
    /// Filled in by [`classify_expression`].
    pub label: Option<Expression>,
}

impl ZCell {
    pub fn z_value(&self) -> Option<f64> {
        self.z.ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZReport {
    pub spec: BinSpec,
    /// Bin-major: `cells[bin * NUM_CLASSES + class]`.
    pub cells: Vec<ZCell>,
}

impl ZReport {
    pub fn cell(&self, bin: usize, class: usize) -> &ZCell {
        &self.cells[bin * NUM_CLASSES + class]
    }

    pub fn bins(&self) -> usize {
        self.spec.len()
    }
}

pub fn z_scores(focus: &Binned, null: &NullModel) -> ZReport {
    let mut cells = Vec::with_capacity(null.bins.len() * NUM_CLASSES);
    for (bin, null_bin) in null.bins.iter().enumerate() {
        let focus_bin = focus.groups.get(bin).and_then(|g| bin_moments(g));
        for class in 0..NUM_CLASSES {
            let nm = null_bin.as_ref().map(|m| m[class]);
            let fm = focus_bin.as_ref().map(|m| m[class]);
            let z = match (nm, fm) {
                (None, _) => Err(Undefined::EmptyBaselineBin),
                (_, None) => Err(Undefined::EmptyFocusBin),
                (Some(n), _) if n.sd == 0.0 => Err(Undefined::ZeroBaselineVariance),
                (Some(n), Some(f)) => Ok((f.mean - n.mean) / n.sd),
            };
            cells.push(ZCell {
                bin,
                class,
                null: nm,
                focus: fm,
                z,
                label: None,
            });
        }
    }
    ZReport {
        spec: null.spec.clone(),
        cells,
    }
}

/// Corpus-level verdict for one class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassExpression {
    pub class: usize,
    pub rare: bool,
    /// Bins with `Z > 1`.
    pub over_bins: Vec<usize>,
    /// Bins with `Z < -1`.
    pub under_bins: Vec<usize>,
}

impl ClassExpression {
    /// `rare`, `equal`, or whichever of `over` / `under` apply (both may).
    pub fn labels(&self) -> Vec<Expression> {
        if self.rare {
            return alloc::vec![Expression::Rare];
        }
        let mut out = Vec::new();
        if !self.over_bins.is_empty() {
            out.push(Expression::Over);
        }
        if !self.under_bins.is_empty() {
            out.push(Expression::Under);
        }
        if out.is_empty() {
            out.push(Expression::Equal);
        }
        out
    }

    pub fn is_over(&self) -> bool {
        !self.rare && !self.over_bins.is_empty()
    }

    pub fn is_under(&self) -> bool {
        !self.rare && !self.under_bins.is_empty()
    }
}

/// Labels every cell and summarizes each class.
///
/// A class is rare when no bin of either corpus has a mean count above
/// `rarity_threshold`; every cell of a rare class is labelled rare. Other
/// cells are over (`Z > 1`), under (`Z < -1`) or equal; cells with an
/// undefined Z stay unlabelled.
pub fn classify_expression(report: &mut ZReport, rarity_threshold: f64) -> Vec<ClassExpression> {
    let mut summary: Vec<ClassExpression> = (0..NUM_CLASSES)
        .map(|class| ClassExpression {
            class,
            rare: true,
            over_bins: Vec::new(),
            under_bins: Vec::new(),
        })
        .collect();
    for cell in &report.cells {
        let populated = [cell.null, cell.focus]
            .iter()
            .flatten()
            .any(|m| m.mean > rarity_threshold);
        if populated {
            summary[cell.class].rare = false;
        }
    }
    for cell in &mut report.cells {
        let s = &mut summary[cell.class];
        cell.label = if s.rare {
            Some(Expression::Rare)
        } else {
            match cell.z {
                Ok(z) if z > 1.0 => {
                    s.over_bins.push(cell.bin);
                    Some(Expression::Over)
                }
                Ok(z) if z < -1.0 => {
                    s.under_bins.push(cell.bin);
                    Some(Expression::Under)
                }
                Ok(_) => Some(Expression::Equal),
                Err(_) => None,
            }
        };
    }
    summary
}
