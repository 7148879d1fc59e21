//! Classification of a candidate automorphism-group dimension `N` for
//! Reinhardt domains in `ℂⁿ`, with realizing marked partitions and
//! canonical witness domains.

use std::cell::OnceCell;
use std::fmt;

use serde::Serialize;

use crate::dims::{check_omega_scale, DimTable, GeneralTable, DEFAULT_MEMORY_LIMIT, OMEGA_MAX_N};
use crate::error::{Error, Result};
use crate::partition::{
    distinct_of, enumerate_partitions, for_each_marking, sum_of_squares, MarkedPartition,
    Partition,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyTag {
    Ball,
    BallTimesDisc,
    SphericalShell,
    Polydisc3,
    ProductB2B2,
    Egg,
    BallFiberedShell,
    ExpShell,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomainFamily {
    pub tag: FamilyTag,
    pub definition: &'static str,
    pub parameters: Vec<&'static str>,
}

impl DomainFamily {
    fn new(tag: FamilyTag) -> Self {
        let (definition, parameters): (&'static str, Vec<&'static str>) = match tag {
            FamilyTag::Ball => (
                "{z ∈ ℂⁿ : |z| < 1}",
                vec!["up to dilations and permutations of coordinates"],
            ),
            FamilyTag::BallTimesDisc => (
                "Bⁿ⁻¹ × Δ",
                vec!["up to dilations and permutations of coordinates"],
            ),
            FamilyTag::SphericalShell => ("{z ∈ ℂⁿ : r < |z| < R}", vec!["0 ≤ r < R < ∞"]),
            FamilyTag::Polydisc3 => ("Δ³", vec!["n = 3"]),
            FamilyTag::ProductB2B2 => ("B² × B²", vec!["n = 4"]),
            FamilyTag::Egg => (
                "{(z′, zₙ) ∈ ℂⁿ : |z′|² + |zₙ|^α < 1}",
                vec!["α ∈ ℝ", "α ≠ 0, 2"],
            ),
            FamilyTag::BallFiberedShell => (
                "{(z′, zₙ) ∈ ℂⁿ : |z′| < 1, r(1 − |z′|²)^α < |zₙ| < R(1 − |z′|²)^α}",
                vec!["α ∈ ℝ", "0 < r < R ≤ ∞"],
            ),
            FamilyTag::ExpShell => (
                "{(z′, zₙ) ∈ ℂⁿ : r·e^(α|z′|²) < |zₙ| < R·e^(α|z′|²)}",
                vec!["0 < r < R ≤ ∞", "α ∈ ℝ, α ≠ 0", "if R = ∞ then α > 0"],
            ),
        };
        Self {
            tag,
            definition,
            parameters,
        }
    }
}

impl fmt::Display for DomainFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.tag, self.definition)?;
        if !self.parameters.is_empty() {
            write!(f, " [{}]", self.parameters.join("; "))?;
        }
        Ok(())
    }
}

/// Domains whose automorphism group has dimension exactly `n²`, up to
/// algebraic equivalence.
pub fn t9_families(n: u32) -> Result<Vec<DomainFamily>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let mut out = vec![DomainFamily::new(FamilyTag::SphericalShell)];
    if n == 3 {
        out.push(DomainFamily::new(FamilyTag::Polydisc3));
    }
    if n == 4 {
        out.push(DomainFamily::new(FamilyTag::ProductB2B2));
    }
    out.extend(
        [FamilyTag::Egg, FamilyTag::BallFiberedShell, FamilyTag::ExpShell]
            .into_iter()
            .map(DomainFamily::new),
    );
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Realization {
    pub marked: MarkedPartition,
    /// Number of parts.
    pub len: u32,
    /// Number of marked parts.
    pub marks: u32,
}

impl Realization {
    pub fn new(marked: MarkedPartition) -> Self {
        Self {
            len: marked.partition().len() as u32,
            marks: marked.mark_count(),
            marked,
        }
    }

    pub fn dimension(&self) -> u64 {
        self.marked.dimension_value()
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} l={} m={}", self.marked, self.len, self.marks)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizationMode {
    All,
    /// At most one mark, at least two parts, value at most `n² - 2`.
    SmoothBounded,
}

/// Every marked partition of `n` with dimension value `dim`. Marks are
/// sub-multisets, so no marking is listed twice.
pub fn realizations(n: u32, dim: u64, mode: RealizationMode) -> Result<Vec<Realization>> {
    check_omega_scale(n)?;
    let nn = u64::from(n);
    let smooth = mode == RealizationMode::SmoothBounded;
    let mut out = Vec::new();
    if smooth && dim + 2 > nn * nn {
        return Ok(out);
    }
    let mut it = enumerate_partitions(n);
    while let Some(parts) = it.next_parts() {
        if smooth && parts.len() < 2 {
            continue;
        }
        let sq = sum_of_squares(parts);
        if dim < sq || (dim - sq) % 2 != 0 {
            continue;
        }
        let target = (dim - sq) / 2;
        for_each_marking(&distinct_of(parts), None, |marks| {
            let m: u32 = marks.iter().map(|&(_, c)| c).sum();
            if smooth && m > 1 {
                return;
            }
            let sum: u64 = marks.iter().map(|&(v, c)| u64::from(v) * u64::from(c)).sum();
            if sum == target {
                let partition = Partition::new(parts.to_vec()).expect("valid parts");
                out.push(Realization::new(MarkedPartition::from_aligned(
                    partition,
                    marks.to_vec(),
                )));
            }
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Unrealizable,
    Ball,
    BallTimesDisc,
    NSquared,
    NoncompactGood,
    CompactBad,
    GeneralOnly,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Unrealizable => "unrealizable",
            Status::Ball => "ball",
            Status::BallTimesDisc => "ball_times_disc",
            Status::NSquared => "n_squared",
            Status::NoncompactGood => "noncompact_good",
            Status::CompactBad => "compact_bad",
            Status::GeneralOnly => "general_only",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub n: u32,
    pub dim: i64,
    pub status: Status,
    pub families: Vec<DomainFamily>,
    pub realizations: Vec<Realization>,
    pub notes: Vec<String>,
}

/// Classifies dimensions against a table of sums-of-squares sets. The
/// table must cover `n + 1` for the non-compact test.
pub struct Classifier<'a> {
    table: &'a DimTable,
    general: OnceCell<GeneralTable>,
}

impl<'a> Classifier<'a> {
    pub fn new(table: &'a DimTable) -> Self {
        Self {
            table,
            general: OnceCell::new(),
        }
    }

    pub fn classify(&self, n: u32, dim: i64) -> Result<Classification> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        if self.table.n_max() < n + 1 {
            return Err(Error::OutOfRange {
                what: "n (table must cover n + 1)",
                got: n.into(),
                lo: 2,
                hi: self.table.n_max().saturating_sub(1).into(),
            });
        }
        let nn = u64::from(n);
        let n2 = nn * nn;
        let mut out = Classification {
            n,
            dim,
            status: Status::Unrealizable,
            families: Vec::new(),
            realizations: Vec::new(),
            notes: Vec::new(),
        };

        if dim.rem_euclid(2) as u64 != nn % 2 {
            out.notes.push(format!(
                "parity: every dimension for n = {n} is {}",
                if n % 2 == 0 { "even" } else { "odd" }
            ));
        }
        if dim < n as i64 {
            out.notes.push(format!("below the minimum dimension n = {n}"));
        }
        if dim > (n2 + 2 * nn) as i64 {
            out.notes
                .push(format!("above the maximum dimension n² + 2n = {}", n2 + 2 * nn));
        }
        if !out.notes.is_empty() {
            return Ok(out);
        }
        let value = dim as u64;

        if n <= OMEGA_MAX_N {
            out.realizations = realizations(n, value, RealizationMode::All)?;
        } else {
            out.notes.push(format!(
                "realizations are only enumerated for n <= {OMEGA_MAX_N}"
            ));
        }

        if value == n2 + 2 * nn {
            out.status = Status::Ball;
            out.families.push(DomainFamily::new(FamilyTag::Ball));
        } else if value == n2 + 2 {
            out.status = Status::BallTimesDisc;
            out.families.push(DomainFamily::new(FamilyTag::BallTimesDisc));
        } else if value == n2 {
            out.status = Status::NSquared;
            out.families = t9_families(n)?;
        } else if value + 2 > n2 {
            out.notes.push(
                "no dimension lies strictly between n² - 2 and n² + 2n except n² and n² + 2"
                    .into(),
            );
        } else if self.table.set(n)?.contains(value) {
            out.status = Status::CompactBad;
        } else if self.table.big_h_set(n)?.contains(value) {
            out.status = Status::NoncompactGood;
        } else if self.in_omega(n, value, &out.realizations)? {
            out.status = Status::GeneralOnly;
            out.notes
                .push("realizable only with two or more marked blocks".into());
        }
        Ok(out)
    }

    fn in_omega(&self, n: u32, value: u64, found: &[Realization]) -> Result<bool> {
        if n <= OMEGA_MAX_N {
            return Ok(!found.is_empty());
        }
        let general = match self.general.get() {
            Some(g) if g.n_max() >= n => g,
            _ => {
                let g = GeneralTable::build(self.table.n_max(), DEFAULT_MEMORY_LIMIT)?;
                let _ = self.general.set(g);
                self.general.get().expect("just set")
            }
        };
        Ok(general.contains(n, value))
    }
}

/// Convenience wrapper around [`Classifier::classify`].
pub fn classify_dimension(table: &DimTable, n: u32, dim: i64) -> Result<Classification> {
    Classifier::new(table).classify(n, dim)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Construction {
    /// Generalized egg `Σ |zⁱ|^{2sᵢ} < 1`, compact automorphism group.
    DQ,
    /// `|z^{i₀}|² + Σ_{i≠i₀} |zⁱ|^{2sᵢ} < 1`, one ball-like block.
    DI0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessBlock {
    pub size: u32,
    /// Exponent on `|zⁱ|`: 2 for the distinguished block, `2sᵢ` otherwise.
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessDomain {
    pub blocks: Vec<WitnessBlock>,
    pub inequality: String,
    pub claimed_dimension: u64,
    pub construction: Construction,
    pub label: &'static str,
}

pub const WITNESS_LABEL: &str =
    "canonical candidate; automorphism group not formally verified by this tool";

impl WitnessDomain {
    /// The defining inequality with `^` exponents, e.g. `|z1|^2+|z2|^4<1`.
    pub fn ascii_inequality(&self) -> String {
        render(&self.blocks, false)
    }
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

fn render(blocks: &[WitnessBlock], unicode: bool) -> String {
    let terms: Vec<String> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let idx = i as u32 + 1;
            if unicode {
                format!("|z{}|{}", superscript(idx), superscript(b.exponent))
            } else {
                format!("|z{idx}|^{}", b.exponent)
            }
        })
        .collect();
    format!("{}<1", terms.join("+"))
}

/// Canonical Reinhardt domain realizing a smooth-bounded value. The marked
/// block (if any) comes first with exponent 2; unmarked blocks follow in
/// partition order with exponents `2s`, `s = 2, 3, ..`.
pub fn make_witness(r: &Realization) -> Result<WitnessDomain> {
    if r.marks > 1 {
        return Err(Error::NoWitness(format!(
            "{r} has {} marked blocks; smooth bounded domains only realize m = 0 or 1",
            r.marks
        )));
    }
    if r.len < 2 {
        return Err(Error::NoWitness(format!(
            "{r} has a single block; use the ball or the n² families instead"
        )));
    }
    let parts = r.marked.partition().parts();
    let marked = r.marked.marked_blocks().first().copied();
    let mut blocks: Vec<WitnessBlock> = Vec::with_capacity(parts.len());
    if let Some(i) = marked {
        blocks.push(WitnessBlock {
            size: parts[i],
            exponent: 2,
        });
    }
    let mut s = 2;
    for (i, &size) in parts.iter().enumerate() {
        if Some(i) != marked {
            blocks.push(WitnessBlock {
                size,
                exponent: 2 * s,
            });
            s += 1;
        }
    }
    let claimed_dimension =
        r.marked.partition().sum_of_squares() + marked.map_or(0, |i| 2 * u64::from(parts[i]));
    Ok(WitnessDomain {
        inequality: render(&blocks, true),
        blocks,
        claimed_dimension,
        construction: if marked.is_some() {
            Construction::DI0
        } else {
            Construction::DQ
        },
        label: WITNESS_LABEL,
    })
}
