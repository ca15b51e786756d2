//! Gap widths aggregated by simple closed geodesic and compared with `2/(1+e^ℓ)`.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cutting::{catalog::slope_of, Cutter, Gap};
use crate::error::{Error, Result};
use crate::exact::{length_from_trace, BoundaryPoint, Quadratic, Surd};
use crate::surface::SurfaceGroup;

/// `a + b·√d` with a fixed radicand, or plain rational when `b = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct QuadraticSum {
    rat: BigRational,
    irr: BigRational,
    radicand: BigInt,
}

impl QuadraticSum {
    fn of(x: &BoundaryPoint) -> Option<QuadraticSum> {
        match x {
            BoundaryPoint::Rational(r) => Some(QuadraticSum { rat: r.clone(), irr: BigRational::zero(), radicand: BigInt::one() }),
            BoundaryPoint::Surd(s) => Some(QuadraticSum { rat: s.rat.clone(), irr: s.irr.clone(), radicand: s.radicand.clone() }),
            _ => None,
        }
    }

    fn add(&self, other: &QuadraticSum, sign: i64) -> Option<QuadraticSum> {
        let s = BigRational::from_integer(BigInt::from(sign));
        let radicand = if self.irr.is_zero() {
            other.radicand.clone()
        } else if other.irr.is_zero() || self.radicand == other.radicand {
            self.radicand.clone()
        } else {
            return None;
        };
        Some(QuadraticSum { rat: &self.rat + &other.rat * &s, irr: &self.irr + &other.irr * &s, radicand })
    }

    fn scaled(&self, f: &BigRational) -> QuadraticSum {
        QuadraticSum { rat: &self.rat * f, irr: &self.irr * f, radicand: self.radicand.clone() }
    }

    fn value(&self) -> Result<Quadratic> {
        Surd::build(self.rat.clone(), self.irr.clone(), self.radicand.clone())
    }

    fn render(&self) -> Result<String> {
        Ok(match self.value()? {
            Quadratic::Rational(r) => r.to_string(),
            Quadratic::Surd(s) => s.to_string(),
        })
    }
}

fn same_value(x: &Quadratic, y: &Quadratic) -> bool {
    match (x, y) {
        (Quadratic::Rational(a), Quadratic::Rational(b)) => a == b,
        (Quadratic::Surd(a), Quadratic::Surd(b)) => a == b,
        _ => false,
    }
}

/// Exact `right − left` of a gap, when both ends share a radicand.
fn exact_width(g: &Gap) -> Option<QuadraticSum> {
    QuadraticSum::of(&g.i_full.right)?.add(&QuadraticSum::of(&g.i_full.left)?, -1)
}

fn float_width(g: &Gap) -> Result<f64> {
    let (lo, _) = g.i_full.right.enclosure(96).ok_or(Error::NotRational)?;
    let (_, hi) = g.i_full.left.enclosure(96).ok_or(Error::NotRational)?;
    Ok((lo - hi).to_f64().unwrap_or(f64::NAN))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassAggregate {
    pub record: String,
    /// Least cyclic rotation of the geodesic's word or its inverse.
    pub key: String,
    pub trace: String,
    pub slope: (i64, i64),
    pub gaps: usize,
    pub length: f64,
    /// Total width of the class's gaps divided by `c`, exact when expressible.
    pub width: String,
    pub width_value: f64,
    /// `2/(1+e^ℓ) = 1 − √(t²−4)/t` for trace `t`.
    pub predicted: String,
    pub predicted_value: f64,
    pub error: f64,
    pub exact_match: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialSum {
    pub depth: usize,
    pub gaps: usize,
    pub width: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McShaneSummary {
    pub record: String,
    pub depth: usize,
    pub gaps: usize,
    pub total_width: f64,
    pub partial_sums: Vec<PartialSum>,
    pub monotone: bool,
    /// Widths recomputed after translating every gap by one period agree exactly.
    pub periodic: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct McShaneReport {
    pub summary: McShaneSummary,
    pub classes: Vec<ClassAggregate>,
}

impl McShaneReport {
    pub fn class_with_trace(&self, trace: i64) -> Vec<&ClassAggregate> {
        let t = trace.to_string();
        self.classes.iter().filter(|c| c.trace == t).collect()
    }

    /// One summary line followed by one line per class.
    pub fn write_lines(&self, out: &mut impl Write) -> Result<()> {
        let line = serde_json::to_string(&self.summary).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out, "{line}")?;
        for c in &self.classes {
            let line = serde_json::to_string(c).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(out, "{line}")?;
        }
        Ok(())
    }
}

fn predicted(trace: &BigInt) -> Result<(QuadraticSum, f64)> {
    let t = BigRational::from_integer(trace.abs());
    let exact = QuadraticSum { rat: BigRational::one(), irr: -(BigRational::one() / &t), radicand: trace * trace - 4 };
    let ell = length_from_trace(trace);
    Ok((exact, 2.0 / (1.0 + ell.exp())))
}

fn class_aggregate(surface: &SurfaceGroup, key: String, gaps: &[&Gap]) -> Result<ClassAggregate> {
    let c = surface.cusp_width();
    let inv_c = BigRational::one() / c;
    let g = gaps[0];
    let trace = g.g_pq.matrix().abs_trace();
    let mut exact: Option<QuadraticSum> = Some(QuadraticSum {
        rat: BigRational::zero(),
        irr: BigRational::zero(),
        radicand: BigInt::one(),
    });
    let mut value = 0.0;
    for g in gaps {
        exact = exact.and_then(|s| s.add(&exact_width(g)?, 1));
        value += float_width(g)?;
    }
    value /= c.to_f64().unwrap_or(f64::NAN);
    let (want, want_value) = predicted(&trace)?;
    let (width, exact_match) = match exact.map(|s| s.scaled(&inv_c)) {
        Some(s) => (s.render()?, same_value(&s.value()?, &want.value()?)),
        None => (String::new(), false),
    };
    Ok(ClassAggregate {
        record: "class".into(),
        key,
        trace: trace.to_string(),
        slope: slope_of(g.g_pq.word()),
        gaps: gaps.len(),
        length: length_from_trace(&trace),
        width,
        width_value: value,
        predicted: want.render()?,
        predicted_value: want_value,
        error: (value - want_value).abs(),
        exact_match,
    })
}

impl Cutter {
    /// Gap widths at word-length budget `depth`, in total and per simple closed geodesic.
    pub fn mcshane_report(&self, depth: usize) -> Result<McShaneReport> {
        let s = self.surface();
        let base = s.parabolic_witness(&BoundaryPoint::Infinity)?;
        let gaps = if depth == 0 { Vec::new() } else { self.enumerate_gaps(&base, depth)? };
        let c = s.cusp_width().to_f64().unwrap_or(f64::NAN);
        let widths = gaps.iter().map(float_width).collect::<Result<Vec<f64>>>()?;
        let partial_sums: Vec<PartialSum> = (0..=depth)
            .map(|d| {
                let (n, w) = gaps
                    .iter()
                    .zip(&widths)
                    .filter(|(g, _)| g.g_pq.len() <= d)
                    .fold((0, 0.0), |(n, t), (_, w)| (n + 1, t + w));
                PartialSum { depth: d, gaps: n, width: w / c }
            })
            .collect();
        let monotone = partial_sums.windows(2).all(|w| w[0].width <= w[1].width)
            && partial_sums.last().is_none_or(|p| p.width <= 1.0);
        let shift = s.cusp_translation(&BigInt::one());
        let mut periodic = true;
        for g in &gaps {
            let moved = g.transport(s, &shift)?;
            let same = match (exact_width(g), exact_width(&moved)) {
                (Some(a), Some(b)) => same_value(&a.value()?, &b.value()?),
                _ => false,
            };
            periodic &= same;
        }
        let mut by_class: BTreeMap<(BigInt, String), Vec<&Gap>> = BTreeMap::new();
        for g in &gaps {
            let key = g.g_pq.word().conjugacy_key().to_string();
            by_class.entry((g.g_pq.matrix().abs_trace(), key)).or_default().push(g);
        }
        let classes = by_class
            .into_iter()
            .map(|((_, key), v)| class_aggregate(s, key, &v))
            .collect::<Result<Vec<_>>>()?;
        Ok(McShaneReport {
            summary: McShaneSummary {
                record: "summary".into(),
                depth,
                gaps: gaps.len(),
                total_width: widths.iter().sum::<f64>() / c,
                partial_sums,
                monotone,
                periodic,
            },
            classes,
        })
    }
}
