//! Code parameter tables, family formulas, rates, curves and the
//! primal/dual swap.
//!
//! CSV column orders are fixed:
//!
//! * tables: `table, pair, n_f, n_f_star, n, k, d_z_bound, d_x_bound, rate, l_pq, l_qp`
//! * curves: `pair, g, n, k, rate, dh, dx_raw, dz_raw, dx_bound, dz_bound, dx_minus_dz`

use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{census, distance_bounds, distance_ratios, edge_length, Genus, SchlafliPair};
use crate::Rational;

/// Genus range accepted by [`emit_curves`].
pub const CURVE_GENUS_RANGE: RangeInclusive<u32> = 2..=64;

/// The nine fixed pairs of the hyperbolic parameter table, in printed order.
pub const TABLE2_PAIRS: [(u32, u32); 9] = [
    (7, 3),
    (8, 3),
    (9, 3),
    (10, 3),
    (12, 3),
    (5, 4),
    (6, 4),
    (8, 4),
    (10, 5),
];

fn ratio_str<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Exactness {
    Bound,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub pair: SchlafliPair,
    pub g: u32,
    pub n: i64,
    pub k: i64,
    pub d_x: i64,
    pub d_z: i64,
    pub exactness: Exactness,
    #[serde(serialize_with = "ratio_str")]
    pub rate: Rational,
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} g={}: [[{}, {}]] d_x={} d_z={} ({:?})",
            self.pair, self.g, self.n, self.k, self.d_x, self.d_z, self.exactness
        )
    }
}

pub fn family_params(pair: SchlafliPair, g: u32) -> Result<CodeParams> {
    let genus = Genus::hyperbolic(g)?;
    let c = census(pair, genus)?;
    let (_, _, n) = c.counts().ok_or_else(|| Error::Infeasible {
        p: pair.p(),
        q: pair.q(),
        genus: g,
        reason: c.failure().unwrap_or_default(),
    })?;
    let bounds = distance_bounds::<f64>(pair, genus)?;
    let k = 2 * i64::from(g);
    Ok(CodeParams {
        pair,
        g,
        n,
        k,
        d_x: bounds.d_x,
        d_z: bounds.d_z,
        exactness: Exactness::Bound,
        rate: Ratio::new(k, n),
    })
}

/// Replaces `{p,q}` by `{q,p}`, exchanging the two distances. An involution.
pub fn swap_dual(params: &CodeParams) -> CodeParams {
    CodeParams {
        pair: params.pair.dual(),
        d_x: params.d_z,
        d_z: params.d_x,
        ..params.clone()
    }
}

/// Orients a code so that phase errors get the larger distance.
pub fn favor_z(params: &CodeParams) -> CodeParams {
    if params.d_z < params.d_x {
        swap_dual(params)
    } else {
        params.clone()
    }
}

/// `(a p + b) / (c p + d)`, multiplied by `(g - 1)` when evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearFraction {
    pub num: (i64, i64),
    pub den: (i64, i64),
}

impl LinearFraction {
    pub fn eval(&self, p: i64, g: i64) -> Rational {
        Ratio::new(
            (self.num.0 * p + self.num.1) * (g - 1),
            self.den.0 * p + self.den.1,
        )
    }

    /// Leading-coefficient ratio as `p` grows.
    pub fn limit_in_p(&self) -> Rational {
        Ratio::new(self.num.0, self.den.0)
    }
}

fn linear(a: i64, b: i64, var: &str) -> String {
    match (a, b) {
        (0, b) => b.to_string(),
        (1, 0) => var.to_string(),
        (a, 0) => format!("{a}{var}"),
        (a, b) => {
            let head = if a == 1 {
                var.to_string()
            } else {
                format!("{a}{var}")
            };
            if b < 0 {
                format!("{head}-{}", -b)
            } else {
                format!("{head}+{b}")
            }
        }
    }
}

impl fmt::Display for LinearFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}(g-1)/({})",
            linear(self.num.0, self.num.1, "p"),
            linear(self.den.0, self.den.1, "p")
        )
    }
}

/// One `{p,q}`-with-fixed-`q` family row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyRow {
    pub q: u32,
    pub n_f: LinearFraction,
    pub n_f_star: LinearFraction,
    pub n: LinearFraction,
}

impl FamilyRow {
    /// Smallest `p` for which `{p,q}` is hyperbolic.
    pub fn min_p(&self) -> u32 {
        (3..).find(|&p| (p - 2) * (self.q - 2) > 4).expect("some p")
    }

    /// `lim 2g / n` with `g` and then `p` going to infinity.
    pub fn asymptotic_rate(&self) -> Rational {
        Ratio::from_integer(2) / self.n.limit_in_p()
    }
}

pub fn family_rows() -> [FamilyRow; 4] {
    let lf = |num, den| LinearFraction { num, den };
    [
        FamilyRow {
            q: 3,
            n_f: lf((0, 12), (1, -6)),
            n_f_star: lf((4, 0), (1, -6)),
            n: lf((6, 0), (1, -6)),
        },
        FamilyRow {
            q: 4,
            n_f: lf((0, 8), (1, -4)),
            n_f_star: lf((2, 0), (1, -4)),
            n: lf((4, 0), (1, -4)),
        },
        FamilyRow {
            q: 5,
            n_f: lf((0, 20), (3, -10)),
            n_f_star: lf((4, 0), (3, -10)),
            n: lf((10, 0), (3, -10)),
        },
        FamilyRow {
            q: 6,
            n_f: lf((0, 6), (1, -3)),
            n_f_star: lf((1, 0), (1, -3)),
            n: lf((3, 0), (1, -3)),
        },
    ]
}

/// Edges per unit of `g - 1` for a fixed pair.
pub fn edge_coefficient(pair: SchlafliPair) -> Result<Rational> {
    Ok(census(pair, Genus::hyperbolic(2)?)?.n_edges)
}

/// `lim 2g / (c (g - 1)) = 2 / c` for a fixed pair.
pub fn fixed_pair_rate(pair: SchlafliPair) -> Result<Rational> {
    Ok(Ratio::from_integer(2) / edge_coefficient(pair)?)
}

fn coeff(r: Rational) -> String {
    if r == Ratio::from_integer(1) {
        "(g-1)".into()
    } else {
        format!("{r}(g-1)")
    }
}

#[derive(Debug, Serialize)]
struct TableRecord {
    table: u8,
    pair: String,
    n_f: String,
    n_f_star: String,
    n: String,
    k: &'static str,
    d_z_bound: String,
    d_x_bound: String,
    rate: String,
    l_pq: String,
    l_qp: String,
}

/// Both parameter tables as one CSV stream.
pub fn emit_tables<W: Write>(sink: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    for row in family_rows() {
        w.serialize(TableRecord {
            table: 1,
            pair: format!("{{p,{}}}", row.q),
            n_f: row.n_f.to_string(),
            n_f_star: row.n_f_star.to_string(),
            n: row.n.to_string(),
            k: "2g",
            d_z_bound: "ceil(d_h/l(q,p))".into(),
            d_x_bound: "ceil(d_h/l(p,q))".into(),
            rate: row.asymptotic_rate().to_string(),
            l_pq: String::new(),
            l_qp: String::new(),
        })?;
    }
    for (p, q) in TABLE2_PAIRS {
        let pair = SchlafliPair::new(p, q)?;
        let c = census(pair, Genus::hyperbolic(2)?)?;
        let l_pq = edge_length::<f64>(pair)?;
        let l_qp = edge_length::<f64>(pair.dual())?;
        w.serialize(TableRecord {
            table: 2,
            pair: pair.to_string(),
            n_f: coeff(c.n_f),
            n_f_star: coeff(c.n_f_star),
            n: coeff(c.n_edges),
            k: "2g",
            d_z_bound: format!("ceil(d_h/{l_qp:.4})"),
            d_x_bound: format!("ceil(d_h/{l_pq:.4})"),
            rate: fixed_pair_rate(pair)?.to_string(),
            l_pq: format!("{l_pq:.4}"),
            l_qp: format!("{l_qp:.4}"),
        })?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveRow {
    pub pair: String,
    pub g: u32,
    pub n: i64,
    pub k: i64,
    pub rate: f64,
    pub dh: f64,
    pub dx_raw: f64,
    pub dz_raw: f64,
    pub dx_bound: i64,
    pub dz_bound: i64,
    pub dx_minus_dz: i64,
}

pub fn curve_rows(pairs: &[SchlafliPair], genera: RangeInclusive<u32>) -> Result<Vec<CurveRow>> {
    if genera.is_empty()
        || !CURVE_GENUS_RANGE.contains(genera.start())
        || !CURVE_GENUS_RANGE.contains(genera.end())
    {
        return Err(Error::GenusOutOfRange {
            genus: if CURVE_GENUS_RANGE.contains(genera.start()) {
                *genera.end()
            } else {
                *genera.start()
            },
            min: *CURVE_GENUS_RANGE.start(),
        });
    }
    let mut rows = Vec::new();
    for &pair in pairs {
        for g in genera.clone() {
            let params = family_params(pair, g)?;
            let r = distance_ratios::<f64>(pair, Genus::hyperbolic(g)?)?;
            rows.push(CurveRow {
                pair: pair.to_string(),
                g,
                n: params.n,
                k: params.k,
                rate: params.k as f64 / params.n as f64,
                dh: r.diameter,
                dx_raw: r.x_ratio,
                dz_raw: r.z_ratio,
                dx_bound: params.d_x,
                dz_bound: params.d_z,
                dx_minus_dz: params.d_x - params.d_z,
            });
        }
    }
    Ok(rows)
}

pub fn emit_curves<W: Write>(
    pairs: &[SchlafliPair],
    genera: RangeInclusive<u32>,
    sink: W,
) -> Result<()> {
    let rows = curve_rows(pairs, genera)?;
    let mut w = csv::Writer::from_writer(sink);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Smallest genus in `genera` whose bounds reach `(d_x, d_z)` exactly.
pub fn genus_for_target(
    pair: SchlafliPair,
    target: (i64, i64),
    genera: RangeInclusive<u32>,
) -> Result<Option<u32>> {
    for g in genera {
        let params = family_params(pair, g)?;
        if (params.d_x, params.d_z) == target {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Distances predicted in closed form for the torus families.
pub mod torus_formulas {
    /// `(l, l)` for the `l x l` square torus.
    pub fn square(l: u32) -> (usize, usize) {
        (l as usize, l as usize)
    }

    /// `(ceil(xi sqrt 3), xi)` for the apothem-scaled hexagonal torus.
    pub fn hex_apothem(xi: u32) -> (usize, usize) {
        let xi = xi as u64;
        (ceil_sqrt(3 * xi * xi) as usize, xi as usize)
    }

    /// `(lambda, ceil(lambda / sqrt 3))` for the edge-scaled hexagonal torus.
    pub fn hex_edge(lambda: u32) -> (usize, usize) {
        let l = lambda as u64;
        let d_z = (0..).find(|&d: &u64| 3 * d * d >= l * l).expect("finite");
        (lambda as usize, d_z as usize)
    }

    fn ceil_sqrt(x: u64) -> u64 {
        (0..).find(|&d: &u64| d * d >= x).expect("finite")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaComparison {
    Equal,
    Exceeds,
    Below,
}

/// How one measured distance relates to its closed-form prediction.
pub fn compare_with_formula(measured: usize, predicted: usize) -> FormulaComparison {
    match measured.cmp(&predicted) {
        std::cmp::Ordering::Equal => FormulaComparison::Equal,
        std::cmp::Ordering::Greater => FormulaComparison::Exceeds,
        std::cmp::Ordering::Less => FormulaComparison::Below,
    }
}
