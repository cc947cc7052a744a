//! Closed-form metric and counting formulas for `{p,q}` tessellations of
//! compact orientable surfaces.
//!
//! Real-valued formulas are generic over [`num_traits::Float`]; face, vertex
//! and edge counts are exact rationals so that feasibility is a true
//! integrality test.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, FloatConst, NumCast, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Regular tessellation descriptor: `p`-gons, `q` meeting at every vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchlafliPair {
    p: u32,
    q: u32,
}

impl SchlafliPair {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p < 3 || q < 3 {
            return Err(Error::MalformedPair { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dual(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
        }
    }

    /// `(p-2)(q-2)`; compared against 4 to classify.
    pub fn key(&self) -> i64 {
        (self.p as i64 - 2) * (self.q as i64 - 2)
    }

    pub fn classify(&self) -> GeometryClass {
        match self.key().cmp(&4) {
            std::cmp::Ordering::Less => GeometryClass::Spherical,
            std::cmp::Ordering::Equal => GeometryClass::Euclidean,
            std::cmp::Ordering::Greater => GeometryClass::Hyperbolic,
        }
    }

    pub fn require_hyperbolic(&self) -> Result<()> {
        match self.classify() {
            GeometryClass::Hyperbolic => Ok(()),
            class => Err(Error::NotHyperbolic {
                p: self.p,
                q: self.q,
                class,
            }),
        }
    }
}

impl fmt::Display for SchlafliPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryClass {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl fmt::Display for GeometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryClass::Spherical => "spherical",
            GeometryClass::Euclidean => "euclidean",
            GeometryClass::Hyperbolic => "hyperbolic",
        })
    }
}

/// Genus of a compact orientable surface, `g >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Genus(u32);

impl Genus {
    pub fn new(g: u32) -> Result<Self> {
        if g == 0 {
            return Err(Error::ZeroGenus(g));
        }
        Ok(Self(g))
    }

    /// A genus admitting hyperbolic `4g`-gon formulas (`g >= 2`).
    pub fn hyperbolic(g: u32) -> Result<Self> {
        if g < 2 {
            return Err(Error::GenusOutOfRange { genus: g, min: 2 });
        }
        Ok(Self(g))
    }

    pub fn get(&self) -> u32 {
        self.0
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.0 as i64
    }
}

pub fn classify(pair: SchlafliPair) -> GeometryClass {
    pair.classify()
}

fn cast<T: NumCast>(x: impl num_traits::ToPrimitive) -> T {
    T::from(x).expect("small integer is representable in every float type")
}

/// Hyperbolic edge length of a `{p,q}` tile:
/// `arccosh((cos²(π/q) + cos(2π/p)) / sin²(π/q))`.
pub fn edge_length<T: Float + FloatConst>(pair: SchlafliPair) -> Result<T> {
    pair.require_hyperbolic()?;
    let pi = T::PI();
    let p: T = cast(pair.p());
    let q: T = cast(pair.q());
    let two = T::one() + T::one();
    let cos_q = (pi / q).cos();
    let sin_q = (pi / q).sin();
    let arg = (cos_q * cos_q + (two * pi / p).cos()) / (sin_q * sin_q);
    Ok(arg.acosh())
}

/// Distance between opposite sides of the regular hyperbolic `4g`-gon:
/// `2·arccosh(cot(π/4g))`.
pub fn fundamental_diameter<T: Float + FloatConst>(g: Genus) -> Result<T> {
    if g.get() < 2 {
        return Err(Error::GenusOutOfRange {
            genus: g.get(),
            min: 2,
        });
    }
    let angle = T::PI() / cast::<T>(4 * g.get());
    let two = T::one() + T::one();
    Ok(two * (angle.cos() / angle.sin()).acosh())
}

/// Snapping tolerance applied before taking a ceiling.
pub fn snap_tolerance<T: Float>() -> T {
    let fixed: T = cast(1e-9);
    fixed.max(T::epsilon() * cast(64))
}

/// `⌈x⌉`, treating values within [`snap_tolerance`] of an integer as that integer.
pub fn guarded_ceil<T: Float>(x: T) -> i64 {
    let nearest = x.round();
    let v = if (x - nearest).abs() <= snap_tolerance::<T>() {
        nearest
    } else {
        x.ceil()
    };
    v.to_i64().expect("finite ratio")
}

/// Raw, unrounded distance ratios `d_h / l(p,q)` and `d_h / l(q,p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceRatios<T> {
    pub diameter: T,
    pub x_ratio: T,
    pub z_ratio: T,
}

pub fn distance_ratios<T: Float + FloatConst>(
    pair: SchlafliPair,
    g: Genus,
) -> Result<DistanceRatios<T>> {
    let diameter = fundamental_diameter::<T>(g)?;
    Ok(DistanceRatios {
        diameter,
        x_ratio: diameter / edge_length::<T>(pair)?,
        z_ratio: diameter / edge_length::<T>(pair.dual())?,
    })
}

/// Lower bounds `(d_x, d_z)` from the tile edge lengths of `{p,q}` and its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBounds {
    pub d_x: i64,
    pub d_z: i64,
}

pub fn distance_bounds<T: Float + FloatConst>(
    pair: SchlafliPair,
    g: Genus,
) -> Result<DistanceBounds> {
    let r = distance_ratios::<T>(pair, g)?;
    Ok(DistanceBounds {
        d_x: guarded_ceil(r.x_ratio).max(1),
        d_z: guarded_ceil(r.z_ratio).max(1),
    })
}

/// Exact face, dual-face and edge counts of `{p,q}` on a genus-`g` surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TessellationCensus<I: Clone + Integer> {
    pub n_f: Ratio<I>,
    pub n_f_star: Ratio<I>,
    pub n_edges: Ratio<I>,
    pub feasible: bool,
}

impl<I> TessellationCensus<I>
where
    I: Clone + Integer + Signed + NumCast,
{
    fn integral(&self) -> Option<(I, I, I)> {
        if !self.feasible {
            return None;
        }
        Some((
            self.n_f.to_integer(),
            self.n_f_star.to_integer(),
            self.n_edges.to_integer(),
        ))
    }

    /// `(faces, vertices, edges)` if the census is feasible.
    pub fn counts(&self) -> Option<(I, I, I)> {
        self.integral()
    }

    /// Names the first integrality or positivity condition that fails.
    pub fn failure(&self) -> Option<String> {
        let check = |name: &str, v: &Ratio<I>| -> Option<String> {
            if !v.is_integer() {
                Some(format!("{name} is not an integer"))
            } else if !v.is_positive() {
                Some(format!("{name} is not positive"))
            } else {
                None
            }
        };
        check("n_f", &self.n_f)
            .or_else(|| check("n_f* = n_f p/q", &self.n_f_star))
            .or_else(|| check("n = n_f p/2", &self.n_edges))
    }
}

/// `n_f = 4q(g-1)/(pq-2p-2q)`, `n_f* = n_f p/q`, `n = n_f p/2`.
pub fn census_in<I>(pair: SchlafliPair, g: Genus) -> Result<TessellationCensus<I>>
where
    I: Clone + Integer + Signed + NumCast,
{
    pair.require_hyperbolic()?;
    if g.get() < 2 {
        return Err(Error::GenusOutOfRange {
            genus: g.get(),
            min: 2,
        });
    }
    let int = |x: i64| -> I { cast(x) };
    let (p, q) = (pair.p() as i64, pair.q() as i64);
    let denom = p * q - 2 * p - 2 * q;
    let n_f = Ratio::new(int(4 * q * (g.get() as i64 - 1)), int(denom));
    let n_f_star = n_f.clone() * Ratio::new(int(p), int(q));
    let n_edges = n_f.clone() * Ratio::new(int(p), int(2));
    let positive_int = |r: &Ratio<I>| r.is_integer() && r.numer() > &I::zero();
    let feasible = positive_int(&n_f) && positive_int(&n_f_star) && positive_int(&n_edges);
    Ok(TessellationCensus {
        n_f,
        n_f_star,
        n_edges,
        feasible,
    })
}

pub fn census(pair: SchlafliPair, g: Genus) -> Result<crate::Census> {
    census_in::<i64>(pair, g)
}
