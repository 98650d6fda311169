//! Curve enumeration through point configurations.

pub mod assemble;
pub mod brute;
pub mod path;
pub mod realize;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{InvariantValue, Provenance, Specialization, Value};
use crate::lattice::LatticePolygon;
use crate::qpoly::{poly_eval_y1, poly_limit_yneg1, qint, QPoly};
use crate::tropcurve::{
    complex_weight, mixed_marked_weight, parity_split, real_signed_weight, refined_weight,
    PlaneTropicalCurve,
};

pub use path::{divide_path, enumerate_paths, MikhalkinConfig, PathOptions};

/// Which per-curve weight is summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Complex,
    Refined,
    Real,
    Mixed,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [
        Scheme::Complex,
        Scheme::Refined,
        Scheme::Real,
        Scheme::Mixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Complex => "complex",
            Scheme::Refined => "refined",
            Scheme::Real => "real",
            Scheme::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown scheme {s:?}")))
    }
}

/// Curves found by one engine.
#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub engine: &'static str,
    pub curves: Vec<PlaneTropicalCurve>,
}

/// All curves through the Mikhalkin configuration, via lattice paths. With
/// `opts.mixed` the curves are those of the signed count with conjugate pairs.
pub fn enumerate_curves(
    p: &LatticePolygon,
    g: i64,
    config: &MikhalkinConfig,
    opts: &PathOptions,
) -> Result<EnumerationResult> {
    let found = path::enumerate_path_curves(p, g, config, opts)?;
    Ok(EnumerationResult {
        engine: "path",
        curves: found.into_iter().map(|c| c.curve).collect(),
    })
}

/// Sum of `∏ [μ(V)] / ∏ [w(E)]` over curves as a Laurent polynomial.
pub fn refined_sum(curves: &[PlaneTropicalCurve]) -> Result<QPoly> {
    let mut fractions: Vec<(QPoly, QPoly)> = Vec::with_capacity(curves.len());
    for c in curves {
        let w = refined_weight(c)?;
        let mut num = QPoly::constant(w.scalar.numer().clone()).shift(w.monomial_exp);
        for &a in &w.numerator {
            num = &num * &qint(a as i64)?;
        }
        let mut den = QPoly::constant(w.scalar.denom().clone());
        for &a in &w.denominator {
            den = &den * &qint(a as i64)?;
        }
        fractions.push((num, den));
    }
    let mut dens: Vec<QPoly> = Vec::new();
    for (_, d) in &fractions {
        if !dens.contains(d) {
            dens.push(d.clone());
        }
    }
    let common = dens.iter().fold(QPoly::one(), |acc, d| &acc * d);
    let mut total = QPoly::zero();
    for (n, d) in &fractions {
        total += &(n * &common.div_exact(d)?);
    }
    total.div_exact(&common)
}

/// Sums a scheme's weight over curves. `g` is the genus of the problem.
pub fn tally(
    curves: &[PlaneTropicalCurve],
    g: i64,
    scheme: Scheme,
) -> Result<(Value, Option<BigRational>, Option<Specialization>)> {
    let rsum = |xs: Vec<BigRational>| xs.into_iter().fold(BigRational::zero(), |a, b| a + b);
    let complex = || -> Result<BigRational> {
        Ok(rsum(
            curves.iter().map(complex_weight).collect::<Result<_>>()?,
        ))
    };
    let yneg1 = |p: &QPoly| match poly_limit_yneg1(p) {
        Ok(v) => Some(Specialization::Value(v)),
        Err(_) => None,
    };
    Ok(match scheme {
        Scheme::Complex => {
            let v = complex()?;
            let lim = refined_sum(curves).ok().and_then(|p| yneg1(&p));
            (Value::Rational(v.clone()), Some(v), lim)
        }
        Scheme::Refined => {
            let p = refined_sum(curves)?;
            let at1 = BigRational::from_integer(poly_eval_y1(&p));
            let lim = yneg1(&p);
            (Value::Polynomial(p), Some(at1), lim)
        }
        Scheme::Real => {
            let mut acc = Vec::with_capacity(curves.len());
            for c in curves {
                acc.push(real_signed_weight(c, &parity_split(c))?);
            }
            let v = rsum(acc);
            (
                Value::Rational(v.clone()),
                Some(complex()?),
                Some(Specialization::Value(v)),
            )
        }
        Scheme::Mixed => {
            let mut acc = Vec::with_capacity(curves.len());
            for c in curves {
                acc.push(mixed_marked_weight(c, &parity_split(c), g)?);
            }
            let v = rsum(acc);
            (
                Value::Rational(v.clone()),
                None,
                Some(Specialization::Value(v)),
            )
        }
    })
}

/// Count through a Mikhalkin configuration with the path engine.
pub fn count(
    p: &LatticePolygon,
    g: i64,
    config: &MikhalkinConfig,
    scheme: Scheme,
    opts: &PathOptions,
) -> Result<InvariantValue> {
    let opts = PathOptions {
        mixed: scheme == Scheme::Mixed,
        ..opts.clone()
    };
    let res = enumerate_curves(p, g, config, &opts)?;
    let (value, at_y1, at_yneg1) = tally(&res.curves, g, scheme)?;
    Ok(InvariantValue {
        value,
        at_y1,
        at_yneg1,
        curves_enumerated: res.curves.len(),
        provenance: Provenance {
            engine: "path".into(),
            polygon: p.to_string(),
            genus: g,
            conditions: config.conditions.to_string(),
            scheme,
            configuration: format!("mikhalkin epsilon={}", config.epsilon),
        },
    })
}

/// Count through explicit points with the brute-force oracle.
pub fn count_brute(
    p: &LatticePolygon,
    g: i64,
    cfg: &brute::BruteConfig,
    scheme: Scheme,
) -> Result<InvariantValue> {
    if scheme == Scheme::Mixed {
        return Err(Error::Unsupported(
            "the brute-force oracle does not handle interior pairs".into(),
        ));
    }
    let curves = brute::brute_enumerate(p, g, cfg)?;
    let (value, at_y1, at_yneg1) = tally(&curves, g, scheme)?;
    let pts: Vec<String> = cfg
        .points
        .iter()
        .map(|q| format!("({},{})", q.x, q.y))
        .collect();
    Ok(InvariantValue {
        value,
        at_y1,
        at_yneg1,
        curves_enumerated: curves.len(),
        provenance: Provenance {
            engine: "brute".into(),
            polygon: p.to_string(),
            genus: g,
            conditions: cfg.conditions.to_string(),
            scheme,
            configuration: format!("points {}", pts.join(" ")),
        },
    })
}
