//! Smooth complete toric surfaces given by their fans.

use std::f64::consts::TAU;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::Character;
use crate::error::{Error, Result};

/// Coordinate characters of the affine chart `Spec k[x, y]` around a fixed
/// point: `x = χ^{chi_x}`, `y = χ^{chi_y}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chart {
    pub chi_x: Character,
    pub chi_y: Character,
}

/// A torus-invariant line `D_i`, joining two fixed points.
///
/// It is `{x = 0}` in the chart at `x_end` and `{y = 0}` in the chart at
/// `y_end`; its tangent characters at the two ends are negatives of each
/// other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantLine {
    pub ray: usize,
    pub x_end: usize,
    pub y_end: usize,
    pub direction: Character,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub rays: Vec<Character>,
    #[serde(default)]
    pub point_names: Option<Vec<String>>,
}

/// A smooth projective toric surface with rays in counterclockwise order.
/// Fixed point `i` is the cone spanned by rays `i` and `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToricSurface {
    name: String,
    rays: Vec<Character>,
    charts: Vec<Chart>,
    point_names: Vec<String>,
}

impl ToricSurface {
    pub fn from_rays(name: impl Into<String>, rays: Vec<Character>) -> Result<Self> {
        let n = rays.len();
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "a complete fan needs at least 3 rays, got {n}"
            )));
        }
        if let Some(r) = rays.iter().find(|r| r.a.gcd(&r.b) != 1) {
            return Err(Error::InvalidInput(format!("ray {r} is not primitive")));
        }
        let mut turn = 0.0;
        for i in 0..n {
            let (v, w) = (rays[i], rays[(i + 1) % n]);
            if v.det(w) != 1 {
                return Err(Error::InvalidInput(format!(
                    "rays {v} and {w} do not span a smooth counterclockwise cone"
                )));
            }
            let angle = |c: Character| (c.b as f64).atan2(c.a as f64);
            turn += (angle(w) - angle(v)).rem_euclid(TAU);
        }
        if ((turn / TAU).round() as i64) != 1 {
            return Err(Error::InvalidInput(
                "rays wind around the origin more than once".into(),
            ));
        }
        let charts = (0..n)
            .map(|i| {
                let (v, w) = (rays[i], rays[(i + 1) % n]);
                Chart {
                    chi_x: Character::new(w.b, -w.a),
                    chi_y: Character::new(-v.b, v.a),
                }
            })
            .collect();
        Ok(ToricSurface {
            name: name.into(),
            rays,
            charts,
            point_names: (0..n).map(|i| format!("q{i}")).collect(),
        })
    }

    pub fn from_spec(spec: &SurfaceSpec) -> Result<Self> {
        let mut s = ToricSurface::from_rays(
            spec.name.clone().unwrap_or_else(|| "custom".into()),
            spec.rays.clone(),
        )?;
        if let Some(names) = &spec.point_names {
            s = s.with_point_names(names.clone())?;
        }
        Ok(s)
    }

    /// `P²` with rays `(1,0), (0,1), (−1,−1)`. The fixed points are named
    /// `p3 = (0:0:1)`, `p1 = (1:0:0)`, `p2 = (0:1:0)` in fan order.
    pub fn projective_plane() -> Self {
        ToricSurface::from_rays(
            "P2",
            vec![
                Character::new(1, 0),
                Character::new(0, 1),
                Character::new(-1, -1),
            ],
        )
        .and_then(|s| s.with_point_names(vec!["p3".into(), "p1".into(), "p2".into()]))
        .expect("valid fan")
    }

    pub fn p1_times_p1() -> Self {
        ToricSurface::from_rays(
            "P1xP1",
            vec![
                Character::new(1, 0),
                Character::new(0, 1),
                Character::new(-1, 0),
                Character::new(0, -1),
            ],
        )
        .expect("valid fan")
    }

    /// The Hirzebruch surface `F_a`.
    pub fn hirzebruch(a: i64) -> Self {
        ToricSurface::from_rays(
            format!("F{a}"),
            vec![
                Character::new(1, 0),
                Character::new(0, 1),
                Character::new(-1, a),
                Character::new(0, -1),
            ],
        )
        .expect("valid fan")
    }

    /// A preset name (`P2`, `P1xP1`, `F<a>`, any case), an inline JSON
    /// list of rays, or a path to a JSON file holding a [`SurfaceSpec`] or
    /// a list of rays.
    pub fn resolve(arg: &str) -> Result<Self> {
        if let Ok(s) = arg.parse() {
            return Ok(s);
        }
        let text = if arg.trim_start().starts_with('[') {
            arg.to_string()
        } else if Path::new(arg).exists() {
            std::fs::read_to_string(arg)?
        } else {
            return Err(Error::InvalidInput(format!("unknown surface {arg:?}")));
        };
        match serde_json::from_str::<Vec<Character>>(&text) {
            Ok(rays) => ToricSurface::from_rays("custom", rays),
            Err(_) => ToricSurface::from_spec(&serde_json::from_str(&text)?),
        }
    }

    pub fn with_point_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.rays.len() {
            return Err(Error::Mismatch(format!(
                "{} point names for {} fixed points",
                names.len(),
                self.rays.len()
            )));
        }
        self.point_names = names;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rays(&self) -> &[Character] {
        &self.rays
    }

    pub fn num_points(&self) -> usize {
        self.rays.len()
    }

    pub fn chart(&self, p: usize) -> Chart {
        self.charts[p]
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn point_name(&self, p: usize) -> &str {
        &self.point_names[p]
    }

    pub fn point_names(&self) -> &[String] {
        &self.point_names
    }

    pub fn point_by_name(&self, name: &str) -> Option<usize> {
        self.point_names.iter().position(|n| n == name)
    }

    /// The line of ray `i`; it passes through points `i − 1` and `i`.
    pub fn line(&self, i: usize) -> InvariantLine {
        let n = self.num_points();
        InvariantLine {
            ray: i,
            x_end: i,
            y_end: (i + n - 1) % n,
            direction: self.charts[i].chi_y,
        }
    }

    pub fn lines(&self) -> Vec<InvariantLine> {
        (0..self.num_points()).map(|i| self.line(i)).collect()
    }

    /// Tangent characters of the surface at a fixed point.
    pub fn tangent_weights(&self, p: usize) -> [Character; 2] {
        let c = self.charts[p];
        [-c.chi_x, -c.chi_y]
    }

    /// The point whose chart has the given coordinate characters, in either
    /// order; the flag is true when they are swapped.
    pub fn point_with_chart(&self, a: Character, b: Character) -> Option<(usize, bool)> {
        self.charts.iter().enumerate().find_map(|(i, c)| {
            if (c.chi_x, c.chi_y) == (a, b) {
                Some((i, false))
            } else if (c.chi_x, c.chi_y) == (b, a) {
                Some((i, true))
            } else {
                None
            }
        })
    }
}

impl FromStr for ToricSurface {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        match upper.as_str() {
            "P2" => Ok(ToricSurface::projective_plane()),
            "P1XP1" => Ok(ToricSurface::p1_times_p1()),
            _ => match upper.strip_prefix('F').map(str::parse::<i64>) {
                Some(Ok(a)) => Ok(ToricSurface::hirzebruch(a)),
                _ => Err(Error::Parse(format!("unknown surface preset {s:?}"))),
            },
        }
    }
}

impl fmt::Display for ToricSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// The codimension-one subtorus `T′ = ker(χ)` for a primitive character
/// `χ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subtorus {
    chi: Character,
}

impl Subtorus {
    pub fn new(chi: Character) -> Result<Self> {
        let p = chi.primitive().ok_or_else(|| {
            Error::InvalidInput("the trivial character has no kernel subtorus".into())
        })?;
        Ok(Subtorus { chi: p })
    }

    pub fn character(&self) -> Character {
        self.chi
    }

    /// Weight of the restriction of `u` to `T′ ≅ G_m`.
    pub fn weight(&self, u: Character) -> i64 {
        self.chi.det(u)
    }

    pub fn is_trivial_on(&self, u: Character) -> bool {
        self.weight(u) == 0
    }
}

impl fmt::Display for Subtorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ker{}", self.chi)
    }
}

/// Components of the fixed locus of `T′` on the surface: isolated points
/// and whole invariant lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceFixedLocus {
    pub isolated_points: Vec<usize>,
    pub lines: Vec<InvariantLine>,
}

pub fn fixed_locus(surface: &ToricSurface, t: &Subtorus) -> SurfaceFixedLocus {
    let lines: Vec<InvariantLine> = surface
        .lines()
        .into_iter()
        .filter(|l| t.is_trivial_on(l.direction))
        .collect();
    let isolated_points = (0..surface.num_points())
        .filter(|&p| {
            let c = surface.chart(p);
            !t.is_trivial_on(c.chi_x) && !t.is_trivial_on(c.chi_y)
        })
        .collect();
    SurfaceFixedLocus {
        isolated_points,
        lines,
    }
}
