//! Plain-text surface descriptions.
//!
//! ```text
//! # modular punctured torus
//! name = modular-torus
//! a = 2 -1 -1 1
//! b = 2 1 1 1
//! peripheral = abAB
//! cusp_width = 6
//! orientation = -1
//! euler_characteristic = -1
//! pingpong.a = inf -1
//! pingpong.A = 0 1
//! pingpong.b = 1 inf
//! pingpong.B = -1 0
//! base_point = 0 1
//! modular_character = true
//! ```
//!
//! `base_point = x y2` is a point `x + i·√y2` of the upper half-plane lying
//! outside every ping-pong region. `modular_character` enables the index-6
//! character as a fast membership filter; only set it when the group is the
//! commutator subgroup of the modular group.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Letter, SurfaceGroup, Word};
use crate::error::{Error, Result};
use crate::exact::{BoundaryPoint, CircleInterval, MoebiusMap};

const KEYS: [&str; 13] = [
    "name",
    "a",
    "b",
    "peripheral",
    "cusp_width",
    "orientation",
    "euler_characteristic",
    "pingpong.a",
    "pingpong.A",
    "pingpong.b",
    "pingpong.B",
    "base_point",
    "modular_character",
];

pub fn load_surface(path: &Path) -> Result<SurfaceGroup> {
    let text = std::fs::read_to_string(path)?;
    parse_surface(&text)
}

fn cfg(line: usize, msg: impl Into<String>) -> Error {
    Error::Config { line, msg: msg.into() }
}

pub(crate) fn parse_surface(text: &str) -> Result<SurfaceGroup> {
    let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (k, v) = body.split_once('=').ok_or_else(|| cfg(line, "expected key = value"))?;
        let k = k.trim();
        if !KEYS.contains(&k) {
            return Err(cfg(line, format!("unknown key {k:?}")));
        }
        if entries.insert(k.to_string(), (line, v.trim().to_string())).is_some() {
            return Err(cfg(line, format!("duplicate key {k:?}")));
        }
    }
    let get = |k: &str| -> Result<&(usize, String)> {
        entries.get(k).ok_or_else(|| cfg(text.lines().count() + 1, format!("missing key {k:?}")))
    };
    let matrix = |k: &str| -> Result<MoebiusMap> {
        let (line, v) = get(k)?;
        let nums: std::result::Result<Vec<BigInt>, _> = v.split_whitespace().map(str::parse).collect();
        let nums = nums.map_err(|_| cfg(*line, "matrix rows must be integers"))?;
        let [a, b, c, d]: [BigInt; 4] =
            nums.try_into().map_err(|_| cfg(*line, "a matrix needs four integers"))?;
        MoebiusMap::new(a, b, c, d).map_err(|e| cfg(*line, e.to_string()))
    };
    let point = |line: usize, s: &str| -> Result<BoundaryPoint> {
        let p: BoundaryPoint = s.parse().map_err(|_| cfg(line, format!("bad point {s:?}")))?;
        if !p.is_parabolic_candidate() {
            return Err(cfg(line, "ping-pong ends must be rational or inf"));
        }
        Ok(p)
    };
    let rational = |line: usize, s: &str| -> Result<BigRational> {
        match point(line, s)? {
            BoundaryPoint::Rational(r) => Ok(r),
            _ => Err(cfg(line, "expected a rational")),
        }
    };

    let a = matrix("a")?;
    let b = matrix("b")?;
    let (pl, pw) = get("peripheral")?;
    let peripheral: Word = pw.parse().map_err(|_| cfg(*pl, "peripheral must be a word in a, A, b, B"))?;
    let (wl, ww) = get("cusp_width")?;
    let width = rational(*wl, ww)?;
    let (ol, ow) = get("orientation")?;
    let orientation: i8 = match ow.as_str() {
        "1" | "+1" => 1,
        "-1" => -1,
        _ => return Err(cfg(*ol, "orientation must be 1 or -1")),
    };
    let euler = match entries.get("euler_characteristic") {
        Some((line, v)) => v.parse::<i32>().map_err(|_| cfg(*line, "euler characteristic must be an integer"))?,
        None => -1,
    };
    let mut arcs = Vec::new();
    for l in Letter::ALL {
        let key = format!("pingpong.{}", l.to_char());
        let (line, v) = get(&key)?;
        let parts: Vec<&str> = v.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(cfg(*line, "a ping-pong arc needs two end points"));
        }
        let left = point(*line, parts[0])?;
        let right = point(*line, parts[1])?;
        arcs.push(CircleInterval::new(left, right).map_err(|e| cfg(*line, e.to_string()))?);
    }
    let (bl, bv) = get("base_point")?;
    let parts: Vec<&str> = bv.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(cfg(*bl, "base point needs x and y²"));
    }
    let base = (rational(*bl, parts[0])?, rational(*bl, parts[1])?);
    let modular = match entries.get("modular_character") {
        Some((line, v)) => match v.as_str() {
            "true" => true,
            "false" => false,
            _ => return Err(cfg(*line, "modular_character must be true or false")),
        },
        None => false,
    };
    let name = entries.get("name").map(|(_, v)| v.clone()).unwrap_or_else(|| "custom".into());
    let pingpong: [CircleInterval; 4] = arcs.try_into().map_err(|_| cfg(0, "four ping-pong arcs"))?;
    SurfaceGroup::assemble(name, a, b, peripheral, width, euler, orientation, pingpong, base, modular).map_err(
        |e| {
            let line = match &e {
                Error::Invariant(m) if m.contains("peripheral") => *pl,
                Error::Invariant(m) if m.contains("ping-pong") || m.contains("letter") => get("pingpong.a")
                    .map(|x| x.0)
                    .unwrap_or(0),
                Error::Invariant(m) if m.contains("base point") => *bl,
                Error::Invariant(m) if m.contains("width") => *wl,
                _ => 0,
            };
            cfg(line, e.to_string())
        },
    )
}
