//! Text formats for cones.
//!
//! H-representation:
//! ```text
//! DIM 3
//! COORDS X Y X,Y
//! EQ
//! 1 -1 0
//! INEQ
//! 1 0 0
//! 0 1/2 -1
//! ```
//! V-representation uses a `RAYS` section with integer rows (`LINEALITY`
//! appears only for non-pointed cones). Parse/print round-trips bit-exactly
//! on canonical forms.

use crate::hcone::HCone;
use crate::rational::{parse_rat, primitive_from_rats, BigInt, Rat};
use crate::vcone::VCone;
use crate::{GeoError, Result};

pub fn print_hcone(c: &HCone) -> String {
    let mut out = format!("DIM {}\n", c.dim);
    if let Some(coords) = &c.coords {
        out.push_str(&format!("COORDS {}\n", coords.join(" ")));
    }
    out.push_str("EQ\n");
    for row in &c.eqs {
        out.push_str(&fmt_row(row));
    }
    out.push_str("INEQ\n");
    for row in &c.ineqs {
        out.push_str(&fmt_row(row));
    }
    out
}

pub fn print_vcone(v: &VCone) -> String {
    let mut out = format!("DIM {}\n", v.dim);
    if let Some(coords) = &v.coords {
        out.push_str(&format!("COORDS {}\n", coords.join(" ")));
    }
    if !v.lineality.is_empty() {
        out.push_str("LINEALITY\n");
        for row in &v.lineality {
            out.push_str(&fmt_row(row));
        }
    }
    out.push_str("RAYS\n");
    for row in &v.rays {
        out.push_str(&fmt_row(row));
    }
    out
}

fn fmt_row(row: &[BigInt]) -> String {
    let mut s = row
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    s.push('\n');
    s
}

enum Section {
    None,
    Eq,
    Ineq,
    Rays,
    Lineality,
}

pub fn parse_cone_file(text: &str) -> Result<ConeFile> {
    let mut dim: Option<usize> = None;
    let mut coords: Option<Vec<String>> = None;
    let mut eqs: Vec<Vec<BigInt>> = Vec::new();
    let mut ineqs: Vec<Vec<BigInt>> = Vec::new();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut lineality: Vec<Vec<BigInt>> = Vec::new();
    let mut section = Section::None;
    let mut saw_rays = false;
    let mut saw_h = false;

    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| GeoError::Parse {
            line: ln + 1,
            msg: msg.to_string(),
        };
        if let Some(rest) = line.strip_prefix("DIM") {
            dim = Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|_| err("bad DIM value"))?,
            );
        } else if let Some(rest) = line.strip_prefix("COORDS") {
            coords = Some(rest.split_whitespace().map(|s| s.to_string()).collect());
        } else if line == "EQ" {
            section = Section::Eq;
            saw_h = true;
        } else if line == "INEQ" {
            section = Section::Ineq;
            saw_h = true;
        } else if line == "RAYS" {
            section = Section::Rays;
            saw_rays = true;
        } else if line == "LINEALITY" {
            section = Section::Lineality;
            saw_rays = true;
        } else {
            let d = dim.ok_or_else(|| err("row before DIM"))?;
            let rats: Vec<Rat> = line
                .split_whitespace()
                .map(parse_rat)
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| err("bad rational"))?;
            if rats.len() != d {
                return Err(err(&format!("expected {d} entries, got {}", rats.len())));
            }
            let row = primitive_from_rats(&rats);
            match section {
                Section::Eq => eqs.push(row),
                Section::Ineq => ineqs.push(row),
                Section::Rays => rays.push(row),
                Section::Lineality => lineality.push(row),
                Section::None => return Err(err("row outside any section")),
            }
        }
    }
    let dim = dim.ok_or(GeoError::Parse {
        line: 0,
        msg: "missing DIM".into(),
    })?;
    if let Some(cs) = &coords {
        if cs.len() != dim {
            return Err(GeoError::Parse {
                line: 0,
                msg: format!("COORDS lists {} names for DIM {dim}", cs.len()),
            });
        }
    }
    if saw_rays && saw_h {
        return Err(GeoError::Parse {
            line: 0,
            msg: "file mixes H and V sections".into(),
        });
    }
    if saw_rays {
        let mut v = VCone::new(dim, rays)?;
        v.lineality = lineality;
        v.coords = coords;
        Ok(ConeFile::V(v))
    } else {
        let mut h = HCone::new(dim, eqs, ineqs)?;
        h.coords = coords;
        Ok(ConeFile::H(h))
    }
}

pub enum ConeFile {
    H(HCone),
    V(VCone),
}

impl ConeFile {
    pub fn into_h(self) -> Result<HCone> {
        match self {
            ConeFile::H(h) => Ok(h),
            ConeFile::V(_) => Err(GeoError::Invalid("expected an H-representation".into())),
        }
    }
    pub fn into_v(self) -> Result<VCone> {
        match self {
            ConeFile::V(v) => Ok(v),
            ConeFile::H(_) => Err(GeoError::Invalid("expected a V-representation".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_h() {
        let text = "DIM 3\nCOORDS X Y X,Y\nEQ\n1 -1 0\nINEQ\n1 0 0\n0 1/2 -1\n";
        let h = parse_cone_file(text).unwrap().into_h().unwrap().canonical();
        let printed = print_hcone(&h);
        let again = parse_cone_file(&printed)
            .unwrap()
            .into_h()
            .unwrap()
            .canonical();
        assert_eq!(h, again);
        assert_eq!(print_hcone(&again), printed);
    }

    #[test]
    fn roundtrip_v() {
        let text = "DIM 2\nRAYS\n1 0\n1 2\n";
        let v = parse_cone_file(text).unwrap().into_v().unwrap().canonical();
        let printed = print_vcone(&v);
        let again = parse_cone_file(&printed)
            .unwrap()
            .into_v()
            .unwrap()
            .canonical();
        assert_eq!(v, again);
    }
}
