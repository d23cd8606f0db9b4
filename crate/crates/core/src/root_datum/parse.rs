//! Type strings such as `GL2`, `PGL6`, `Sp4`, `G2_ad` or `GL1xSL3`, and the JSON wire form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupTable};
use crate::intmat::IntMatrix;

use super::{BasedRootDatum, GenReductiveDatum, Isogeny};

fn number(s: &str, whole: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::InvalidType(whole.to_string()))
}

fn unit(n: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

fn chain(n: usize, len: usize) -> Vec<Vec<i64>> {
    (0..len)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            v
        })
        .collect()
}

/// Classical groups in the standard `ε_i` coordinates.
fn classical(kind: &str, n: usize, label: &str) -> Result<BasedRootDatum> {
    let (roots, coroots) = match kind {
        "Sp" => {
            let mut r = chain(n, n - 1);
            let mut c = r.clone();
            r.push(unit(n, n - 1, 2));
            c.push(unit(n, n - 1, 1));
            (r, c)
        }
        "SOodd" => {
            let mut r = chain(n, n - 1);
            let mut c = r.clone();
            r.push(unit(n, n - 1, 1));
            c.push(unit(n, n - 1, 2));
            (r, c)
        }
        "SOeven" => {
            let mut r = chain(n, n - 1);
            let mut last = vec![0; n];
            last[n - 2] = 1;
            last[n - 1] = 1;
            r.push(last);
            (r.clone(), r)
        }
        _ => unreachable!(),
    };
    BasedRootDatum::new(
        label,
        n,
        IntMatrix::from_rows_with_cols(&roots, n),
        IntMatrix::from_rows_with_cols(&coroots, n),
    )
}

fn parse_factor(s: &str) -> Result<BasedRootDatum> {
    let bad = || Error::InvalidType(s.to_string());
    if let Some(n) = s.strip_prefix("PGL") {
        let n = number(n, s)?;
        if n < 2 {
            return Err(bad());
        }
        return Ok(BasedRootDatum::build_simple('A', n - 1, Isogeny::Adjoint)?.with_label(s));
    }
    if let Some(n) = s.strip_prefix("GL") {
        let n = number(n, s)?;
        if n < 1 {
            return Err(bad());
        }
        return Ok(BasedRootDatum::gl(n));
    }
    if let Some(n) = s.strip_prefix("SL") {
        let n = number(n, s)?;
        if n < 2 {
            return Err(bad());
        }
        return Ok(
            BasedRootDatum::build_simple('A', n - 1, Isogeny::SimplyConnected)?.with_label(s),
        );
    }
    if let Some(n) = s.strip_prefix("Sp") {
        let n = number(n, s)?;
        if n < 2 || n % 2 == 1 {
            return Err(bad());
        }
        return classical("Sp", n / 2, s);
    }
    if let Some(n) = s.strip_prefix("SO") {
        let n = number(n, s)?;
        return match n {
            _ if n >= 3 && n % 2 == 1 => classical("SOodd", n / 2, s),
            _ if n >= 4 && n % 2 == 0 => classical("SOeven", n / 2, s),
            _ => Err(bad()),
        };
    }
    if let Some(n) = s.strip_prefix("Gm").or_else(|| s.strip_prefix('T')) {
        let n = if n.is_empty() { 1 } else { number(n, s)? };
        return Ok(BasedRootDatum::torus(n));
    }
    let (body, isogeny) = if let Some(b) = s.strip_suffix("_ad") {
        (b, Isogeny::Adjoint)
    } else if let Some(b) = s.strip_suffix("_sc") {
        (b, Isogeny::SimplyConnected)
    } else {
        (s, Isogeny::SimplyConnected)
    };
    let mut chars = body.chars();
    let letter = chars.next().ok_or_else(bad)?;
    if !letter.is_ascii_uppercase() {
        return Err(bad());
    }
    let rank = number(chars.as_str(), s)?;
    Ok(BasedRootDatum::build_simple(letter, rank, isogeny)?.with_label(s))
}

/// Parses a product of factors joined by `x`.
pub fn parse_type(s: &str) -> Result<BasedRootDatum> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::InvalidType(String::new()));
    }
    let factors = s.split('x').map(parse_factor).collect::<Result<Vec<_>>>()?;
    if factors.len() == 1 {
        return Ok(factors.into_iter().next().unwrap());
    }
    Ok(BasedRootDatum::product(&factors)?.with_label(s))
}

/// JSON description of a generalised reductive datum. When the root fields are absent,
/// `series` is read as a type string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatumJson {
    pub series: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_x: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_roots: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_coroots: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component_group: Option<GroupTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<IntMatrix>>,
}

impl DatumJson {
    pub fn to_datum(&self) -> Result<GenReductiveDatum> {
        let base = match (&self.simple_roots, &self.simple_coroots) {
            (None, None) => parse_type(&self.series)?,
            (Some(r), Some(c)) => {
                let rank_x = match (self.rank_x, r.first()) {
                    (Some(n), _) => n,
                    (None, Some(v)) => v.len(),
                    (None, None) => {
                        return Err(Error::InvalidDatum(
                            "rank_x is required when there are no roots".into(),
                        ))
                    }
                };
                BasedRootDatum::new(
                    self.series.clone(),
                    rank_x,
                    IntMatrix::from_rows_with_cols(r, rank_x),
                    IntMatrix::from_rows_with_cols(c, rank_x),
                )?
            }
            _ => {
                return Err(Error::InvalidDatum(
                    "simple_roots and simple_coroots must be given together".into(),
                ))
            }
        };
        let ragged =
            |rows: &Option<Vec<Vec<i64>>>| rows.iter().flatten().any(|v| v.len() != base.rank_x());
        if ragged(&self.simple_roots) || ragged(&self.simple_coroots) {
            return Err(Error::InvalidDatum(format!(
                "root vectors must have length {}",
                base.rank_x()
            )));
        }
        match (&self.component_group, &self.action) {
            (None, None) => Ok(GenReductiveDatum::connected(base)),
            (Some(t), Some(a)) => {
                GenReductiveDatum::new(base, FiniteGroup::try_from(t.clone())?, a.clone())
            }
            _ => Err(Error::InvalidDatum(
                "component_group and action must be given together".into(),
            )),
        }
    }

    pub fn from_datum(d: &GenReductiveDatum) -> Self {
        let b = d.base();
        let nontrivial = d.group().order() > 1;
        DatumJson {
            series: b.label().to_string(),
            rank_x: Some(b.rank_x()),
            simple_roots: Some(b.simple_roots().to_rows()),
            simple_coroots: Some(b.simple_coroots().to_rows()),
            component_group: nontrivial.then(|| d.group().clone().into()),
            action: nontrivial.then(|| d.action().to_vec()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups() {
        assert_eq!(parse_type("GL3").unwrap().dim(), 9);
        assert_eq!(parse_type("SL2").unwrap().dim(), 3);
        assert_eq!(parse_type("PGL6").unwrap().pi1_derived(), vec![6]);
        assert_eq!(parse_type("Sp4").unwrap().pi1_derived(), Vec::<i64>::new());
        assert_eq!(parse_type("SO5").unwrap().pi1_derived(), vec![2]);
        assert_eq!(parse_type("SO8").unwrap().pi1_derived(), vec![2]);
        assert_eq!(parse_type("G2_ad").unwrap().num_roots(), 12);
        assert_eq!(parse_type("T3").unwrap().dim(), 3);
        let p = parse_type("GL1xA2").unwrap();
        assert_eq!((p.rank_x(), p.num_roots()), (3, 6));
        assert!(parse_type("Q7").is_err());
        assert!(parse_type("SO6x").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let d = GenReductiveDatum::connected(parse_type("B2").unwrap());
        let j = DatumJson::from_datum(&d);
        let text = serde_json::to_string(&j).unwrap();
        let back: DatumJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_datum().unwrap().base().cartan(), d.base().cartan());
        let by_name = DatumJson {
            series: "GL2".into(),
            rank_x: None,
            simple_roots: None,
            simple_coroots: None,
            component_group: None,
            action: None,
        };
        assert_eq!(by_name.to_datum().unwrap().dim_g(), 4);
    }
}
