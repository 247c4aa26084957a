//! Text and JSON forms of point sets.
//!
//! ```text
//! q=2^2 n=2 mod=1,1,1
//! 0,0
//! 1,3
//! ```
//!
//! The header may also put `mod=...` on its own second line. Points are
//! comma-separated element encodings, one per line; the writer emits them in
//! increasing point encoding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{join_u32, parse_u32_list, FieldSpec};
use crate::kakeya::PointSet;
use crate::space::Space;

impl PointSet {
    pub fn to_set_file(&self) -> String {
        let f = self.spec();
        let mut out = format!("q={} n={}", f.order_string(), self.dim());
        if let Some(m) = f.modulus_string() {
            out.push_str(" mod=");
            out.push_str(&m);
        }
        out.push('\n');
        for p in self.point_values() {
            out.push_str(&join_u32(&p));
            out.push('\n');
        }
        out
    }

    pub fn parse_set_file(text: &str) -> Result<PointSet> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let mut order = None;
        let mut n = None;
        let mut modulus = None;
        let mut take_header_token = |tok: &str, line: usize| -> Result<()> {
            if let Some(v) = tok.strip_prefix("q=") {
                order = Some(v.to_string());
            } else if let Some(v) = tok.strip_prefix("n=") {
                n = Some(v.parse::<usize>().map_err(|_| Error::parse(line, format!("bad dimension {v:?}")))?);
            } else if let Some(v) = tok.strip_prefix("mod=") {
                modulus = Some(v.to_string());
            } else {
                return Err(Error::parse(line, format!("unexpected header token {tok:?}")));
            }
            Ok(())
        };
        for tok in header.split_whitespace() {
            take_header_token(tok, 1)?;
        }
        let mut rest: Vec<(usize, &str)> = lines.collect();
        if let Some(&(ln, l)) = rest.first() {
            if l.starts_with("mod=") {
                take_header_token(l, ln)?;
                rest.remove(0);
            }
        }
        let order = order.ok_or_else(|| Error::parse(1, "header lacks q="))?;
        let n = n.ok_or_else(|| Error::parse(1, "header lacks n="))?;
        let spec_text = match &modulus {
            Some(m) => format!("{order} mod={m}"),
            None => order,
        };
        let spec = FieldSpec::parse(&spec_text).map_err(|e| Error::parse(1, e.to_string()))?;
        let space = Space::new(&spec, n).map_err(|e| Error::parse(1, e.to_string()))?;
        let mut codes = Vec::new();
        for (ln, l) in rest {
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let vals = parse_u32_list(l).map_err(|e| Error::parse(ln, e))?;
            if vals.len() != n {
                return Err(Error::parse(ln, format!("expected {n} coordinates, got {}", vals.len())));
            }
            let pt = vals
                .iter()
                .map(|&v| spec.element(v))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::parse(ln, e.to_string()))?;
            codes.push(space.encode(&pt));
        }
        let count = codes.len();
        let set = PointSet::from_encodings(&space, codes)?;
        if set.len() != count {
            return Err(Error::parse(0, "duplicate points"));
        }
        Ok(set)
    }

    pub fn to_json(&self) -> SetJson {
        SetJson {
            q: self.spec().order_string(),
            n: self.dim(),
            modulus: self.spec().modulus().to_vec(),
            points: self.point_values(),
        }
    }

    pub fn from_json(j: &SetJson) -> Result<PointSet> {
        let spec = FieldSpec::new_from_parts(&j.q, &j.modulus)?;
        PointSet::from_values(&spec, j.n, &j.points)
    }
}

/// JSON mirror of the set file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetJson {
    pub q: String,
    pub n: usize,
    #[serde(rename = "mod")]
    pub modulus: Vec<u32>,
    pub points: Vec<Vec<u32>>,
}

impl FieldSpec {
    /// From an order string (`"p"` / `"p^k"`) and a possibly empty modulus.
    pub fn new_from_parts(order: &str, modulus: &[u32]) -> Result<FieldSpec> {
        if modulus.is_empty() {
            FieldSpec::parse(order)
        } else {
            FieldSpec::parse(&format!("{order} mod={}", join_u32(modulus)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kakeya::{construct, Construction};
    use proptest::prelude::*;

    #[test]
    fn writes_header_and_points() {
        let f = FieldSpec::parse("2^2 mod=1,1,1").unwrap();
        let k = PointSet::from_values(&f, 2, &[vec![1, 3], vec![0, 0]]).unwrap();
        assert_eq!(k.to_set_file(), "q=2^2 n=2 mod=1,1,1\n0,0\n1,3\n");
        let f3 = FieldSpec::parse("3").unwrap();
        assert_eq!(PointSet::empty(&f3, 2).unwrap().to_set_file(), "q=3 n=2\n");
    }

    #[test]
    fn accepts_mod_continuation_line() {
        let k = PointSet::parse_set_file("q=2^2 n=2\nmod=1,1,1\n0,0\n1,3\n").unwrap();
        assert_eq!(k.to_set_file(), "q=2^2 n=2 mod=1,1,1\n0,0\n1,3\n");
    }

    #[test]
    fn errors_name_the_line() {
        let e = PointSet::parse_set_file("q=3 n=2\n0,0\n1,5\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        let e = PointSet::parse_set_file("q=3 n=2\n0,0\n1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = PointSet::parse_set_file("q=3 n=2\nx,y\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = PointSet::parse_set_file("q=4 n=2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        assert!(PointSet::parse_set_file("").is_err());
        assert!(PointSet::parse_set_file("q=3\n").is_err());
    }

    #[test]
    fn json_mirrors_file() {
        let f = FieldSpec::parse("3^2 mod=1,0,1").unwrap();
        let k = construct(Construction::GreedyLines, &f, 2, 0).unwrap();
        let j = k.to_json();
        assert_eq!(j.q, "3^2");
        assert_eq!(PointSet::from_json(&j).unwrap(), k);
    }

    proptest! {
        #[test]
        fn file_roundtrip_is_bit_exact(codes in proptest::collection::vec(0u64..125, 0..40), which in 0usize..3) {
            let spec = ["5", "2^2 mod=1,1,1", "3"][which];
            let f = FieldSpec::parse(spec).unwrap();
            let sp = Space::new(&f, 3).unwrap();
            let codes: Vec<u64> = codes.into_iter().map(|c| c % sp.size()).collect();
            let k = PointSet::from_encodings(&sp, codes).unwrap();
            let text = k.to_set_file();
            let back = PointSet::parse_set_file(&text).unwrap();
            prop_assert_eq!(&back, &k);
            prop_assert_eq!(back.to_set_file(), text);
        }
    }
}
