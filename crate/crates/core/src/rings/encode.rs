//! Ring-spec mini-language and element string encodings.
//!
//! Specs: `int`, `zmod:12`, `gfp:5`, `poly:gfp:5:X`, `monicext:int:[5,1]`,
//! `prod(<spec>,<spec>)`. Elements: integers and residues in decimal, polynomials
//! as comma-separated coefficients low-to-high (`0` for zero), extension and product
//! elements as bracketed coordinate lists. A polynomial nested inside a bracketed
//! list is itself bracketed.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{Elem, RingSpec};
use crate::error::{Error, Result};

/// Split at top-level occurrences of `sep`, ignoring separators nested in `[]` or `()`.
pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn strip_brackets(s: &str) -> Option<&str> {
    s.strip_prefix('[')?.strip_suffix(']')
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Int => write!(f, "int"),
            RingSpec::Zmod(n) => write!(f, "zmod:{n}"),
            RingSpec::PrimeField(p) => write!(f, "gfp:{p}"),
            RingSpec::Poly { base, var } => write!(f, "poly:{base}:{var}"),
            RingSpec::MonicExt { base, coeffs } => {
                let cs: Vec<String> = coeffs.iter().map(|c| base.encode_nested(c)).collect();
                write!(f, "monicext:{base}:[{}]", cs.join(","))
            }
            RingSpec::Product(a, b) => write!(f, "prod({a},{b})"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<RingSpec> {
        let s = s.trim();
        let bad = || Error::InvalidRingSpec(s.to_string());
        let parse_u64 = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        if s == "int" {
            return Ok(RingSpec::Int);
        }
        if let Some(n) = s.strip_prefix("zmod:") {
            return RingSpec::zmod(parse_u64(n)?);
        }
        if let Some(p) = s.strip_prefix("gfp:") {
            return RingSpec::prime_field(parse_u64(p)?);
        }
        if let Some(rest) = s.strip_prefix("poly:") {
            let (base, var) = rest.rsplit_once(':').ok_or_else(bad)?;
            return RingSpec::poly(base.parse()?, var);
        }
        if let Some(rest) = s.strip_prefix("monicext:") {
            let open = matching_open(rest).ok_or_else(bad)?;
            let base_str = rest[..open].strip_suffix(':').ok_or_else(bad)?;
            let base: RingSpec = base_str.parse()?;
            let inner = &rest[open + 1..rest.len() - 1];
            let coeffs = split_top(inner, ',')
                .into_iter()
                .map(|c| base.decode(c))
                .collect::<Result<Vec<_>>>()
                .map_err(|_| bad())?;
            return RingSpec::monic_extension(base, coeffs);
        }
        if let Some(inner) = s.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
            let parts = split_top(inner, ',');
            if parts.len() != 2 {
                return Err(bad());
            }
            return Ok(RingSpec::product(parts[0].parse()?, parts[1].parse()?));
        }
        Err(bad())
    }
}

/// Index of the `[` matching a trailing `]`.
fn matching_open(s: &str) -> Option<usize> {
    if !s.ends_with(']') {
        return None;
    }
    let mut depth = 0i32;
    for (i, ch) in s.char_indices().rev() {
        match ch {
            ']' => depth += 1,
            '[' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

impl RingSpec {
    /// Canonical string encoding of an element.
    pub fn encode(&self, a: &Elem) -> String {
        match (self, a) {
            (RingSpec::Int, Elem::Int(v)) => v.to_string(),
            (RingSpec::Zmod(_) | RingSpec::PrimeField(_), Elem::Res(r)) => r.to_string(),
            (RingSpec::Poly { .. }, Elem::Seq(cs)) => {
                if cs.is_empty() {
                    "0".to_string()
                } else {
                    cs.iter().map(|c| c.as_res().expect("res").to_string()).collect::<Vec<_>>().join(",")
                }
            }
            (RingSpec::MonicExt { base, .. }, Elem::Seq(cs)) => {
                let parts: Vec<String> = cs.iter().map(|c| base.encode_nested(c)).collect();
                format!("[{}]", parts.join(","))
            }
            (RingSpec::Product(l, r), Elem::Seq(cs)) => {
                format!("[{},{}]", l.encode_nested(&cs[0]), r.encode_nested(&cs[1]))
            }
            _ => panic!("encoding mismatch: {a:?} is not an element of {self}"),
        }
    }

    fn encode_nested(&self, a: &Elem) -> String {
        match self {
            RingSpec::Poly { .. } => format!("[{}]", self.encode(a)),
            _ => self.encode(a),
        }
    }

    /// Parse a canonical element encoding.
    pub fn decode(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let bad = || Error::EncodingMismatch { ring: self.to_string(), encoding: s.to_string() };
        let elem = match self {
            RingSpec::Int => Elem::Int(s.parse::<BigInt>().map_err(|_| bad())?),
            RingSpec::Zmod(_) | RingSpec::PrimeField(_) => {
                Elem::Res(s.parse::<u64>().map_err(|_| bad())?)
            }
            RingSpec::Poly { .. } => {
                let body = strip_brackets(s).unwrap_or(s);
                if body.trim() == "0" {
                    Elem::Seq(Vec::new())
                } else {
                    let cs = body
                        .split(',')
                        .map(|c| c.trim().parse::<u64>().map(Elem::Res).map_err(|_| bad()))
                        .collect::<Result<Vec<_>>>()?;
                    Elem::Seq(cs)
                }
            }
            RingSpec::MonicExt { base, .. } => {
                let body = strip_brackets(s).ok_or_else(bad)?;
                let cs = split_top(body, ',')
                    .into_iter()
                    .map(|c| base.decode(c))
                    .collect::<Result<Vec<_>>>()?;
                Elem::Seq(cs)
            }
            RingSpec::Product(l, r) => {
                let body = strip_brackets(s).ok_or_else(bad)?;
                let parts = split_top(body, ',');
                if parts.len() != 2 {
                    return Err(bad());
                }
                Elem::Seq(vec![l.decode(parts[0])?, r.decode(parts[1])?])
            }
        };
        self.check(&elem).map_err(|_| bad())?;
        Ok(elem)
    }
}

impl serde::Serialize for RingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RingSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Context-free JSON form: integers as decimal strings, residues as numbers,
/// sequences as arrays.
impl serde::Serialize for Elem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        match self {
            Elem::Int(v) => s.serialize_str(&v.to_string()),
            Elem::Res(r) => s.serialize_u64(*r),
            Elem::Seq(cs) => {
                let mut seq = s.serialize_seq(Some(cs.len()))?;
                for c in cs {
                    seq.serialize_element(c)?;
                }
                seq.end()
            }
        }
    }
}

impl<'de> serde::Deserialize<'de> for Elem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> serde::de::Visitor<'de> for V {
            type Value = Elem;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("integer string, residue number or element array")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Elem, E> {
                v.parse::<BigInt>().map(Elem::Int).map_err(E::custom)
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Elem, E> {
                Ok(Elem::Res(v))
            }
            fn visit_seq<A: serde::de::SeqAccess<'de>>(
                self,
                mut a: A,
            ) -> std::result::Result<Elem, A::Error> {
                let mut out = Vec::new();
                while let Some(e) = a.next_element()? {
                    out.push(e);
                }
                Ok(Elem::Seq(out))
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings_roundtrip() {
        for s in [
            "int",
            "zmod:12",
            "zmod:1",
            "gfp:5",
            "poly:gfp:5:X",
            "poly:zmod:4:T",
            "monicext:int:[5,1]",
            "monicext:gfp:3:[1,0]",
            "monicext:poly:gfp:5:X:[[0,1],[0]]",
            "prod(zmod:2,zmod:3)",
            "prod(prod(zmod:2,gfp:3),monicext:int:[1,0])",
        ] {
            let spec: RingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        for s in ["", "zmod:0", "gfp:6", "poly:int:X", "monicext:int:[]", "prod(int)", "foo"] {
            assert!(s.parse::<RingSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn element_roundtrip() {
        let cases = [
            ("int", "-17"),
            ("zmod:12", "11"),
            ("poly:gfp:5:X", "1,0,3"),
            ("poly:gfp:5:X", "0"),
            ("monicext:int:[5,1]", "[-5,-1]"),
            ("prod(zmod:2,zmod:3)", "[1,2]"),
            ("prod(poly:gfp:2:X,int)", "[[1,1],-3]"),
        ];
        for (spec, enc) in cases {
            let r: RingSpec = spec.parse().unwrap();
            let e = r.decode(enc).unwrap();
            assert_eq!(r.encode(&e), enc);
        }
    }

    #[test]
    fn rejects_noncanonical_elements() {
        let z: RingSpec = "zmod:12".parse().unwrap();
        assert!(z.decode("12").is_err());
        assert!(z.decode("-1").is_err());
        let p: RingSpec = "poly:gfp:5:X".parse().unwrap();
        assert!(p.decode("1,0").is_err());
        assert!(p.decode("5").is_err());
        let m: RingSpec = "monicext:int:[5,1]".parse().unwrap();
        assert!(m.decode("[1]").is_err());
    }

    #[test]
    fn json_forms() {
        let e = Elem::Seq(vec![Elem::int(-3), Elem::Res(2), Elem::Seq(vec![])]);
        let js = serde_json::to_string(&e).unwrap();
        assert_eq!(js, r#"["-3",2,[]]"#);
        assert_eq!(serde_json::from_str::<Elem>(&js).unwrap(), e);
        let r: RingSpec = "prod(int,monicext:gfp:3:[1,0])".parse().unwrap();
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<RingSpec>(&js).unwrap(), r);
    }
}
