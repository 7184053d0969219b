//! Plain-text JSON documents for algebras, elements, PL functions and
//! ℓ-group elements.
//!
//! ```text
//! {"kind":"chain_product","denominators":[2,3,5]}
//! {"kind":"element","values":["1/2","1/3","0/1"]}
//! {"kind":"pl1","points":[["0/1","0/1"],["1/2","1/2"],["1/1","1/1"]]}
//! {"kind":"lgroup_element","unit":[2,3],"coords":[1,2]}
//! ```
//!
//! An element may carry `"denominators"`; without it each coordinate lives
//! in the smallest chain containing its value.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::lgroup::{LGroupElement, UnitalLGroup};
use crate::mcnaughton::PLFunction;
use crate::mv::{ChainProduct, MvElement};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    ChainProduct(ChainProduct),
    Element(MvElement),
    Pl(PLFunction),
    LGroupElement(LGroupElement),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::ChainProduct(_) => "chain_product",
            Document::Element(_) => "element",
            Document::Pl(_) => "pl1",
            Document::LGroupElement(_) => "lgroup_element",
        }
    }

    pub fn parse(src: &str) -> Result<Self> {
        Self::from_value(&parse_value(src)?)
    }

    pub fn from_value(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| schema("top level must be an object"))?;
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| schema("missing string field `kind`"))?;
        match kind {
            "chain_product" => {
                let ds = int_list(obj, "denominators")?;
                Ok(Document::ChainProduct(ChainProduct::from_i64s(&ds)?))
            }
            "element" => Ok(Document::Element(element_from(obj)?)),
            "pl1" => {
                let points = field(obj, "points")?
                    .as_array()
                    .ok_or_else(|| schema("`points` must be an array"))?
                    .iter()
                    .map(|p| match p.as_array().map(Vec::as_slice) {
                        Some([x, y]) => Ok((rational(x)?, rational(y)?)),
                        _ => Err(schema("each point must be a pair [\"x\", \"y\"]")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Document::Pl(PLFunction::from_points(points)?))
            }
            "lgroup_element" => {
                let group = UnitalLGroup::from_i64s(&int_list(obj, "unit")?)?;
                Ok(Document::LGroupElement(group.element(int_list(obj, "coords")?)?))
            }
            other => Err(schema(&format!(
                "unknown kind `{other}` (expected chain_product, element, pl1 or lgroup_element)"
            ))),
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Document::ChainProduct(a) => chain_product_value(a),
            Document::Element(e) => element_value(e),
            Document::Pl(f) => pl_value(f),
            Document::LGroupElement(g) => json!({
                "kind": "lgroup_element",
                "unit": g.group().unit(),
                "coords": g.coords(),
            }),
        }
    }

    /// Compact single-line JSON.
    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }
}

/// An element together with whether its document named the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementDocument {
    pub element: MvElement,
    pub explicit_algebra: bool,
}

pub fn parse_element(src: &str) -> Result<ElementDocument> {
    let value = parse_value(src)?;
    let explicit_algebra = value.get("denominators").is_some();
    match Document::from_value(&value)? {
        Document::Element(element) => Ok(ElementDocument {
            element,
            explicit_algebra,
        }),
        other => Err(schema(&format!("expected an element document, got {}", other.kind()))),
    }
}

fn parse_value(src: &str) -> Result<Value> {
    serde_json::from_str(src).map_err(|e| Error::DocumentParse {
        offset: byte_offset(src, e.line(), e.column()),
        message: e.to_string(),
    })
}

pub fn chain_product_value(a: &ChainProduct) -> Value {
    json!({"kind": "chain_product", "denominators": a.denominators()})
}

pub fn element_value(e: &MvElement) -> Value {
    json!({
        "kind": "element",
        "values": e.values().iter().map(Rational::to_string).collect::<Vec<_>>(),
        "denominators": e.algebra().denominators(),
    })
}

/// JSON array of element documents.
pub fn element_list_json(elements: &[MvElement]) -> String {
    Value::Array(elements.iter().map(element_value).collect()).to_string()
}

pub fn pl_value(f: &PLFunction) -> Value {
    let points: Vec<[String; 2]> = f
        .points()
        .iter()
        .map(|(x, y)| [x.to_string(), y.to_string()])
        .collect();
    json!({"kind": "pl1", "points": points})
}

/// Smallest denominators that hold every value.
pub fn inferred_algebra(values: &[Rational]) -> Result<ChainProduct> {
    let ds: Vec<u32> = values
        .iter()
        .map(|v| {
            if !v.in_unit_interval() {
                return Err(Error::OutsideUnitInterval(v.to_string()));
            }
            u32::try_from(v.denom()).map_err(|_| schema(&format!("denominator of {v} too large")))
        })
        .collect::<Result<_>>()?;
    ChainProduct::new(ds)
}

fn element_from(obj: &Map<String, Value>) -> Result<MvElement> {
    let values = field(obj, "values")?
        .as_array()
        .ok_or_else(|| schema("`values` must be an array of \"p/q\" strings"))?
        .iter()
        .map(rational)
        .collect::<Result<Vec<_>>>()?;
    let algebra = match obj.get("denominators") {
        Some(_) => ChainProduct::from_i64s(&int_list(obj, "denominators")?)?,
        None => inferred_algebra(&values)?,
    };
    algebra.element(&values)
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| schema(&format!("missing field `{name}`")))
}

fn int_list(obj: &Map<String, Value>, name: &str) -> Result<Vec<i64>> {
    field(obj, name)?
        .as_array()
        .and_then(|xs| xs.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
        .ok_or_else(|| schema(&format!("`{name}` must be an array of integers")))
}

fn rational(v: &Value) -> Result<Rational> {
    v.as_str()
        .ok_or_else(|| schema(&format!("rationals are \"p/q\" strings, got {v}")))?
        .parse()
}

fn schema(msg: &str) -> Error {
    Error::Schema(msg.to_string())
}

/// serde_json reports 1-based line and byte column.
fn byte_offset(src: &str, line: usize, column: usize) -> usize {
    let start: usize = src
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(src.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let a = Document::parse(r#"{"kind":"chain_product","denominators":[2,3,5]}"#).unwrap();
        assert_eq!(a, Document::ChainProduct(ChainProduct::new(vec![2, 3, 5]).unwrap()));
        let e = Document::parse(r#"{"kind":"element","values":["1/2","1/3","0/1"]}"#).unwrap();
        let Document::Element(e) = e else { panic!() };
        assert_eq!(e.algebra().denominators(), [2, 3, 1]);
        let f = Document::parse(r#"{"kind":"pl1","points":[["0/1","0/1"],["1/2","1/2"],["1/1","1/1"]]}"#)
            .unwrap();
        assert_eq!(f, Document::Pl(PLFunction::identity()));
        let g = Document::parse(r#"{"kind":"lgroup_element","unit":[2,3],"coords":[1,2]}"#).unwrap();
        assert_eq!(g.to_json(), r#"{"coords":[1,2],"kind":"lgroup_element","unit":[2,3]}"#);
    }

    #[test]
    fn explicit_denominators_are_kept() {
        let src = r#"{"kind":"element","values":["1/2","0"],"denominators":[4,3]}"#;
        let Document::Element(e) = Document::parse(src).unwrap() else { panic!() };
        assert_eq!(e.numerators(), [2, 0]);
        assert_eq!(
            e.to_string(),
            "(1/2,0)",
        );
        let back = Document::parse(&Document::Element(e.clone()).to_json()).unwrap();
        assert_eq!(back, Document::Element(e));
    }

    #[test]
    fn zero_denominator_names_invariant() {
        let err = Document::parse(r#"{"kind":"element","values":["3/0"]}"#).unwrap_err();
        assert!(err.to_string().contains("positive denominator"), "{err}");
    }

    #[test]
    fn syntax_error_reports_byte_offset() {
        let src = "{\"kind\":\n \"element\" oops}";
        match Document::parse(src).unwrap_err() {
            Error::DocumentParse { offset, .. } => assert_eq!(&src[offset..offset + 1], "o"),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn schema_errors() {
        for src in [
            "[1]",
            r#"{"kind":"mystery"}"#,
            r#"{"kind":"chain_product"}"#,
            r#"{"kind":"chain_product","denominators":[0]}"#,
            r#"{"kind":"element","values":[1]}"#,
            r#"{"kind":"element","values":["2/3"],"denominators":[2]}"#,
            r#"{"kind":"pl1","points":[["0","0"]]}"#,
        ] {
            assert!(Document::parse(src).is_err(), "{src}");
        }
    }
}
