//! Nested-array JSON form of expression trees: `["mul", lhs, rhs]`,
//! `["const", re, im]`, `["var"]`, `["pow", base, n]` and so on.

use num_complex::Complex64;
use serde_json::{Value, json};

use super::{HoloMap, Node, parse};
use crate::error::{Error, Result};

pub fn to_json(m: &HoloMap) -> Value {
    match m.node() {
        Node::Const(c) => json!(["const", c.re, c.im]),
        Node::Var => json!(["var"]),
        Node::Add(a, b) => json!(["add", to_json(a), to_json(b)]),
        Node::Sub(a, b) => json!(["sub", to_json(a), to_json(b)]),
        Node::Mul(a, b) => json!(["mul", to_json(a), to_json(b)]),
        Node::Div(a, b) => json!(["div", to_json(a), to_json(b)]),
        Node::Neg(a) => json!(["neg", to_json(a)]),
        Node::Pow(a, n) => json!(["pow", to_json(a), n]),
        Node::Sqrt(a) => json!(["sqrt", to_json(a)]),
        Node::Exp(a) => json!(["exp", to_json(a)]),
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

pub fn from_json(value: &Value) -> Result<HoloMap> {
    match value {
        Value::String(s) => parse(s),
        Value::Number(n) => Ok(HoloMap::real(n.as_f64().ok_or_else(|| bad("bad number"))?)),
        Value::Array(items) => {
            let tag = items.first().and_then(Value::as_str).ok_or_else(|| bad("missing node tag"))?;
            let arg = |k: usize| -> Result<HoloMap> {
                from_json(items.get(k).ok_or_else(|| bad(format!("'{tag}' needs argument {k}")))?)
            };
            let num = |k: usize| -> Result<f64> {
                items
                    .get(k)
                    .and_then(Value::as_f64)
                    .ok_or_else(|| bad(format!("'{tag}' needs a number at {k}")))
            };
            let arity = match tag {
                "var" => 1,
                "neg" | "sqrt" | "exp" => 2,
                "const" => 3,
                _ => 3,
            };
            if items.len() != arity && !(tag == "const" && items.len() == 2) {
                return Err(bad(format!("'{tag}' has {} entries", items.len())));
            }
            Ok(match tag {
                "var" => HoloMap::var(),
                "const" => {
                    let im = if items.len() == 3 { num(2)? } else { 0.0 };
                    HoloMap::constant(Complex64::new(num(1)?, im))
                }
                "add" => HoloMap::wrap(Node::Add(arg(1)?, arg(2)?)),
                "sub" => HoloMap::wrap(Node::Sub(arg(1)?, arg(2)?)),
                "mul" => HoloMap::wrap(Node::Mul(arg(1)?, arg(2)?)),
                "div" => HoloMap::wrap(Node::Div(arg(1)?, arg(2)?)),
                "neg" => HoloMap::wrap(Node::Neg(arg(1)?)),
                "pow" => {
                    let n = items[2].as_i64().ok_or_else(|| bad("'pow' needs an integer"))?;
                    let n = i32::try_from(n).map_err(|_| bad("exponent out of range"))?;
                    HoloMap::wrap(Node::Pow(arg(1)?, n))
                }
                "sqrt" => arg(1)?.sqrt(),
                "exp" => arg(1)?.exp(),
                other => return Err(bad(format!("unknown node '{other}'"))),
            })
        }
        _ => Err(bad("expression must be a string, number or array")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let m = parse("sqrt(1 - v^2) * (2+1i) / exp(v) - -v").unwrap();
        let j = to_json(&m);
        assert_eq!(from_json(&j).unwrap(), m);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with("[\"sub\","));
    }

    #[test]
    fn json_accepts_strings_and_shorthand() {
        let m = from_json(&json!(["mul", ["const", 2, 0], ["var"]])).unwrap();
        assert_eq!(m.eval(Complex64::new(1.0, 1.0)).unwrap(), Complex64::new(2.0, 2.0));
        let s = from_json(&json!("v^2")).unwrap();
        assert_eq!(s, parse("v^2").unwrap());
        assert!(from_json(&json!(["frob", 1])).is_err());
        assert!(from_json(&json!(["add", ["var"]])).is_err());
    }
}
