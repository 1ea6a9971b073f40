//! Expression grammar for [`HoloMap`].
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := call ('^' int)?          int may be written -n or (-n)
//! call   := number 'i'? call? | 'i' | 'v' | 'pi'
//!         | ('sqrt' | 'exp') '(' expr ')' | '(' expr ')'
//! ```
//!
//! A number directly followed by another factor multiplies it (`2v`,
//! `3(v+1)`). Errors carry the byte offset of the offending token.

use num_complex::Complex64;

use super::{HoloMap, Node};
use crate::error::{Error, Result};

pub fn parse(src: &str) -> Result<HoloMap> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let m = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(m)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { offset: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn expr(&mut self) -> Result<HoloMap> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = lhs + self.term()?;
            } else if self.eat(b'-') {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<HoloMap> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = lhs * self.unary()?;
            } else if self.eat(b'/') {
                lhs = lhs / self.unary()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<HoloMap> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<HoloMap> {
        let base = self.call()?;
        if self.eat(b'^') {
            let n = self.exponent()?;
            return Ok(raw_pow(base, n));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i32> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer exponent"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let n: i32 = text.parse().map_err(|_| {
            Error::Syntax { offset: start, message: "exponent out of range".into() }
        })?;
        if paren {
            self.expect(b')')?;
        }
        Ok(if neg { -n } else { n })
    }

    fn ident(&mut self) -> &[u8] {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(b'(') | Some(b'v') | Some(b's') | Some(b'e') | Some(b'p'))
    }

    fn call(&mut self) -> Result<HoloMap> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() || b == b'.' => {
                let r = self.number()?;
                let mut value = if self.src.get(self.pos) == Some(&b'i')
                    && !self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_alphabetic())
                {
                    self.pos += 1;
                    HoloMap::constant(Complex64::new(0.0, r))
                } else {
                    HoloMap::real(r)
                };
                if self.starts_factor() {
                    // implicit product such as 2v or 3(v+1), binding like '^'
                    let rhs = self.power()?;
                    value = value * rhs;
                }
                Ok(value)
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let name = self.ident().to_vec();
                match name.as_slice() {
                    b"v" => Ok(HoloMap::var()),
                    b"i" => Ok(HoloMap::constant(Complex64::new(0.0, 1.0))),
                    b"pi" => Ok(HoloMap::real(std::f64::consts::PI)),
                    b"sqrt" | b"exp" => {
                        self.expect(b'(')?;
                        let arg = self.expr()?;
                        self.expect(b')')?;
                        Ok(if name == b"sqrt" { arg.sqrt() } else { arg.exp() })
                    }
                    _ => Err(Error::Syntax {
                        offset: at,
                        message: format!("unknown name '{}'", String::from_utf8_lossy(&name)),
                    }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        let s = self.src;
        let mut p = self.pos;
        while p < s.len() && (s[p].is_ascii_digit() || s[p] == b'.') {
            p += 1;
        }
        if p < s.len() && (s[p] == b'e' || s[p] == b'E') {
            let mut q = p + 1;
            if q < s.len() && (s[q] == b'+' || s[q] == b'-') {
                q += 1;
            }
            if q < s.len() && s[q].is_ascii_digit() {
                while q < s.len() && s[q].is_ascii_digit() {
                    q += 1;
                }
                p = q;
            }
        }
        let text = std::str::from_utf8(&s[start..p]).unwrap();
        let r: f64 = text
            .parse()
            .map_err(|_| Error::Syntax { offset: start, message: format!("bad number '{text}'") })?;
        self.pos = p;
        Ok(r)
    }
}

/// `^` in source text keeps the power node even for small exponents so that
/// printing and reparsing is stable.
fn raw_pow(base: HoloMap, n: i32) -> HoloMap {
    match base.as_const() {
        Some(_) => base.powi(n),
        None => HoloMap::wrap(Node::Pow(base, n)),
    }
}

const P_ADD: u8 = 1;
const P_MUL: u8 = 2;
const P_UNARY: u8 = 3;
const P_POW: u8 = 4;
const P_ATOM: u8 = 5;

fn fmt_real(r: f64) -> String {
    let s = format!("{r}");
    if s.contains("inf") || s.contains("NaN") {
        // not representable in the grammar; callers never build these
        return "(0/0)".into();
    }
    s
}

/// Text and binding strength of a constant.
fn fmt_const(c: Complex64) -> (String, u8) {
    let (re, im) = (c.re, c.im);
    if im == 0.0 {
        if re >= 0.0 {
            (fmt_real(re), P_ATOM)
        } else {
            (format!("-{}", fmt_real(-re)), P_UNARY)
        }
    } else if re == 0.0 {
        if im > 0.0 {
            (format!("{}i", fmt_real(im)), P_ATOM)
        } else {
            (format!("-{}i", fmt_real(-im)), P_UNARY)
        }
    } else {
        let re_s = if re >= 0.0 { fmt_real(re) } else { format!("-{}", fmt_real(-re)) };
        let sign = if im >= 0.0 { '+' } else { '-' };
        (format!("{re_s}{sign}{}i", fmt_real(im.abs())), P_ADD)
    }
}

fn wrap(s: String, prec: u8, need: u8) -> String {
    if prec < need {
        format!("({s})")
    } else {
        s
    }
}

fn render(m: &HoloMap) -> (String, u8) {
    match m.node() {
        Node::Const(c) => fmt_const(*c),
        Node::Var => ("v".into(), P_ATOM),
        Node::Add(a, b) | Node::Sub(a, b) => {
            let op = if matches!(m.node(), Node::Add(..)) { '+' } else { '-' };
            let (sa, pa) = render(a);
            let (sb, pb) = render(b);
            // constants get parenthesized on the right so that folding on
            // reparse cannot merge them into a neighbour
            let need_b = if b.as_const().is_some() { P_ATOM } else { P_MUL };
            (format!("{} {op} {}", wrap(sa, pa, P_ADD), wrap(sb, pb, need_b)), P_ADD)
        }
        Node::Mul(a, b) | Node::Div(a, b) => {
            let op = if matches!(m.node(), Node::Mul(..)) { '*' } else { '/' };
            let (sa, pa) = render(a);
            let (sb, pb) = render(b);
            let need_a = if a.as_const().is_some() { P_ATOM } else { P_MUL };
            let need_b = if b.as_const().is_some() { P_ATOM } else { P_UNARY };
            (format!("{} {op} {}", wrap(sa, pa, need_a), wrap(sb, pb, need_b)), P_MUL)
        }
        Node::Neg(a) => {
            let (sa, pa) = render(a);
            (format!("-{}", wrap(sa, pa, P_POW)), P_UNARY)
        }
        Node::Pow(a, n) => {
            let (sa, pa) = render(a);
            let exp = if *n < 0 { format!("(-{})", n.unsigned_abs()) } else { n.to_string() };
            (format!("{}^{exp}", wrap(sa, pa, P_ATOM)), P_POW)
        }
        Node::Sqrt(a) => (format!("sqrt({})", render(a).0), P_ATOM),
        Node::Exp(a) => (format!("exp({})", render(a).0), P_ATOM),
    }
}

pub fn print(m: &HoloMap) -> String {
    render(m).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parse_examples() {
        let m = parse("v^2").unwrap();
        assert_eq!(m.eval(c(1.0, 1.0)).unwrap(), c(0.0, 2.0));

        let h = parse("(2i + v/2)").unwrap();
        assert_eq!(h.eval(c(0.0, -4.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(h.eval(c(2.0, 0.0)).unwrap(), c(1.0, 2.0));

        let s = parse("sqrt(1 - v^2)").unwrap();
        assert_eq!(s.eval(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        // both sides of the pulled-back cut at v = 3
        let up = s.eval(c(3.0, 1e-12)).unwrap();
        let down = s.eval(c(3.0, -1e-12)).unwrap();
        assert!(up.im < 0.0 && down.im > 0.0);
    }

    #[test]
    fn precedence() {
        let z = c(0.3, -1.2);
        let cases: [(&str, Complex64); 7] = [
            ("-v^2", -(z * z)),
            ("2v + 1", 2.0 * z + 1.0),
            ("1/v/2", 1.0 / z / 2.0),
            ("v^(-2)", z.powi(-2)),
            ("v^-1 * 3", z.inv() * 3.0),
            ("exp(i*pi/2) * v", c(0.0, 1.0) * z),
            ("1 - 2 - 3", c(-4.0, 0.0)),
        ];
        for (src, want) in cases {
            let got = parse(src).unwrap().eval(z).unwrap();
            assert!((got - want).norm() < 1e-14, "{src}: {got} vs {want}");
        }
    }

    #[test]
    fn syntax_errors_have_offsets() {
        assert_eq!(
            parse("v + * 2"),
            Err(Error::Syntax { offset: 4, message: "unexpected character".into() })
        );
        match parse("sqrt(v") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        match parse("1 + foo(v)") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("v^x"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { offset: 0, .. })));
    }

    #[test]
    fn print_examples() {
        assert_eq!(parse("v^2").unwrap().to_string(), "v^2");
        assert_eq!(parse("2i + v/2").unwrap().to_string(), "2i + v / 2");
        assert_eq!(parse("sqrt(1 - v^2)").unwrap().to_string(), "sqrt(1 - v^2)");
        assert_eq!(parse("(1+2i)*v").unwrap().to_string(), "(1+2i) * v");
    }

    fn arb_map() -> impl Strategy<Value = HoloMap> {
        let leaf = prop_oneof![
            Just(HoloMap::var()),
            (-4i32..5, -4i32..5).prop_map(|(a, b)| HoloMap::constant(c(a as f64 * 0.5, b as f64))),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a / b),
                inner.clone().prop_map(|a| -a),
                (inner.clone(), -3i32..4).prop_map(|(a, n)| raw_pow(a, n)),
                inner.clone().prop_map(|a| a.sqrt()),
                inner.prop_map(|a| a.exp()),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(m in arb_map()) {
            let text = m.to_string();
            let back = parse(&text).unwrap();
            prop_assert_eq!(back.to_string(), text);
            let z = c(0.37, 0.81);
            match (m.eval(z), back.eval(z)) {
                (Ok(a), Ok(b)) => prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm())),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
            }
        }

        #[test]
        fn derivative_matches_central_difference(
            m in arb_map(),
            re in -2.0f64..2.0,
            im in 0.05f64..2.0,
        ) {
            let z = c(re, im);
            let d = 1e-5;
            let Ok(exact) = m.derivative().eval(z) else { return Ok(()) };
            // stay away from cuts and from near-poles where the step is too coarse
            let margin = [z, z + d, z - d]
                .iter()
                .map(|w| m.branch_margin(*w).unwrap_or(0.0))
                .fold(f64::INFINITY, f64::min);
            prop_assume!(margin > 1e-2 && exact.norm() < 1e4);
            let (Ok(a), Ok(b)) = (m.eval(z + d), m.eval(z - d)) else { return Ok(()) };
            let fd = (a - b) / (2.0 * d);
            prop_assert!((fd - exact).norm() <= 1e-6 * (1.0 + exact.norm()), "{} at {}: {} vs {}", m, z, fd, exact);
        }
    }
}
