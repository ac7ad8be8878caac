//! Text syntax: rational-function expressions, place names and 0-cycle
//! expressions such as `2[t-1] - [inf] + div((t-1)/(t-2))`.

use num_bigint::BigInt;

use crate::arith::{Field, Gf, Rationals};
use crate::curve::{Curve, EFn, EPoint, EllipticCurve, P1Place, PlaceField, RatFn, P1};
use crate::modulus::ZeroCycle;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{msg} (at offset {pos} in {input:?})")]
pub struct SyntaxError {
    pub input: String,
    pub pos: usize,
    pub msg: String,
}

/// Values an expression can evaluate to.
pub trait Algebra {
    type V: Clone;
    fn int(&self, n: &BigInt) -> Result<Self::V, String>;
    fn var(&self, name: &str) -> Result<Self::V, String>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn div(&self, a: &Self::V, b: &Self::V) -> Result<Self::V, String>;

    fn pow(&self, a: &Self::V, e: i64) -> Result<Self::V, String> {
        let mut acc = self.int(&BigInt::from(1))?;
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, a);
        }
        if e < 0 {
            acc = self.div(&self.int(&BigInt::from(1))?, &acc)?;
        }
        Ok(acc)
    }
}

struct Parser<'a, A: Algebra> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    alg: &'a A,
}

impl<'a, A: Algebra> Parser<'a, A> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError { input: self.src.to_string(), pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn lift<T>(&self, r: Result<T, String>) -> Result<T, SyntaxError> {
        r.or_else(|m| self.err(m))
    }

    fn integer(&mut self) -> Result<BigInt, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        Ok(self.src[start..self.pos].parse().unwrap())
    }

    fn expr(&mut self) -> Result<A::V, SyntaxError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let t = self.term()?;
                self.alg.neg(&t)
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &self.alg.neg(&t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<A::V, SyntaxError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.alg.mul(&acc, &f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.lift(self.alg.div(&acc, &f))?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    let f = self.factor()?;
                    acc = self.alg.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<A::V, SyntaxError> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = self.peek() == Some(b'-');
            if neg {
                self.pos += 1;
            }
            let e = self.integer()?;
            let e: i64 = match i64::try_from(&e) {
                Ok(v) if v <= 1 << 16 => v,
                _ => return self.err("exponent too large"),
            };
            return self.lift(self.alg.pow(&base, if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<A::V, SyntaxError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                self.lift(self.alg.int(&n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                let name = &self.src[start..self.pos];
                self.lift(self.alg.var(name))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Evaluate a complete expression.
pub fn eval_expr<A: Algebra>(alg: &A, src: &str) -> Result<A::V, SyntaxError> {
    let mut p = Parser { src, bytes: src.as_bytes(), pos: 0, alg };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Rational functions in `t`, with `a` naming the generator of `F_{p^k}`.
pub struct LineAlgebra<F: Field> {
    pub field: F,
    pub generator: Option<F::Elem>,
}

impl<F: Field> Algebra for LineAlgebra<F> {
    type V = RatFn<F>;

    fn int(&self, n: &BigInt) -> Result<RatFn<F>, String> {
        let v = i64::try_from(n).map_err(|_| "integer out of range".to_string())?;
        Ok(RatFn::constant(&self.field, self.field.from_int(v)))
    }

    fn var(&self, name: &str) -> Result<RatFn<F>, String> {
        match (name, &self.generator) {
            ("t", _) => Ok(RatFn::t(&self.field)),
            ("a", Some(g)) => Ok(RatFn::constant(&self.field, g.clone())),
            _ => Err(format!("unknown symbol {name:?}")),
        }
    }

    fn add(&self, a: &RatFn<F>, b: &RatFn<F>) -> RatFn<F> {
        a.add(b, &self.field)
    }

    fn neg(&self, a: &RatFn<F>) -> RatFn<F> {
        a.neg(&self.field)
    }

    fn mul(&self, a: &RatFn<F>, b: &RatFn<F>) -> RatFn<F> {
        a.mul(b, &self.field)
    }

    fn div(&self, a: &RatFn<F>, b: &RatFn<F>) -> Result<RatFn<F>, String> {
        a.div(b, &self.field).ok_or_else(|| "division by zero".to_string())
    }

    fn pow(&self, a: &RatFn<F>, e: i64) -> Result<RatFn<F>, String> {
        a.pow(e, &self.field).ok_or_else(|| "division by zero".to_string())
    }
}

/// Functions on `y^2 = x^3 + a x + b` in `x` and `y`.
pub struct EllipticAlgebra<'a> {
    pub curve: &'a EllipticCurve,
}

impl Algebra for EllipticAlgebra<'_> {
    type V = EFn;

    fn int(&self, n: &BigInt) -> Result<EFn, String> {
        let v = i64::try_from(n).map_err(|_| "integer out of range".to_string())?;
        Ok(self.curve.fun_constant(self.curve.field().from_int(v)))
    }

    fn var(&self, name: &str) -> Result<EFn, String> {
        match name {
            "x" => Ok(self.curve.x()),
            "y" => Ok(self.curve.y()),
            _ => Err(format!("unknown symbol {name:?}")),
        }
    }

    fn add(&self, a: &EFn, b: &EFn) -> EFn {
        self.curve.fn_add(a, b)
    }

    fn neg(&self, a: &EFn) -> EFn {
        let m1 = self.curve.fun_constant(self.curve.field().from_int(-1));
        self.curve.fn_mul(a, &m1)
    }

    fn mul(&self, a: &EFn, b: &EFn) -> EFn {
        self.curve.fn_mul(a, b)
    }

    fn div(&self, a: &EFn, b: &EFn) -> Result<EFn, String> {
        let bi = self.curve.fn_inv(b).ok_or_else(|| "division by zero".to_string())?;
        Ok(self.curve.fn_mul(a, &bi))
    }
}

/// Curves whose places and functions have a text form.
pub trait CurveSyntax: Curve {
    fn parse_place(&self, s: &str) -> Result<Self::Place, String>;
    fn parse_function(&self, s: &str) -> Result<Self::Fun, String>;
}

fn parse_line_place<F: PlaceField>(line: &P1<F>, generator: Option<F::Elem>, s: &str) -> Result<P1Place<F>, String> {
    let s = s.trim();
    if s == "inf" {
        return Ok(P1Place::Infinity);
    }
    let body = s.strip_prefix("poly:").unwrap_or(s);
    let f = line.field();
    let alg = LineAlgebra { field: f.clone(), generator };
    let r = eval_expr(&alg, body).map_err(|e| e.to_string())?;
    if !r.den().is_one(f) || r.num().is_constant() {
        return Err(format!("place {s:?} is not a nonconstant polynomial"));
    }
    P1Place::finite(f, r.num().monic(f)).map_err(|e| format!("place {s:?}: {e}"))
}

fn gf_generator(f: &Gf) -> Option<crate::arith::GfElem> {
    (f.k() > 1).then(|| f.generator())
}

impl CurveSyntax for P1<Gf> {
    fn parse_place(&self, s: &str) -> Result<P1Place<Gf>, String> {
        parse_line_place(self, gf_generator(self.field()), s)
    }

    fn parse_function(&self, s: &str) -> Result<RatFn<Gf>, String> {
        let alg = LineAlgebra { field: *self.field(), generator: gf_generator(self.field()) };
        eval_expr(&alg, s).map_err(|e| e.to_string())
    }
}

impl CurveSyntax for P1<Rationals> {
    fn parse_place(&self, s: &str) -> Result<P1Place<Rationals>, String> {
        parse_line_place(self, None, s)
    }

    fn parse_function(&self, s: &str) -> Result<RatFn<Rationals>, String> {
        let alg = LineAlgebra { field: Rationals, generator: None };
        eval_expr(&alg, s).map_err(|e| e.to_string())
    }
}

impl CurveSyntax for EllipticCurve {
    fn parse_place(&self, s: &str) -> Result<EPoint, String> {
        let s = s.trim();
        if s == "O" || s == "inf" {
            return Ok(EPoint::Infinity);
        }
        let body = s.strip_prefix("pt:").ok_or_else(|| format!("place {s:?} is not of the form pt:x,y or O"))?;
        let (x, y) = body.split_once(',').ok_or_else(|| format!("place {s:?} needs two coordinates"))?;
        let x: i64 = x.trim().parse().map_err(|_| format!("bad coordinate in {s:?}"))?;
        let y: i64 = y.trim().parse().map_err(|_| format!("bad coordinate in {s:?}"))?;
        self.point(x, y).map_err(|e| e.to_string())
    }

    fn parse_function(&self, s: &str) -> Result<EFn, String> {
        eval_expr(&EllipticAlgebra { curve: self }, s).map_err(|e| e.to_string())
    }
}

/// Errors from cycle expressions, split by how the CLI reports them.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Curve(#[from] crate::curve::CurveError),
}

/// Parse `cycle := [sign] term (sign term)*`, `term := [n ['*']] ('[' place ']' | 'div(' f ')')`.
pub fn parse_cycle<C: CurveSyntax>(curve: &C, src: &str) -> Result<ZeroCycle<C::Place>, CycleError> {
    let bytes = src.as_bytes();
    let mut pos = 0;
    let fail = |pos: usize, msg: &str| CycleError::Syntax(format!("{msg} (at offset {pos} in {src:?})"));
    let skip = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip(&mut pos);
    if src.trim() == "0" {
        return Ok(ZeroCycle::zero());
    }
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        skip(&mut pos);
        if pos >= bytes.len() {
            if first {
                return Err(fail(pos, "empty cycle"));
            }
            break;
        }
        let mut sign = 1i64;
        match bytes[pos] {
            b'+' => pos += 1,
            b'-' => {
                sign = -1;
                pos += 1
            }
            _ if !first => return Err(fail(pos, "expected '+' or '-'")),
            _ => {}
        }
        first = false;
        skip(&mut pos);
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let coeff: i64 = if start == pos {
            1
        } else {
            src[start..pos].parse().map_err(|_| fail(start, "coefficient out of range"))?
        };
        skip(&mut pos);
        if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
            skip(&mut pos);
        }
        if pos < bytes.len() && bytes[pos] == b'[' {
            let close = src[pos..].find(']').ok_or_else(|| fail(pos, "unclosed '['"))? + pos;
            let place = curve.parse_place(&src[pos + 1..close]).map_err(|m| fail(pos + 1, &m))?;
            terms.push((place, sign * coeff));
            pos = close + 1;
        } else if src[pos..].starts_with("div") {
            pos += 3;
            skip(&mut pos);
            if pos >= bytes.len() || bytes[pos] != b'(' {
                return Err(fail(pos, "expected '(' after div"));
            }
            let open = pos;
            let mut depth = 0usize;
            let mut close = None;
            for (i, &b) in bytes.iter().enumerate().skip(open) {
                match b {
                    b'(' => depth += 1,
                    b')' => {
                        depth -= 1;
                        if depth == 0 {
                            close = Some(i);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let close = close.ok_or_else(|| fail(open, "unbalanced parentheses"))?;
            let f = curve.parse_function(&src[open + 1..close]).map_err(|m| fail(open + 1, &m))?;
            if curve.fun_is_zero(&f) {
                return Err(fail(open + 1, "div of the zero function"));
            }
            for (p, m) in curve.divisor_of(&f)? {
                terms.push((p, sign * coeff * m));
            }
            pos = close + 1;
        } else {
            return Err(fail(pos, "expected '[place]' or 'div(...)'"));
        }
    }
    Ok(ZeroCycle::new(terms))
}

/// Inverse of [`CurveSyntax::parse_place`] on the displayed forms.
pub fn place_text<C: Curve>(curve: &C, p: &C::Place) -> String {
    curve.fmt_place(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn expressions() {
        let f = Gf::prime(5).unwrap();
        let line = P1::new(f);
        let g = line.parse_function("(t-1)/(t-2)").unwrap();
        assert_eq!(g.eval(&f.zero(), &f), Some(f.from_int(3)));
        let h = line.parse_function("2t^2 - 3(t+1)^-1").unwrap();
        assert_eq!(h.den().deg(), 1);
        assert!(line.parse_function("t +").is_err());
        assert!(line.parse_function("s").is_err());
        let q = P1::new(Rationals);
        let r = q.parse_function("t - 1/2").unwrap();
        assert_eq!(r.eval(&rat(1, 2), &Rationals), Some(rat(0, 1)));
    }

    #[test]
    fn places_round_trip() {
        let f2 = Gf::prime(2).unwrap();
        let line = P1::new(f2);
        for p in f2.enumerate_places(3).unwrap().listed() {
            assert_eq!(line.parse_place(&line.fmt_place(&p)).unwrap(), p);
        }
        assert!(line.parse_place("poly:t^2+1").is_err());
        let f4 = Gf::new(2, 2).unwrap();
        let line4 = P1::new(f4);
        for p in f4.enumerate_places(2).unwrap().listed() {
            assert_eq!(line4.parse_place(&line4.fmt_place(&p)).unwrap(), p);
        }
        let e = EllipticCurve::new(5, 1, 0).unwrap();
        for p in e.points() {
            assert_eq!(e.parse_place(&e.fmt_place(&p)).unwrap(), p);
        }
        assert!(e.parse_place("pt:1,1").is_err());
    }

    #[test]
    fn cycles() {
        let f3 = Gf::prime(3).unwrap();
        let line = P1::new(f3);
        let z = parse_cycle(&line, "[t-1] - [t-2]").unwrap();
        assert_eq!(z.terms().len(), 2);
        assert_eq!(z.degree(&line), 0);
        let w = parse_cycle(&line, "div((t-1)/(t-2))").unwrap();
        assert_eq!(w, z);
        let v = parse_cycle(&line, "2*[inf] - 2[t]").unwrap();
        assert_eq!(v.degree(&line), 0);
        assert!(parse_cycle(&line, "[t] [t]").is_err());
        assert!(parse_cycle(&line, "").is_err());
        assert!(parse_cycle(&line, "div(0)").is_err());
        let e = EllipticCurve::new(5, 1, 0).unwrap();
        let z = parse_cycle(&e, "[pt:2,0] - [O]").unwrap();
        assert_eq!(z.degree(&e), 0);
        let d = parse_cycle(&e, "div(x-2)").unwrap();
        assert_eq!(d, ZeroCycle::new(vec![(e.point(2, 0).unwrap(), 2), (EPoint::Infinity, -2)]));
    }
}
