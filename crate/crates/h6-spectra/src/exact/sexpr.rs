//! S-expression syntax for exact real values.
//!
//! The grammar covers exactly the constructors of [`AlgebraicReal`]:
//!
//! ```text
//! expr     ::= rational | '(' 'sqrt' expr ')' | '(' op expr expr+ ')'
//! op       ::= '+' | '-' | '*' | '/'
//! rational ::= '-'? digits ('/' digits)?
//! ```
//!
//! `+` and `*` fold left over two or more arguments; `-` with a single
//! argument is negation; `/` is strictly binary.  Formatting is the exact
//! inverse: it walks the expression tree and emits one form per node, so a
//! value round-trips bit-for-bit through `format` ∘ `parse`.  Certificates
//! rely on that determinism when they compare bound expressions as strings.

use num_bigint::BigInt;

use super::qs3::{Rational, QS3};
use super::real::{AlgebraicReal, Node};
use super::ExactError;

/// Renders an exact value as an s-expression.
pub fn format_sexpr(x: &AlgebraicReal) -> String {
    let mut out = String::new();
    write_expr(x, &mut out);
    out
}

/// Renders the canonical normal form when the value lies in a small
/// multi-quadratic field — a flat sum of rational multiples of square
/// roots, e.g. `(/ (sqrt 143) 5)` — and falls back to the structural
/// rendering otherwise.  Both forms parse back to the same value.
/// Pulls the largest square factor found by bounded trial division out of a
/// radicand: returns `(s, r)` with the input equal to `s²·r`.
fn extract_square(rad: &BigInt) -> (BigInt, BigInt) {
    use num_traits::{One, Zero};
    let mut s = BigInt::one();
    let mut r = rad.clone();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1000u32);
    while p <= limit {
        let pp = &p * &p;
        if pp > r {
            break;
        }
        while (&r % &pp).is_zero() {
            r /= &pp;
            s *= &p;
        }
        p += 1u32;
    }
    (s, r)
}

pub fn canonical_sexpr(x: &AlgebraicReal) -> String {
    use num_traits::One;
    let Some(nf) = x.nf() else {
        return format_sexpr(x);
    };
    if nf.terms().is_empty() {
        return "0".to_string();
    }
    let one = BigInt::one();
    let mut terms: Vec<(BigInt, Rational)> = nf
        .terms()
        .into_iter()
        .map(|(rad, c)| {
            let (s, r) = extract_square(&rad);
            (r, c * Rational::from_integer(s))
        })
        .collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let rendered: Vec<String> = terms
        .iter()
        .map(|(rad, c)| {
            if *rad == one {
                let mut s = String::new();
                write_rational(c, &mut s);
                return s;
            }
            let root = format!("(sqrt {rad})");
            let p = c.numer();
            let q = c.denom();
            if q.is_one() {
                if p.is_one() {
                    root
                } else {
                    format!("(* {p} {root})")
                }
            } else if p.is_one() {
                format!("(/ {root} {q})")
            } else {
                format!("(/ (* {p} {root}) {q})")
            }
        })
        .collect();
    if rendered.len() == 1 {
        rendered.into_iter().next().expect("one term")
    } else {
        format!("(+ {})", rendered.join(" "))
    }
}

fn write_expr(x: &AlgebraicReal, out: &mut String) {
    match x.node() {
        Node::Const(q) => write_const(q, out),
        Node::Add(a, b) => write_binary("+", a, b, out),
        Node::Sub(a, b) => write_binary("-", a, b, out),
        Node::Mul(a, b) => write_binary("*", a, b, out),
        Node::Div(a, b) => write_binary("/", a, b, out),
        Node::Sqrt(a) => {
            out.push_str("(sqrt ");
            write_expr(a, out);
            out.push(')');
        }
    }
}

fn write_binary(op: &str, a: &AlgebraicReal, b: &AlgebraicReal, out: &mut String) {
    out.push('(');
    out.push_str(op);
    out.push(' ');
    write_expr(a, out);
    out.push(' ');
    write_expr(b, out);
    out.push(')');
}

fn write_rational(r: &Rational, out: &mut String) {
    out.push_str(&r.numer().to_string());
    if !r.is_integer() {
        out.push('/');
        out.push_str(&r.denom().to_string());
    }
}

/// A constant a + b√3 prints as a rational when b = 0 and otherwise as an
/// explicit combination with `(sqrt 3)`.
fn write_const(q: &QS3, out: &mut String) {
    use num_traits::{One, Zero};
    if q.b.is_zero() {
        write_rational(&q.a, out);
        return;
    }
    let root = "(sqrt 3)";
    let factor = |b: &Rational, out: &mut String| {
        if b.is_one() {
            out.push_str(root);
        } else {
            out.push_str("(* ");
            write_rational(b, out);
            out.push(' ');
            out.push_str(root);
            out.push(')');
        }
    };
    if q.a.is_zero() {
        factor(&q.b, out);
    } else {
        out.push_str("(+ ");
        write_rational(&q.a, out);
        out.push(' ');
        factor(&q.b, out);
        out.push(')');
    }
}

/// Parses an s-expression into an exact value.  Errors carry the byte offset
/// of the offending token.
pub fn parse_sexpr(input: &str) -> Result<AlgebraicReal, ExactError> {
    let tokens = tokenize(input)?;
    let mut pos = 0usize;
    let expr = parse_expr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(err(tokens[pos].1, "trailing input after expression"));
    }
    Ok(expr)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

fn err(position: usize, message: &str) -> ExactError {
    ExactError::Parse {
        position,
        message: message.to_string(),
    }
}

fn tokenize(input: &str) -> Result<Vec<(Tok, usize)>, ExactError> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'(' => {
                out.push((Tok::Open, i));
                i += 1;
            }
            b')' => {
                out.push((Tok::Close, i));
                i += 1;
            }
            _ => {
                let start = i;
                while i < bytes.len() && !matches!(bytes[i], b' ' | b'\t' | b'\n' | b'\r' | b'(' | b')') {
                    i += 1;
                }
                out.push((Tok::Atom(input[start..i].to_string()), start));
            }
        }
    }
    Ok(out)
}

fn parse_expr(tokens: &[(Tok, usize)], pos: &mut usize) -> Result<AlgebraicReal, ExactError> {
    let Some((tok, at)) = tokens.get(*pos) else {
        return Err(err(usize::MAX, "unexpected end of input"));
    };
    match tok {
        Tok::Atom(a) => {
            *pos += 1;
            parse_rational(a, *at)
        }
        Tok::Close => Err(err(*at, "unexpected ')'")),
        Tok::Open => {
            *pos += 1;
            let Some((head, head_at)) = tokens.get(*pos) else {
                return Err(err(usize::MAX, "unexpected end of input after '('"));
            };
            let Tok::Atom(op) = head else {
                return Err(err(*head_at, "expected an operator after '('"));
            };
            let op = op.clone();
            let head_at = *head_at;
            *pos += 1;
            let mut args = Vec::new();
            while let Some((t, _)) = tokens.get(*pos) {
                if *t == Tok::Close {
                    break;
                }
                args.push(parse_expr(tokens, pos)?);
            }
            let Some((Tok::Close, _)) = tokens.get(*pos) else {
                return Err(err(usize::MAX, "missing ')'"));
            };
            *pos += 1;
            combine(&op, args, head_at)
        }
    }
}

fn combine(op: &str, args: Vec<AlgebraicReal>, at: usize) -> Result<AlgebraicReal, ExactError> {
    let arity = args.len();
    match op {
        "sqrt" => {
            if arity != 1 {
                return Err(err(at, "sqrt takes exactly one argument"));
            }
            args.into_iter().next().unwrap().sqrt()
        }
        "+" | "*" => {
            if arity < 2 {
                return Err(err(at, "operator needs at least two arguments"));
            }
            let mut it = args.into_iter();
            let mut acc = it.next().unwrap();
            for x in it {
                acc = if op == "+" { &acc + &x } else { &acc * &x };
            }
            Ok(acc)
        }
        "-" => match arity {
            1 => Ok(-args.into_iter().next().unwrap()),
            2 => {
                let mut it = args.into_iter();
                let a = it.next().unwrap();
                Ok(&a - &it.next().unwrap())
            }
            _ => Err(err(at, "'-' takes one or two arguments")),
        },
        "/" => {
            if arity != 2 {
                return Err(err(at, "'/' takes exactly two arguments"));
            }
            let mut it = args.into_iter();
            let a = it.next().unwrap();
            let b = it.next().unwrap();
            a.checked_div(&b)
        }
        _ => Err(err(at, "unknown operator")),
    }
}

fn parse_rational(atom: &str, at: usize) -> Result<AlgebraicReal, ExactError> {
    let (num_str, den_str) = match atom.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (atom, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| err(at, "expected a rational literal"))?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| err(at, "expected a rational literal"))?,
        None => BigInt::from(1),
    };
    if denom == BigInt::from(0) {
        return Err(err(at, "zero denominator in rational literal"));
    }
    Ok(AlgebraicReal::from_rational(Rational::new(numer, denom)))
}

#[cfg(test)]
mod tests {
    use super::super::qs3::rat;
    use super::*;
    use std::cmp::Ordering;

    #[test]
    fn parse_evaluates_exactly() {
        let x = parse_sexpr("(/ (sqrt 143) 5)").unwrap();
        let y = AlgebraicReal::from_int(143).sqrt().unwrap()
            / AlgebraicReal::from_int(5);
        assert_eq!(x.compare(&y).unwrap(), Ordering::Equal);
        let z = parse_sexpr("(+ 1/2 (* 3 1/6))").unwrap();
        assert_eq!(z.as_rational(), Some(rat(1, 1)));
    }

    #[test]
    fn canonical_form_flattens_and_reduces() {
        let b2 = parse_sexpr("(/ (+ (* 13 (+ (sqrt 3) (sqrt 7))) (sqrt 143)) 26)").unwrap();
        assert_eq!(
            canonical_sexpr(&b2),
            "(+ (/ (sqrt 3) 2) (/ (sqrt 7) 2) (/ (sqrt 143) 26))"
        );
        let again = parse_sexpr(&canonical_sexpr(&b2)).unwrap();
        assert_eq!(b2.compare(&again).unwrap(), Ordering::Equal);
        // Square parts of radicands come out: √45/3 = √5·3/3 = √5.
        let x = parse_sexpr("(/ (sqrt 45) 3)").unwrap();
        assert_eq!(canonical_sexpr(&x), "(sqrt 5)");
        let r = parse_sexpr("(- 1/2 2)").unwrap();
        assert_eq!(canonical_sexpr(&r), "-3/2");
        assert_eq!(canonical_sexpr(&AlgebraicReal::zero()), "0");
        let m = parse_sexpr("(* -2 (sqrt 8))").unwrap();
        assert_eq!(canonical_sexpr(&m), "(* -4 (sqrt 2))");
    }

    #[test]
    fn format_round_trips() {
        let b2 = parse_sexpr("(/ (+ (* 13 (+ (sqrt 3) (sqrt 7))) (sqrt 143)) 26)").unwrap();
        let text = format_sexpr(&b2);
        let again = parse_sexpr(&text).unwrap();
        assert_eq!(b2.compare(&again).unwrap(), Ordering::Equal);
        assert_eq!(format_sexpr(&again), text);
    }

    #[test]
    fn qs3_constants_print_explicitly() {
        let q = AlgebraicReal::from_qs3(QS3::new(rat(1, 2), rat(-3, 4)));
        assert_eq!(format_sexpr(&q), "(+ 1/2 (* -3/4 (sqrt 3)))");
        assert_eq!(format_sexpr(&AlgebraicReal::sqrt3()), "(sqrt 3)");
        assert_eq!(format_sexpr(&AlgebraicReal::from_int(7)), "7");
    }

    #[test]
    fn variadic_and_unary_forms() {
        let x = parse_sexpr("(* 2 3 4)").unwrap();
        assert_eq!(x.as_rational(), Some(rat(24, 1)));
        let y = parse_sexpr("(- 5)").unwrap();
        assert_eq!(y.as_rational(), Some(rat(-5, 1)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_sexpr("(^ 1 2)") {
            Err(ExactError::Parse { position, .. }) => assert_eq!(position, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_sexpr("(sqrt -1)").is_err());
        assert!(parse_sexpr("(/ 1 0)").is_err());
        assert!(parse_sexpr("1 2").is_err());
        match parse_sexpr("(+ 1 x)") {
            Err(ExactError::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
