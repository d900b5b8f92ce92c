use super::{Term, TimeFn};
use crate::Error;

/// Parses `term (";" term)*` where a term is one of
/// `poly c0 c1 ...`, `sin amp omega phase`, `cos amp omega phase`, `exp amp rate`.
///
/// Error positions are byte offsets into `text`.
pub fn parse_timefn(text: &str) -> Result<TimeFn, Error> {
    let mut terms = Vec::new();
    let mut offset = 0;
    for chunk in text.split(';') {
        terms.push(parse_term(chunk, offset)?);
        offset += chunk.len() + 1;
    }
    Ok(TimeFn::new(terms))
}

fn syntax(pos: usize, token: &str, message: &str) -> Error {
    Error::Syntax {
        pos,
        token: token.to_string(),
        message: message.to_string(),
    }
}

/// Whitespace-separated tokens with their absolute byte offsets.
fn tokens(chunk: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in chunk.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((base + s, &chunk[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((base + s, &chunk[s..]));
    }
    out
}

fn parse_term(chunk: &str, base: usize) -> Result<Term, Error> {
    let toks = tokens(chunk, base);
    let Some(&(kpos, keyword)) = toks.first() else {
        return Err(syntax(base, "", "empty term"));
    };
    let mut args = Vec::with_capacity(toks.len() - 1);
    for &(pos, tok) in &toks[1..] {
        match tok.parse::<f64>() {
            Ok(v) if v.is_finite() => args.push(v),
            _ => return Err(syntax(pos, tok, "expected a finite real number")),
        }
    }
    let arity = |n: usize| -> Result<(), Error> {
        if args.len() == n {
            Ok(())
        } else {
            Err(syntax(
                kpos,
                keyword,
                &format!("`{keyword}` takes {n} numbers, got {}", args.len()),
            ))
        }
    };
    match keyword {
        "poly" => {
            if args.is_empty() {
                return Err(syntax(
                    kpos,
                    keyword,
                    "`poly` needs at least one coefficient",
                ));
            }
            Ok(Term::Poly(args))
        }
        "sin" => {
            arity(3)?;
            Ok(Term::Sin {
                amp: args[0],
                omega: args[1],
                phase: args[2],
            })
        }
        "cos" => {
            arity(3)?;
            Ok(Term::Cos {
                amp: args[0],
                omega: args[1],
                phase: args[2],
            })
        }
        "exp" => {
            arity(2)?;
            Ok(Term::Exp {
                amp: args[0],
                rate: args[1],
            })
        }
        _ => Err(syntax(kpos, keyword, "unknown term keyword")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_single_polynomial() {
        let f = parse_timefn("poly 0 0 1").unwrap();
        assert_eq!(f, TimeFn::poly(vec![0.0, 0.0, 1.0]));
        assert_eq!(f.eval(3.0, 0), 9.0);
    }

    #[test]
    fn reads_term_sum() {
        let f = parse_timefn("poly 1; sin 2 3 0").unwrap();
        assert_eq!(f, TimeFn::poly(vec![1.0]) + TimeFn::sin(2.0, 3.0, 0.0));
    }

    #[test]
    fn scientific_notation_and_extra_whitespace() {
        let f = parse_timefn("  exp 1e-3   -2.5E1 ;cos 1 2 3").unwrap();
        assert_eq!(f.terms().len(), 2);
        assert_eq!(
            f.terms()[0],
            Term::Exp {
                amp: 1e-3,
                rate: -25.0
            }
        );
    }

    #[test]
    fn unknown_keyword_reports_token() {
        match parse_timefn("poli 1") {
            Err(Error::Syntax { pos, token, .. }) => {
                assert_eq!(pos, 0);
                assert_eq!(token, "poli");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_numeric_token_position() {
        match parse_timefn("poly 1; sin 2 x 0") {
            Err(Error::Syntax { pos, token, .. }) => {
                assert_eq!(token, "x");
                assert_eq!(pos, 14);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_timefn("poly nan").is_err());
    }

    #[test]
    fn wrong_arity_and_empty_terms() {
        assert!(parse_timefn("sin 1 2").is_err());
        assert!(parse_timefn("exp 1 2 3").is_err());
        assert!(parse_timefn("poly").is_err());
        assert!(parse_timefn("").is_err());
        assert!(parse_timefn("poly 1;").is_err());
    }
}
