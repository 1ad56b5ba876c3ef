//! The line-oriented `.fun` format for named functions between finite sets.
//!
//! ```text
//! # f : 3 -> 2
//! function f #3 #2
//! send #0 -> #0
//! send #1 -> #1
//! send #2 -> #1
//! ```

use std::fmt::Write as _;

use super::{FinFunction, HfSet};
use crate::error::{Error, Result};
use crate::textline::{strip_comment, Line};

struct Open {
    name: String,
    line: usize,
    domain: HfSet,
    codomain: HfSet,
    pairs: Vec<(HfSet, HfSet)>,
}

fn close(open: Option<Open>, out: &mut Vec<(String, FinFunction)>) -> Result<()> {
    if let Some(o) = open {
        let f = FinFunction::new(o.domain, o.codomain, o.pairs)
            .map_err(|e| Error::parse(o.line, 1, format!("function `{}`: {e}", o.name)))?;
        out.push((o.name, f));
    }
    Ok(())
}

/// Parses named functions, in file order.
pub fn parse_functions(input: &str) -> Result<Vec<(String, FinFunction)>> {
    let mut out = Vec::new();
    let mut open: Option<Open> = None;
    for (i, raw) in input.lines().enumerate() {
        let text = strip_comment(raw);
        let mut line = Line {
            number: i + 1,
            text,
            pos: 0,
        };
        line.skip_ws();
        if line.pos == text.len() {
            continue;
        }
        let keyword_at = line.pos;
        match line.word()? {
            "function" => {
                close(open.take(), &mut out)?;
                let name_at = line.pos;
                let name = line.word()?.to_string();
                if out.iter().any(|(n, _)| *n == name) {
                    return Err(Error::parse(
                        i + 1,
                        name_at + 2,
                        format!("function `{name}` defined twice"),
                    ));
                }
                line.skip_ws();
                let domain = line.literal()?;
                line.skip_ws();
                let codomain = line.literal()?;
                line.end()?;
                open = Some(Open {
                    name,
                    line: i + 1,
                    domain,
                    codomain,
                    pairs: Vec::new(),
                });
            }
            "send" => {
                let Some(o) = open.as_mut() else {
                    return Err(Error::parse(i + 1, keyword_at + 1, "`send` outside a function"));
                };
                line.skip_ws();
                let x = line.literal()?;
                line.arrow()?;
                line.skip_ws();
                let y = line.literal()?;
                line.end()?;
                o.pairs.push((x, y));
            }
            other => {
                return Err(Error::parse(
                    i + 1,
                    keyword_at + 1,
                    format!("unknown keyword `{other}`"),
                ));
            }
        }
    }
    close(open, &mut out)?;
    Ok(out)
}

pub fn print_functions(functions: &[(String, FinFunction)]) -> String {
    let mut out = String::new();
    for (name, f) in functions {
        writeln!(out, "function {name} {} {}", f.domain(), f.codomain()).unwrap();
        for (x, y) in f.pairs() {
            writeln!(out, "send {x} -> {y}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# doubling\nfunction f #3 #2\nsend #0 -> #0\nsend #1 -> #1\nsend #2 -> #1\nfunction g {} #1\n";
        let fs = parse_functions(text).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].1.fiber_sizes(), vec![1, 2]);
        assert!(fs[1].1.domain().is_empty());
        let printed = print_functions(&fs);
        assert_eq!(parse_functions(&printed).unwrap(), fs);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_functions("function f #2 #1\nsend #0 -> #0\nsend #1 -> #4\n") {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 1);
                assert!(message.contains("codomain"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        match parse_functions("function f #2 #1\nsend #0 => #0\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 9)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_functions("send #0 -> #0"),
            Err(Error::Parse { line: 1, column: 1, .. })
        ));
    }
}
