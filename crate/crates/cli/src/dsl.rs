//! The construction language.
//!
//! ```text
//! expr  := int | name | name "(" [arg ("," arg)*] ")"
//! arg   := expr | list | key "=" (expr | list | bool)
//! list  := "[" [item ("," item)*] "]"
//! item  := name | string | int | list
//! ```
//!
//! A bare integer `n` in lattice position is the chain with `n` elements.
//! Element names that are not plain words can be written as quoted strings.

use latkit::congruence::{quotient, Congruence};
use latkit::constructors::{boolean, chain, lexicographic_sum, linear_sum, product, two_by_z_window};
use latkit::doubling::{day_double, DoublingSpec};
use latkit::fd::free_distributive;
use latkit::fixtures::{fixture, fixture_names};
use latkit::poset::Poset;
use latkit::{ElementSet, Lattice};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64, usize),
    Bool(bool, usize),
    Name(String, usize),
    List(Vec<Value>, usize),
    Call { name: String, args: Vec<Arg>, pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arg {
    pub key: Option<String>,
    pub value: Value,
}

impl Value {
    fn pos(&self) -> usize {
        match self {
            Value::Int(_, p) | Value::Bool(_, p) | Value::Name(_, p) | Value::List(_, p) => *p,
            Value::Call { pos, .. } => *pos,
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn parse_error(pos: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { position: pos, message: message.into() }
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("{f:?}"));
            Err(parse_error(self.pos, format!("expected {c:?}, found {found}")))
        }
    }

    fn word(&mut self) -> Option<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().find(|c: char| !(c.is_alphanumeric() || c == '_')).unwrap_or(self.rest().len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((self.src[start..self.pos].to_string(), start))
    }

    fn string(&mut self) -> Result<(String, usize), CliError> {
        let start = self.pos;
        self.pos += 1;
        let mut out = String::new();
        let mut chars = self.rest().char_indices();
        while let Some((i, c)) = chars.next() {
            match c {
                '"' => {
                    self.pos += i + 1;
                    return Ok((out, start));
                }
                '\\' => match chars.next() {
                    Some((_, e)) => out.push(e),
                    None => break,
                },
                _ => out.push(c),
            }
        }
        Err(parse_error(start, "unterminated string"))
    }

    fn value(&mut self) -> Result<Value, CliError> {
        match self.peek() {
            None => Err(parse_error(self.pos, "unexpected end of input")),
            Some('[') => {
                let start = self.pos;
                self.pos += 1;
                let mut items = Vec::new();
                if !self.eat(']') {
                    loop {
                        items.push(self.value()?);
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                Ok(Value::List(items, start))
            }
            Some('"') => {
                let (s, p) = self.string()?;
                Ok(Value::Name(s, p))
            }
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let start = self.pos;
                let len = 1 + self.rest()[1..].find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len() - 1);
                let text = &self.rest()[..len];
                self.pos += len;
                text.parse().map(|n| Value::Int(n, start)).map_err(|_| parse_error(start, format!("bad integer {text:?}")))
            }
            Some(c) => {
                let (name, start) = self.word().ok_or_else(|| parse_error(self.pos, format!("unexpected {c:?}")))?;
                match name.as_str() {
                    "true" => return Ok(Value::Bool(true, start)),
                    "false" => return Ok(Value::Bool(false, start)),
                    _ => {}
                }
                if !self.eat('(') {
                    return Ok(Value::Name(name, start));
                }
                let mut args = Vec::new();
                if !self.eat(')') {
                    loop {
                        args.push(self.arg()?);
                        if self.eat(')') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                Ok(Value::Call { name, args, pos: start })
            }
        }
    }

    fn arg(&mut self) -> Result<Arg, CliError> {
        let save = self.pos;
        if let Some((key, _)) = self.word() {
            if self.eat('=') {
                return Ok(Arg { key: Some(key), value: self.value()? });
            }
        }
        self.pos = save;
        Ok(Arg { key: None, value: self.value()? })
    }
}

pub fn parse(src: &str) -> Result<Value, CliError> {
    let mut p = Parser { src, pos: 0 };
    let v = p.value()?;
    if p.peek().is_some() {
        return Err(parse_error(p.pos, "trailing input"));
    }
    Ok(v)
}

/// Builds lattices from parsed expressions, refusing anything above `cap`
/// elements.
pub struct Evaluator {
    pub cap: usize,
}

impl Evaluator {
    fn check(&self, size: usize, pos: usize) -> Result<(), CliError> {
        if size > self.cap {
            return Err(CliError::Cap { requested: size, cap: self.cap, position: pos });
        }
        Ok(())
    }

    pub fn eval(&self, v: &Value) -> Result<Lattice, CliError> {
        let l = match v {
            Value::Int(n, pos) => {
                let n = usize::try_from(*n).map_err(|_| parse_error(*pos, "chain length must be positive"))?;
                self.check(n, *pos)?;
                chain(n)?
            }
            Value::Name(name, pos) => {
                if !fixture_names().any(|f| f == name) {
                    return Err(parse_error(*pos, format!("unknown fixture {name:?}")));
                }
                fixture(name)?
            }
            Value::Call { name, args, pos } => self.call(name, args, *pos)?,
            other => return Err(parse_error(other.pos(), "expected a lattice expression")),
        };
        self.check(l.len(), v.pos())?;
        Ok(l)
    }

    fn call(&self, name: &str, args: &[Arg], pos: usize) -> Result<Lattice, CliError> {
        let positional: Vec<&Value> = args.iter().filter(|a| a.key.is_none()).map(|a| &a.value).collect();
        let keyword = |k: &str| args.iter().find(|a| a.key.as_deref() == Some(k)).map(|a| &a.value);
        if let Some(a) = args.iter().find(|a| a.key.as_deref().is_some_and(|k| !(name == "double" && (k == "region" || k == "interval")))) {
            return Err(parse_error(a.value.pos(), format!("unexpected keyword {:?}", a.key.as_deref().unwrap())));
        }
        let arity = |n: usize| {
            if positional.len() == n {
                Ok(())
            } else {
                Err(parse_error(pos, format!("{name} takes {n} positional argument(s), got {}", positional.len())))
            }
        };
        match name {
            "chain" => {
                arity(1)?;
                let n = uint(positional[0])?;
                self.check(n, pos)?;
                Ok(chain(n)?)
            }
            "boolean" => {
                arity(1)?;
                let n = uint(positional[0])?;
                if n >= 32 || 1usize << n > self.cap {
                    return Err(CliError::Cap { requested: 1usize.checked_shl(n as u32).unwrap_or(usize::MAX), cap: self.cap, position: pos });
                }
                Ok(boolean(n)?)
            }
            "fd" => {
                arity(1)?;
                let n = uint(positional[0])?;
                const SIZES: [usize; 6] = [0, 1, 4, 18, 166, 7579];
                let size = SIZES.get(n).copied().unwrap_or(usize::MAX);
                self.check(size, pos)?;
                Ok(free_distributive(n)?.lattice)
            }
            "two_by_z" => {
                arity(2)?;
                let (lo, hi) = (int(positional[0])?, int(positional[1])?);
                let size = hi.checked_sub(lo).and_then(|d| d.checked_add(1)).and_then(|d| d.checked_mul(2)).unwrap_or(i64::MAX);
                self.check(usize::try_from(size).unwrap_or(usize::MAX), pos)?;
                Ok(two_by_z_window(lo, hi)?.lattice)
            }
            "product" => {
                arity(2)?;
                let a = self.eval(positional[0])?;
                let b = self.eval(positional[1])?;
                self.check(a.len().saturating_mul(b.len()), pos)?;
                Ok(product(&a, &b)?)
            }
            "linsum" => {
                if positional.is_empty() {
                    return Err(parse_error(pos, "linsum needs at least one block"));
                }
                let blocks = positional.iter().map(|v| self.eval(v)).collect::<Result<Vec<_>, _>>()?;
                self.check(blocks.iter().map(Lattice::len).sum(), pos)?;
                Ok(linear_sum(&blocks.iter().collect::<Vec<_>>())?)
            }
            "lexsum" => {
                if positional.is_empty() {
                    return Err(parse_error(pos, "lexsum needs an index"));
                }
                let index = self.index_poset(positional[0])?;
                let blocks = positional[1..].iter().map(|v| self.eval(v)).collect::<Result<Vec<_>, _>>()?;
                self.check(blocks.iter().map(Lattice::len).sum(), pos)?;
                Ok(lexicographic_sum(&index, &blocks.iter().collect::<Vec<_>>())?)
            }
            "double" => {
                arity(1)?;
                let base = self.eval(positional[0])?;
                let region_value = keyword("region").ok_or_else(|| parse_error(pos, "double needs region=[...]"))?;
                let region = names_to_set(&base, region_value)?;
                let interval = match keyword("interval") {
                    None => false,
                    Some(Value::Bool(b, _)) => *b,
                    Some(other) => return Err(parse_error(other.pos(), "interval takes true or false")),
                };
                self.check(base.len() + region.len(), pos)?;
                let spec = DoublingSpec::region(&base, region)?;
                if interval && spec.interval.is_none() {
                    return Err(parse_error(region_value.pos(), "region is not an interval"));
                }
                Ok(day_double(&spec)?.lattice)
            }
            "quotient" => {
                arity(2)?;
                let base = self.eval(positional[0])?;
                let Value::List(pairs, _) = positional[1] else {
                    return Err(parse_error(positional[1].pos(), "expected a list of pairs"));
                };
                let mut resolved = Vec::new();
                for pair in pairs {
                    match pair {
                        Value::List(xs, p) if xs.len() == 2 => resolved.push((element(&base, &xs[0])?, element(&base, &xs[1])?, *p)),
                        other => return Err(parse_error(other.pos(), "expected a pair [a, b]")),
                    }
                }
                let c = Congruence::generated(&base, &resolved.iter().map(|&(a, b, _)| (a, b)).collect::<Vec<_>>())?;
                Ok(quotient(&base, &c)?.lattice)
            }
            _ => Err(parse_error(pos, format!("unknown constructor {name:?}"))),
        }
    }

    /// Index posets for `lexsum`: `antichain(n)`, or any lattice expression
    /// read as a poset.
    fn index_poset(&self, v: &Value) -> Result<Poset, CliError> {
        if let Value::Call { name, args, pos } = v {
            if name == "antichain" {
                if args.len() != 1 || args[0].key.is_some() {
                    return Err(parse_error(*pos, "antichain takes 1 positional argument"));
                }
                let n = uint(&args[0].value)?;
                self.check(n, *pos)?;
                return Ok(Poset::antichain(n));
            }
        }
        let l = self.eval(v)?;
        let pairs: Vec<(usize, usize)> =
            l.elements().flat_map(|x| l.elements().filter(move |&y| x != y).map(move |y| (x, y))).filter(|&(x, y)| l.leq(x, y)).collect();
        Ok(Poset::from_pairs(l.names().to_vec(), &pairs)?)
    }
}

fn int(v: &Value) -> Result<i64, CliError> {
    match v {
        Value::Int(n, _) => Ok(*n),
        other => Err(parse_error(other.pos(), "expected an integer")),
    }
}

fn uint(v: &Value) -> Result<usize, CliError> {
    let n = int(v)?;
    usize::try_from(n).map_err(|_| parse_error(v.pos(), "expected a non-negative integer"))
}

fn element(l: &Lattice, v: &Value) -> Result<usize, CliError> {
    let (name, pos) = match v {
        Value::Name(s, p) => (s.clone(), *p),
        Value::Int(n, p) => (n.to_string(), *p),
        other => return Err(parse_error(other.pos(), "expected an element name")),
    };
    l.index_of(&name).ok_or_else(|| parse_error(pos, format!("no element named {name:?}")))
}

fn names_to_set(l: &Lattice, v: &Value) -> Result<ElementSet, CliError> {
    let Value::List(items, _) = v else {
        return Err(parse_error(v.pos(), "expected a list of element names"));
    };
    let mut set = ElementSet::new(l.len());
    for item in items {
        set.insert(element(l, item)?);
    }
    Ok(set)
}

/// Parses and evaluates in one step.
pub fn construct(src: &str, cap: usize) -> Result<Lattice, CliError> {
    Evaluator { cap }.eval(&parse(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use latkit::iso::isomorphic;

    #[test]
    fn examples() {
        assert_eq!(construct("linsum(1, boolean(3), product(chain(2), chain(4)))", 64).unwrap().len(), 17);
        assert_eq!(construct("fd(3)", 64).unwrap().len(), 18);
        let n5 = construct("double(boolean(2), region=[a1], interval=true)", 64).unwrap();
        assert!(isomorphic(&n5, &fixture("n5").unwrap()));
        assert_eq!(construct("two_by_z(-2, 2)", 64).unwrap().len(), 10);
        assert_eq!(construct("quotient(chain(4), [[1, 2]])", 64).unwrap().len(), 3);
        assert_eq!(construct("lexsum(chain(2), m3, n5)", 64).unwrap().len(), 10);
        assert!(isomorphic(&construct("m3", 64).unwrap(), &fixture("m3").unwrap()));
        let quoted = construct(r#"double(fd3, region=["a"])"#, 64).unwrap();
        assert_eq!(quoted.len(), 19);
    }

    #[test]
    fn positions() {
        let err = |src: &str| match construct(src, 64) {
            Err(CliError::Parse { position, .. }) => position,
            other => panic!("{other:?}"),
        };
        assert_eq!(err("chain(3"), 7);
        assert_eq!(err("product(chain(2), nope)"), 18);
        assert_eq!(err("chain(2) x"), 9);
        assert_eq!(err("double(chain(3), region=[7])"), 25);
        assert_eq!(err("frob(1)"), 0);
    }

    #[test]
    fn caps() {
        assert!(matches!(construct("chain(65)", 64), Err(CliError::Cap { requested: 65, .. })));
        assert!(matches!(construct("boolean(7)", 64), Err(CliError::Cap { requested: 128, .. })));
        assert!(matches!(construct("fd(4)", 64), Err(CliError::Cap { requested: 166, .. })));
        assert!(matches!(construct("product(chain(9), chain(8))", 64), Err(CliError::Cap { requested: 72, .. })));
        assert_eq!(construct("fd(4)", 200).unwrap().len(), 166);
    }
}
