//! Lattice terms, identities, and the semidistributive hierarchy.
//!
//! Term syntax: identifiers are variables, `^` is meet, `v` is join.
//! Chains of one operator need no parentheses (`a v b v c`); mixing
//! operators does (`x ^ (y v z)`). The bare word `v` is reserved.

mod explore;

pub use explore::{explore_relatively_free, variety_corpus, Exploration, Variety};

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Most variables [`check_identity`] will scan.
pub const MAX_IDENTITY_VARIABLES: usize = 4;

/// Default level bound for [`sd_level`].
pub const DEFAULT_SD_LEVEL_BOUND: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    Join,
    Meet,
}

impl Op {
    pub fn dual(self) -> Op {
        match self {
            Op::Join => Op::Meet,
            Op::Meet => Op::Join,
        }
    }

    pub fn apply(self, l: &Lattice, x: usize, y: usize) -> usize {
        match self {
            Op::Join => l.join(x, y),
            Op::Meet => l.meet(x, y),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Op::Join => "v",
            Op::Meet => "^",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Op(Op, Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Op(Op::Join, Box::new(a), Box::new(b))
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Op(Op::Meet, Box::new(a), Box::new(b))
    }

    pub fn parse(text: &str) -> Result<Term> {
        Parser::new(text).parse_all()
    }

    /// Variable names in sorted order.
    pub fn variables(&self) -> Vec<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out.into_iter().collect()
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Op(_, a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Op(_, a, b) => 1 + a.node_count() + b.node_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Op(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Swaps join and meet throughout.
    pub fn dual(&self) -> Term {
        match self {
            Term::Var(v) => Term::Var(v.clone()),
            Term::Op(op, a, b) => Term::Op(op.dual(), Box::new(a.dual()), Box::new(b.dual())),
        }
    }

    /// Evaluates with `assignment[i]` bound to `variables[i]`.
    pub fn evaluate(&self, l: &Lattice, variables: &[String], assignment: &[usize]) -> Result<usize> {
        let compiled = Compiled::new(self, variables)?;
        if let Some(&bad) = assignment.iter().find(|&&x| x >= l.len()) {
            return Err(Error::IndexOutOfRange { index: bad, size: l.len() });
        }
        if assignment.len() < variables.len() {
            return Err(Error::UnboundVariable(variables[assignment.len()].clone()));
        }
        Ok(compiled.eval(l, assignment, &mut Vec::new()))
    }
}

/// `evaluate(t, L, assignment)` with the assignment given as name/element pairs.
pub fn evaluate(t: &Term, l: &Lattice, assignment: &[(&str, usize)]) -> Result<usize> {
    let names: Vec<String> = assignment.iter().map(|(n, _)| n.to_string()).collect();
    let values: Vec<usize> = assignment.iter().map(|&(_, v)| v).collect();
    t.evaluate(l, &names, &values)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Op(op, a, b) => {
                // Left operands of the same operator chain without brackets;
                // everything else compound is bracketed.
                match a.as_ref() {
                    Term::Op(inner, ..) if inner != op => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                write!(f, " {} ", op.symbol())?;
                match b.as_ref() {
                    Term::Var(_) => write!(f, "{b}"),
                    _ => write!(f, "({b})"),
                }
            }
        }
    }
}

/// Postfix code over variable slots.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    code: Vec<Step>,
}

#[derive(Debug, Clone, Copy)]
enum Step {
    Load(usize),
    Apply(Op),
}

impl Compiled {
    pub(crate) fn new(t: &Term, variables: &[String]) -> Result<Compiled> {
        let mut code = Vec::with_capacity(t.node_count());
        Self::emit(t, variables, &mut code)?;
        Ok(Compiled { code })
    }

    fn emit(t: &Term, variables: &[String], code: &mut Vec<Step>) -> Result<()> {
        match t {
            Term::Var(v) => {
                let slot = variables
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                code.push(Step::Load(slot));
            }
            Term::Op(op, a, b) => {
                Self::emit(a, variables, code)?;
                Self::emit(b, variables, code)?;
                code.push(Step::Apply(*op));
            }
        }
        Ok(())
    }

    pub(crate) fn eval(&self, l: &Lattice, values: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for step in &self.code {
            match *step {
                Step::Load(i) => stack.push(values[i]),
                Step::Apply(op) => {
                    let b = stack.pop().expect("well-formed code");
                    let a = stack.pop().expect("well-formed code");
                    stack.push(op.apply(l, a, b));
                }
            }
        }
        stack.pop().expect("well-formed code")
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

#[derive(Debug, PartialEq)]
enum Token {
    Ident(String),
    Op(Op),
    Open,
    Close,
    End,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn error(&self, at: usize, message: &str) -> Error {
        Error::InvalidArgument(format!("term syntax error at position {at}: {message}"))
    }

    fn skip_space(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Result<(usize, Token)> {
        self.skip_space();
        let start = self.pos;
        let rest = &self.text[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((start, Token::End));
        };
        let token = match c {
            '(' => Token::Open,
            ')' => Token::Close,
            '^' => Token::Op(Op::Meet),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = rest.find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_')).unwrap_or(rest.len());
                let word = &rest[..len];
                if word == "v" {
                    Token::Op(Op::Join)
                } else {
                    Token::Ident(word.to_string())
                }
            }
            other => return Err(self.error(start, &format!("unexpected character {other:?}"))),
        };
        Ok((start, token))
    }

    fn advance(&mut self, token: &Token) {
        self.pos += match token {
            Token::Ident(w) => w.len(),
            Token::End => 0,
            _ => 1,
        };
    }

    fn parse_all(mut self) -> Result<Term> {
        let t = self.parse_expr()?;
        match self.peek()? {
            (_, Token::End) => Ok(t),
            (at, _) => Err(self.error(at, "unexpected trailing input")),
        }
    }

    fn parse_expr(&mut self) -> Result<Term> {
        let mut left = self.parse_atom()?;
        let mut chain_op: Option<Op> = None;
        loop {
            let (at, token) = self.peek()?;
            let Token::Op(op) = token else {
                return Ok(left);
            };
            if chain_op.is_some_and(|c| c != op) {
                return Err(self.error(at, "mixed operators need parentheses"));
            }
            chain_op = Some(op);
            self.advance(&Token::Op(op));
            let right = self.parse_atom()?;
            left = Term::Op(op, Box::new(left), Box::new(right));
        }
    }

    fn parse_atom(&mut self) -> Result<Term> {
        let (at, token) = self.peek()?;
        match token {
            Token::Ident(name) => {
                self.advance(&Token::Ident(name.clone()));
                Ok(Term::Var(name))
            }
            Token::Open => {
                self.advance(&Token::Open);
                let t = self.parse_expr()?;
                match self.peek()? {
                    (_, Token::Close) => {
                        self.advance(&Token::Close);
                        Ok(t)
                    }
                    (at, _) => Err(self.error(at, "expected ')'")),
                }
            }
            Token::Op(Op::Join) => Err(self.error(at, "'v' is the join operator, not a variable")),
            _ => Err(self.error(at, "expected a variable or '('")),
        }
    }
}

/// An equation between two terms over declared variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySpec {
    pub left: Term,
    pub right: Term,
    pub variables: Vec<String>,
}

impl IdentitySpec {
    pub fn new(left: Term, right: Term, variables: Vec<String>) -> Result<IdentitySpec> {
        for v in left.variables().into_iter().chain(right.variables()) {
            if !variables.contains(&v) {
                return Err(Error::UnboundVariable(v));
            }
        }
        Ok(IdentitySpec { left, right, variables })
    }

    /// Parses `lhs = rhs`; the variables are those occurring, sorted.
    pub fn parse(text: &str) -> Result<IdentitySpec> {
        let (lhs, rhs) = text
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument("an identity needs exactly one '='".into()))?;
        if rhs.contains('=') {
            return Err(Error::InvalidArgument("an identity needs exactly one '='".into()));
        }
        let left = Term::parse(lhs)?;
        let right = Term::parse(rhs)?;
        let variables: BTreeSet<String> = left.variables().into_iter().chain(right.variables()).collect();
        Ok(IdentitySpec { left, right, variables: variables.into_iter().collect() })
    }

    pub fn dual(&self) -> IdentitySpec {
        IdentitySpec { left: self.left.dual(), right: self.right.dual(), variables: self.variables.clone() }
    }
}

impl fmt::Display for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.left, self.right)
    }
}

/// Result of an exhaustive identity scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub holds: bool,
    /// Lexicographically least failing assignment, in variable order.
    pub witness: Option<Vec<usize>>,
}

pub fn check_identity(l: &Lattice, spec: &IdentitySpec) -> Result<IdentityCheck> {
    let k = spec.variables.len();
    if k > MAX_IDENTITY_VARIABLES {
        return Err(Error::TooManyVariables { count: k, max: MAX_IDENTITY_VARIABLES });
    }
    let left = Compiled::new(&spec.left, &spec.variables)?;
    let right = Compiled::new(&spec.right, &spec.variables)?;
    let witness = first_failure(l, k, |values, stack| left.eval(l, values, stack) != right.eval(l, values, stack));
    Ok(IdentityCheck { holds: witness.is_none(), witness })
}

/// Odometer over `L^k`, first variable most significant.
fn first_failure(l: &Lattice, k: usize, mut fails: impl FnMut(&[usize], &mut Vec<usize>) -> bool) -> Option<Vec<usize>> {
    let n = l.len();
    let mut values = vec![0usize; k];
    let mut stack = Vec::new();
    loop {
        if fails(&values, &mut stack) {
            return Some(values);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            values[i] += 1;
            if values[i] < n {
                break;
            }
            values[i] = 0;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    Meet,
    Join,
}

/// The pair `(y_n, z_n)` of the recursion `y_0 = y`, `z_0 = z`,
/// `y_{k+1} = y v (x ^ z_k)`, `z_{k+1} = z v (x ^ y_k)`.
pub fn sd_terms(n: usize) -> (Term, Term) {
    let (x, y, z) = (Term::var("x"), Term::var("y"), Term::var("z"));
    let (mut yk, mut zk) = (y.clone(), z.clone());
    for _ in 0..n {
        let next_y = Term::join(y.clone(), Term::meet(x.clone(), zk));
        let next_z = Term::join(z.clone(), Term::meet(x.clone(), yk));
        yk = next_y;
        zk = next_z;
    }
    (yk, zk)
}

/// `SD_n^meet: x ^ (y v z) = x ^ y_n`, or its dual for `Polarity::Join`.
pub fn sd_identity(n: usize, polarity: Polarity) -> IdentitySpec {
    let (x, y, z) = (Term::var("x"), Term::var("y"), Term::var("z"));
    let spec = IdentitySpec {
        left: Term::meet(x.clone(), Term::join(y, z)),
        right: Term::meet(x, sd_terms(n).0),
        variables: vec!["x".into(), "y".into(), "z".into()],
    };
    match polarity {
        Polarity::Meet => spec,
        Polarity::Join => spec.dual(),
    }
}

/// Whether `SD_n` of the given polarity holds, computing `y_n` directly
/// from the tables instead of through term evaluation.
pub fn sd_holds(l: &Lattice, n: usize, polarity: Polarity) -> bool {
    let (inner, outer) = match polarity {
        Polarity::Meet => (Op::Meet, Op::Join),
        Polarity::Join => (Op::Join, Op::Meet),
    };
    for x in l.elements() {
        for y in l.elements() {
            for z in l.elements() {
                let (mut yk, mut zk) = (y, z);
                for _ in 0..n {
                    let next_y = outer.apply(l, y, inner.apply(l, x, zk));
                    zk = outer.apply(l, z, inner.apply(l, x, yk));
                    yk = next_y;
                }
                if inner.apply(l, x, outer.apply(l, y, z)) != inner.apply(l, x, yk) {
                    return false;
                }
            }
        }
    }
    true
}

/// Least `n <= max_n` at which both polarities of `SD_n` hold.
pub fn sd_level(l: &Lattice, max_n: usize) -> Option<usize> {
    (0..=max_n).find(|&n| sd_holds(l, n, Polarity::Meet) && sd_holds(l, n, Polarity::Join))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{boolean, chain, product};
    use crate::fd::free_distributive;
    use crate::fixtures::fixture;

    #[test]
    fn parse_and_display() {
        let t = Term::parse("x^(y v z)").unwrap();
        assert_eq!(t, Term::meet(Term::var("x"), Term::join(Term::var("y"), Term::var("z"))));
        assert_eq!(t.to_string(), "x ^ (y v z)");
        let chain = Term::parse("a v b v c").unwrap();
        assert_eq!(chain.to_string(), "a v b v c");
        assert_eq!(Term::parse(&chain.to_string()).unwrap(), chain);
        let right = Term::parse("a v (b v c)").unwrap();
        assert_eq!(Term::parse(&right.to_string()).unwrap(), right);
        assert!(Term::parse("a ^ b v c").is_err());
        assert!(Term::parse("v ^ a").is_err());
        assert!(Term::parse("(a ^ b").is_err());
        assert!(Term::parse("a b").is_err());
        assert!(Term::parse("vx v x_1").is_ok());
    }

    #[test]
    fn evaluation() {
        let m3 = fixture("m3").unwrap();
        let x = Term::var("x");
        assert_eq!(evaluate(&x, &m3, &[("x", 3)]).unwrap(), 3);
        let t = Term::parse("x ^ (y v z)").unwrap();
        let [a, b, c] = ["a", "b", "c"].map(|n| m3.element(n).unwrap());
        assert_eq!(evaluate(&t, &m3, &[("x", a), ("y", b), ("z", c)]).unwrap(), a);
        assert_eq!(evaluate(&t, &m3, &[("x", a)]), Err(Error::UnboundVariable("y".into())));
    }

    #[test]
    fn median_term_in_fd3() {
        let fd = free_distributive(3).unwrap();
        let env: Vec<(&str, usize)> = ["a", "b", "c"].into_iter().zip(fd.generators.iter().copied()).collect();
        let joins = Term::parse("(a^b) v (b^c) v (c^a)").unwrap();
        let meets = Term::parse("(a v b) ^ (b v c) ^ (c v a)").unwrap();
        let z = evaluate(&joins, &fd.lattice, &env).unwrap();
        assert_eq!(z, evaluate(&meets, &fd.lattice, &env).unwrap());
        assert_eq!(fd.lattice.name(z), "a^b v a^c v b^c");
    }

    #[test]
    fn identities() {
        let distributive = IdentitySpec::parse("x ^ (y v z) = (x ^ y) v (x ^ z)").unwrap();
        assert!(check_identity(&free_distributive(3).unwrap().lattice, &distributive).unwrap().holds);
        let n5 = fixture("n5").unwrap();
        let modular = IdentitySpec::parse("(x ^ z) v (y ^ z) = ((x ^ z) v y) ^ z").unwrap();
        let check = check_identity(&n5, &modular).unwrap();
        assert!(!check.holds);
        let w = check.witness.unwrap();
        let t = |term: &Term| term.evaluate(&n5, &modular.variables, &w).unwrap();
        assert_ne!(t(&modular.left), t(&modular.right));
        let five = IdentitySpec::parse("a v b v c v d v e = a").unwrap();
        assert!(matches!(check_identity(&n5, &five), Err(Error::TooManyVariables { count: 5, max: 4 })));
    }

    #[test]
    fn witness_is_least() {
        let n5 = fixture("n5").unwrap();
        let spec = IdentitySpec::parse("x ^ (y v z) = (x ^ y) v (x ^ z)").unwrap();
        let w = check_identity(&n5, &spec).unwrap().witness.unwrap();
        let mut least = None;
        'scan: for x in 0..5 {
            for y in 0..5 {
                for z in 0..5 {
                    if n5.meet(x, n5.join(y, z)) != n5.join(n5.meet(x, y), n5.meet(x, z)) {
                        least = Some(vec![x, y, z]);
                        break 'scan;
                    }
                }
            }
        }
        assert_eq!(Some(w), least);
    }

    #[test]
    fn sd_structure() {
        assert_eq!(sd_identity(0, Polarity::Meet).right.to_string(), "x ^ y");
        assert_eq!(sd_identity(2, Polarity::Meet).right, Term::parse("x ^ (y v (x ^ (z v (x ^ y))))").unwrap());
        assert_eq!(sd_identity(1, Polarity::Join).to_string(), "x v (y ^ z) = x v (y ^ (x v z))");
        for n in 0..6 {
            assert_eq!(sd_terms(n).0.node_count(), 1 + 4 * n);
        }
    }

    #[test]
    fn sd_holds_matches_identity_scan() {
        let samples = [fixture("m3").unwrap(), fixture("n5").unwrap(), boolean(2).unwrap(), fixture("gadget_case3").unwrap()];
        for l in &samples {
            for n in 0..4 {
                for p in [Polarity::Meet, Polarity::Join] {
                    assert_eq!(sd_holds(l, n, p), check_identity(l, &sd_identity(n, p)).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn sd_levels() {
        assert_eq!(sd_level(&chain(1).unwrap(), 6), Some(0));
        assert_eq!(sd_level(&product(&chain(2).unwrap(), &chain(3).unwrap()).unwrap(), 6), Some(1));
        assert_eq!(sd_level(&fixture("m3").unwrap(), 6), None);
        assert_eq!(sd_level(&fixture("n5").unwrap(), 6), Some(2));
    }
}
