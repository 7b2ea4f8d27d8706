//! Recursive-descent parser for formulas and conditionals.
//!
//! ```text
//! conditional := formula '>' formula | formula
//! formula     := or ('->' formula)?
//! or          := and ('|' and)*
//! and         := unary ('&' unary)*
//! unary       := '!' unary | atom
//! atom        := 'true' | 'false' | identifier | '(' formula ')'
//! ```

use super::{is_identifier, Alphabet, Conditional, Formula, ModelSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Gt,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'>' => Tok::Gt,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push(Token {
                    tok: Tok::Implies,
                    pos: i,
                });
                i += 2;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push(Token { tok, pos: start });
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::syntax(i, format!("unexpected character `{ch}`")));
            }
        };
        out.push(Token { tok, pos: i });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [Token], end: usize) -> Self {
        Parser { tokens, at: 0, end }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Implies) {
            self.at += 1;
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.at += 1;
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.at += 1;
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.peek() == Some(&Tok::Not) {
            self.at += 1;
            return Ok(Formula::not(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        let pos = self.pos();
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::syntax(pos, "unexpected end of input"))?;
        self.at += 1;
        match tok {
            Tok::True => Ok(Formula::True),
            Tok::False => Ok(Formula::False),
            Tok::Ident(name) => Ok(Formula::Var(name)),
            Tok::LParen => {
                let inner = self.formula()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::syntax(self.pos(), "expected `)`"));
                }
                self.at += 1;
                Ok(inner)
            }
            other => Err(Error::syntax(pos, format!("unexpected {}", describe(&other)))),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.tokens.get(self.at) {
            None => Ok(()),
            Some(t) => Err(Error::syntax(t.pos, format!("unexpected {}", describe(&t.tok)))),
        }
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::True => "`true`".into(),
        Tok::False => "`false`".into(),
        Tok::Not => "`!`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Implies => "`->`".into(),
        Tok::Gt => "`>`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

fn parse_tokens(tokens: &[Token], end: usize, alphabet: &Alphabet) -> Result<Formula> {
    let mut p = Parser::new(tokens, end);
    let f = p.formula()?;
    p.finish()?;
    check_vars(&f, alphabet)?;
    Ok(f)
}

fn check_vars(f: &Formula, alphabet: &Alphabet) -> Result<()> {
    match f {
        Formula::True | Formula::False => Ok(()),
        Formula::Var(v) => alphabet
            .index_of(v)
            .map(|_| ())
            .ok_or_else(|| Error::UnknownVariable(v.clone())),
        Formula::Not(a) => check_vars(a, alphabet),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            check_vars(a, alphabet)?;
            check_vars(b, alphabet)
        }
    }
}

pub fn parse_formula(text: &str, alphabet: &Alphabet) -> Result<Formula> {
    let tokens = lex(text)?;
    parse_tokens(&tokens, text.len(), alphabet)
}

/// Parses `P > A`; a bare formula `A` reads as `true > A`.
pub fn parse_conditional(text: &str, alphabet: &Alphabet) -> Result<Conditional> {
    let tokens = lex(text)?;
    let mut depth = 0i32;
    let mut split = None;
    for (i, t) in tokens.iter().enumerate() {
        match t.tok {
            Tok::LParen => depth += 1,
            Tok::RParen => depth -= 1,
            Tok::Gt if depth == 0 => {
                if split.is_some() {
                    return Err(Error::syntax(t.pos, "a conditional has a single top-level `>`"));
                }
                split = Some(i);
            }
            Tok::Gt => return Err(Error::syntax(t.pos, "`>` cannot be nested")),
            _ => {}
        }
    }
    match split {
        None => Ok(Conditional::unconditional(parse_tokens(&tokens, text.len(), alphabet)?)),
        Some(i) => {
            let gt = tokens[i].pos;
            let premise = parse_tokens(&tokens[..i], gt, alphabet)?;
            let conclusion = parse_tokens(&tokens[i + 1..], text.len(), alphabet)?;
            Ok(Conditional::new(premise, conclusion))
        }
    }
}

/// Parses a conjunction of signed literals such as `x -y` (or `x !y`) into
/// the set of models it denotes.
pub fn parse_term(text: &str, alphabet: &Alphabet) -> Result<ModelSet> {
    let mut set = alphabet.universe();
    let mut seen = false;
    let mut offset = 0;
    for word in text.split_whitespace() {
        let pos = text[offset..].find(word).map_or(offset, |p| p + offset);
        offset = pos + word.len();
        let (negated, name) = match word.strip_prefix('-').or_else(|| word.strip_prefix('!')) {
            Some(rest) => (true, rest),
            None => (false, word),
        };
        if !is_identifier(name) {
            return Err(Error::syntax(pos, format!("`{word}` is not a literal")));
        }
        let var = alphabet
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let models = alphabet.var_models(var);
        set = if negated { set - models } else { set & models };
        seen = true;
    }
    if !seen {
        return Err(Error::syntax(0, "empty literal list"));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab(vars: &[&str]) -> Alphabet {
        Alphabet::new(vars.iter().copied()).unwrap()
    }

    #[test]
    fn formula_examples() {
        let a = ab(&["x", "y"]);
        assert_eq!(parse_formula("true", &a).unwrap(), Formula::True);
        assert_eq!(
            parse_formula("x & !y", &a).unwrap(),
            Formula::and(Formula::var("x"), Formula::not(Formula::var("y")))
        );
        let b = ab(&["rain", "wet"]);
        assert_eq!(
            parse_formula("rain -> wet", &b).unwrap(),
            Formula::implies(Formula::var("rain"), Formula::var("wet"))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let a = ab(&["x", "y", "z"]);
        assert_eq!(
            parse_formula("x | y & z", &a).unwrap(),
            Formula::or(Formula::var("x"), Formula::and(Formula::var("y"), Formula::var("z")))
        );
        assert_eq!(
            parse_formula("x -> y -> z", &a).unwrap(),
            Formula::implies(Formula::var("x"), Formula::implies(Formula::var("y"), Formula::var("z")))
        );
        assert_eq!(
            parse_formula("x | y -> z", &a).unwrap(),
            Formula::implies(Formula::or(Formula::var("x"), Formula::var("y")), Formula::var("z"))
        );
        assert_eq!(
            parse_formula("!!x", &a).unwrap(),
            Formula::not(Formula::not(Formula::var("x")))
        );
    }

    #[test]
    fn conditional_examples() {
        let a = ab(&["x", "y"]);
        let c = parse_conditional("x > y", &a).unwrap();
        assert_eq!(c, Conditional::new(Formula::var("x"), Formula::var("y")));
        let c = parse_conditional("y", &a).unwrap();
        assert_eq!(c, Conditional::new(Formula::True, Formula::var("y")));
        let c = parse_conditional("true > !x", &a).unwrap();
        assert_eq!(c, Conditional::new(Formula::True, Formula::not(Formula::var("x"))));
        let c = parse_conditional("x -> y > (y)", &a).unwrap();
        assert_eq!(
            c,
            Conditional::new(Formula::implies(Formula::var("x"), Formula::var("y")), Formula::var("y"))
        );
    }

    #[test]
    fn errors_carry_position_or_name() {
        let a = ab(&["x", "y"]);
        assert_eq!(parse_formula("x & z", &a), Err(Error::UnknownVariable("z".into())));
        match parse_formula("x & ", &a) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_formula("x ) y", &a) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        match parse_formula("x # y", &a) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("(x", &a), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("x > y", &a), Err(Error::Syntax { .. })));
        assert!(matches!(parse_conditional("x > y > x", &a), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_conditional("(x > y)", &a), Err(Error::Syntax { .. })));
        assert!(matches!(parse_conditional("> y", &a), Err(Error::Syntax { .. })));
    }

    #[test]
    fn terms() {
        let a = ab(&["x", "y"]);
        assert_eq!(parse_term("x -y", &a).unwrap().low_bits(), 0b0010);
        assert_eq!(parse_term("-x", &a).unwrap().low_bits(), 0b0101);
        assert_eq!(parse_term("!x y", &a).unwrap().low_bits(), 0b0100);
        assert!(parse_term("", &a).is_err());
        assert_eq!(parse_term("x q", &a), Err(Error::UnknownVariable("q".into())));
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::True),
            Just(Formula::False),
            prop::sample::select(vec!["a", "b", "c", "d"]).prop_map(Formula::var),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn negation_complements(f in arb_formula()) {
            let a = ab(&["a", "b", "c", "d"]);
            let m = f.models(&a).unwrap();
            prop_assert_eq!(Formula::not(f).models(&a).unwrap(), a.universe() - m);
        }

        #[test]
        fn connectives_are_set_operations(f in arb_formula(), g in arb_formula()) {
            let a = ab(&["a", "b", "c", "d"]);
            let (mf, mg) = (f.models(&a).unwrap(), g.models(&a).unwrap());
            prop_assert_eq!(Formula::and(f.clone(), g.clone()).models(&a).unwrap(), mf & mg);
            prop_assert_eq!(Formula::or(f.clone(), g.clone()).models(&a).unwrap(), mf | mg);
            for m in a.models() {
                prop_assert_eq!(f.eval(&a, m).unwrap(), mf.contains(m));
            }
        }

        #[test]
        fn print_parse_preserves_models(f in arb_formula()) {
            let a = ab(&["a", "b", "c", "d"]);
            let reparsed = parse_formula(&f.to_string(), &a).unwrap();
            prop_assert_eq!(reparsed.models(&a).unwrap(), f.models(&a).unwrap());
        }
    }
}
