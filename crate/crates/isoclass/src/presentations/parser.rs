//! Text grammar for finite group presentations.
//!
//! ```text
//! presentation := '<' ident (',' ident)* '|' relations? '>'
//! relations    := relation (',' relation)*
//! relation     := word ('=' word)*          chains expand pairwise
//! word         := factor+                   juxtaposition multiplies
//! factor       := atom ('^' exponent)*      left-associative
//! exponent     := integer | atom            an atom exponent conjugates
//! atom         := ident | '1' | '(' word ')' | '[' word ',' word ']'
//! ident        := letter digit*
//! ```
//!
//! `⟨`/`⟩` are accepted as synonyms for `<`/`>`, whitespace is
//! insignificant, and integer exponents may be negative. `[x, y]` expands to
//! `x⁻¹y⁻¹xy` and `u^v` to `v⁻¹uv`.

use super::{
    word_commutator, word_concat, word_conjugate, word_pow, Presentation, PresentationError, Word,
};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    LAngle,
    RAngle,
    Pipe,
    Comma,
    Caret,
    Equals,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Ident(String),
    Int(i64),
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::LAngle => "'<'".into(),
            Token::RAngle => "'>'".into(),
            Token::Pipe => "'|'".into(),
            Token::Comma => "','".into(),
            Token::Caret => "'^'".into(),
            Token::Equals => "'='".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::LBrack => "'['".into(),
            Token::RBrack => "']'".into(),
            Token::Ident(name) => format!("identifier `{name}`"),
            Token::Int(value) => format!("integer {value}"),
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> PresentationError {
    PresentationError::Syntax { position, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, PresentationError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, ch)) = it.peek() {
        match ch {
            c if c.is_whitespace() => {
                it.next();
            }
            '<' | '⟨' => {
                it.next();
                out.push((Token::LAngle, pos));
            }
            '>' | '⟩' => {
                it.next();
                out.push((Token::RAngle, pos));
            }
            '|' => {
                it.next();
                out.push((Token::Pipe, pos));
            }
            ',' => {
                it.next();
                out.push((Token::Comma, pos));
            }
            '^' => {
                it.next();
                out.push((Token::Caret, pos));
            }
            '=' => {
                it.next();
                out.push((Token::Equals, pos));
            }
            '(' => {
                it.next();
                out.push((Token::LParen, pos));
            }
            ')' => {
                it.next();
                out.push((Token::RParen, pos));
            }
            '[' => {
                it.next();
                out.push((Token::LBrack, pos));
            }
            ']' => {
                it.next();
                out.push((Token::RBrack, pos));
            }
            '-' => {
                it.next();
                let mut digits = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                if digits.is_empty() {
                    return Err(syntax(pos, "expected digits after '-'"));
                }
                let value: i64 = format!("-{digits}")
                    .parse()
                    .map_err(|_| syntax(pos, "integer literal out of range"))?;
                out.push((Token::Int(value), pos));
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                let value: i64 =
                    digits.parse().map_err(|_| syntax(pos, "integer literal out of range"))?;
                out.push((Token::Int(value), pos));
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                name.push(c);
                it.next();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_digit() {
                        name.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push((Token::Ident(name), pos));
            }
            other => {
                return Err(syntax(pos, format!("unexpected character {other:?}")));
            }
        }
    }
    Ok(out)
}

struct TokenStream {
    tokens: Vec<(Token, usize)>,
    index: usize,
    end: usize,
}

impl TokenStream {
    fn peek(&self) -> Option<&(Token, usize)> {
        self.tokens.get(self.index)
    }

    fn position(&self) -> usize {
        self.peek().map_or(self.end, |&(_, pos)| pos)
    }

    fn bump(&mut self) -> Option<(Token, usize)> {
        let t = self.tokens.get(self.index).cloned();
        if t.is_some() {
            self.index += 1;
        }
        t
    }

    fn expect(&mut self, wanted: &Token, context: &str) -> Result<usize, PresentationError> {
        match self.bump() {
            Some((t, pos)) if t == *wanted => Ok(pos),
            Some((t, pos)) => Err(syntax(
                pos,
                format!("expected {} {context}, found {}", wanted.describe(), t.describe()),
            )),
            None => Err(syntax(
                self.end,
                format!("expected {} {context}, found end of input", wanted.describe()),
            )),
        }
    }
}

/// Parses presentation text into a [`Presentation`].
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut stream = TokenStream { tokens: lex(text)?, index: 0, end: text.len() };
    stream.expect(&Token::LAngle, "to open the presentation")?;

    let mut names = Vec::new();
    loop {
        match stream.bump() {
            Some((Token::Ident(name), _)) => names.push(name),
            Some((t, pos)) => {
                return Err(syntax(pos, format!("expected a generator, found {}", t.describe())))
            }
            None => return Err(syntax(stream.end, "expected a generator, found end of input")),
        }
        match stream.bump() {
            Some((Token::Comma, _)) => continue,
            Some((Token::Pipe, _)) => break,
            Some((t, pos)) => {
                return Err(syntax(
                    pos,
                    format!("expected ',' or '|' after a generator, found {}", t.describe()),
                ))
            }
            None => return Err(syntax(stream.end, "expected ',' or '|', found end of input")),
        }
    }
    let mut presentation = Presentation::new(names)?;

    if let Some((Token::RAngle, _)) = stream.peek() {
        stream.bump();
    } else {
        loop {
            let mut chain = vec![parse_word(&mut stream, &presentation)?];
            while let Some((Token::Equals, _)) = stream.peek() {
                stream.bump();
                chain.push(parse_word(&mut stream, &presentation)?);
            }
            if chain.len() == 1 {
                presentation.push_relator(chain.remove(0))?;
            } else {
                for pair in chain.windows(2) {
                    presentation
                        .push_relator(word_concat(&pair[0], &super::word_inverse(&pair[1])))?;
                }
            }
            match stream.bump() {
                Some((Token::Comma, _)) => continue,
                Some((Token::RAngle, _)) => break,
                Some((t, pos)) => {
                    return Err(syntax(
                        pos,
                        format!("expected ',' or '>' after a relation, found {}", t.describe()),
                    ))
                }
                None => {
                    return Err(syntax(stream.end, "expected ',' or '>', found end of input"))
                }
            }
        }
    }

    if let Some((t, pos)) = stream.peek() {
        return Err(syntax(*pos, format!("unexpected {} after '>'", t.describe())));
    }
    Ok(presentation)
}

fn starts_atom(token: &Token) -> bool {
    matches!(token, Token::Ident(_) | Token::LParen | Token::LBrack | Token::Int(1))
}

fn parse_word(
    stream: &mut TokenStream,
    presentation: &Presentation,
) -> Result<Word, PresentationError> {
    let mut word = Word::new();
    let mut any = false;
    while let Some((token, _)) = stream.peek() {
        if !starts_atom(token) {
            break;
        }
        let factor = parse_factor(stream, presentation)?;
        word = word_concat(&word, &factor);
        any = true;
    }
    if !any {
        return Err(syntax(stream.position(), "expected a word"));
    }
    Ok(word)
}

fn parse_factor(
    stream: &mut TokenStream,
    presentation: &Presentation,
) -> Result<Word, PresentationError> {
    let mut base = parse_atom(stream, presentation)?;
    while let Some((Token::Caret, _)) = stream.peek() {
        stream.bump();
        match stream.peek() {
            Some(&(Token::Int(value), _)) => {
                stream.bump();
                base = word_pow(&base, value);
            }
            Some((token, _)) if starts_atom(token) => {
                let by = parse_atom(stream, presentation)?;
                base = word_conjugate(&base, &by);
            }
            _ => {
                return Err(syntax(
                    stream.position(),
                    "expected an integer or conjugating word after '^'",
                ))
            }
        }
    }
    Ok(base)
}

fn parse_atom(
    stream: &mut TokenStream,
    presentation: &Presentation,
) -> Result<Word, PresentationError> {
    match stream.bump() {
        Some((Token::Ident(name), pos)) => match presentation.generator_index(&name) {
            Some(index) => Ok(vec![(index, 1)]),
            None => Err(PresentationError::UnknownSymbol { name, position: pos }),
        },
        Some((Token::Int(1), _)) => Ok(Word::new()),
        Some((Token::LParen, _)) => {
            let inner = parse_word(stream, presentation)?;
            stream.expect(&Token::RParen, "to close '('")?;
            Ok(inner)
        }
        Some((Token::LBrack, _)) => {
            let left = parse_word(stream, presentation)?;
            stream.expect(&Token::Comma, "between commutator entries")?;
            let right = parse_word(stream, presentation)?;
            stream.expect(&Token::RBrack, "to close '['")?;
            Ok(word_commutator(&left, &right))
        }
        Some((t, pos)) => {
            Err(syntax(pos, format!("expected a generator, '1', '(' or '[', found {}", t.describe())))
        }
        None => Err(syntax(stream.end, "expected a word, found end of input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(text: &str) -> Vec<Word> {
        parse_presentation(text).unwrap().relators
    }

    #[test]
    fn single_generator_power() {
        let p = parse_presentation("⟨ g | g^4 ⟩").unwrap();
        assert_eq!(p.generators, vec!["g"]);
        assert_eq!(p.relators, vec![vec![(0, 4)]]);
    }

    #[test]
    fn dangling_caret_is_a_syntax_error() {
        let err = parse_presentation("⟨ g | g^ ⟩").unwrap_err();
        assert!(matches!(err, PresentationError::Syntax { .. }), "{err}");
    }

    #[test]
    fn juxtaposition_multiplies() {
        assert_eq!(rel("< a, b | ab >"), vec![vec![(0, 1), (1, 1)]]);
        assert_eq!(rel("< a, b | a b >"), vec![vec![(0, 1), (1, 1)]]);
    }

    #[test]
    fn identifiers_are_letter_then_digits() {
        let p = parse_presentation("< g1, g2 | g1 g2^-1 >").unwrap();
        assert_eq!(p.generators, vec!["g1", "g2"]);
        assert_eq!(p.relators, vec![vec![(0, 1), (1, -1)]]);
    }

    #[test]
    fn commutators_and_conjugations_expand() {
        assert_eq!(rel("< x, y | [x, y] >"), vec![vec![(0, -1), (1, -1), (0, 1), (1, 1)]]);
        assert_eq!(rel("< x, y | x^y >"), vec![vec![(1, -1), (0, 1), (1, 1)]]);
        // ^ binds tighter than juxtaposition: b a^-1 is b · a⁻¹
        assert_eq!(rel("< a, b | b a^-1 >"), vec![vec![(1, 1), (0, -1)]]);
        // parenthesised conjugation of a square
        assert_eq!(
            rel("< a, b | (b^2)^a >"),
            vec![vec![(0, -1), (1, 2), (0, 1)]]
        );
    }

    #[test]
    fn equality_chains_expand_pairwise() {
        let relators = rel("< a, b | a^2 = b^2 = 1 >");
        assert_eq!(relators, vec![vec![(0, 2), (1, -2)], vec![(1, 2)]]);
    }

    #[test]
    fn words_reduce_freely() {
        assert_eq!(rel("< a | a a^-1 a^3 >"), vec![vec![(0, 3)]]);
        assert_eq!(rel("< a, b | a b b^-1 a >"), vec![vec![(0, 2)]]);
    }

    #[test]
    fn unknown_generator_is_reported_with_position() {
        let err = parse_presentation("< a | a c >").unwrap_err();
        match err {
            PresentationError::UnknownSymbol { name, position } => {
                assert_eq!(name, "c");
                assert_eq!(position, 8);
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn duplicate_generators_are_rejected() {
        assert!(matches!(
            parse_presentation("< a, a | a^2 >"),
            Err(PresentationError::DuplicateGenerator(_))
        ));
    }

    #[test]
    fn empty_relator_list_is_allowed() {
        let p = parse_presentation("< a, b | >").unwrap();
        assert!(p.relators.is_empty());
    }

    #[test]
    fn trailing_input_is_rejected() {
        assert!(parse_presentation("< a | a^2 > junk").is_err());
    }

    #[test]
    fn exponent_towers_associate_left() {
        // (a^2)^3 = a^6, and (a^b)^c conjugates twice
        assert_eq!(rel("< a | a^2^3 >"), vec![vec![(0, 6)]]);
        assert_eq!(
            rel("< a, b, c | a^b^c >"),
            vec![vec![
                (2, -1),
                (1, -1),
                (0, 1),
                (1, 1),
                (2, 1)
            ]]
        );
    }
}
