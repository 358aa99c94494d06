use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    Identifier,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// 0-based character column of the first character.
    pub position: usize,
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let single = match c {
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            '*' => Some(TokenKind::Star),
            '/' => Some(TokenKind::Slash),
            '^' => Some(TokenKind::Caret),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            ',' => Some(TokenKind::Comma),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token {
                kind,
                text: c.to_string(),
                position: start,
            });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            // imaginary suffix
            if i < chars.len()
                && chars[i] == 'i'
                && !chars.get(i + 1).copied().is_some_and(is_ident_continue)
            {
                i += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Number,
                text: chars[start..i].iter().collect(),
                position: start,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < chars.len() && is_ident_continue(chars[i]) {
                i += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Identifier,
                text: chars[start..i].iter().collect(),
                position: start,
            });
            continue;
        }
        return Err(ParseError::new(format!("unexpected character `{c}`"), start));
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<(TokenKind, String)> {
        tokenize(src)
            .unwrap()
            .into_iter()
            .map(|t| (t.kind, t.text))
            .collect()
    }

    #[test]
    fn simple_sum() {
        assert_eq!(
            kinds("1+s"),
            vec![
                (TokenKind::Number, "1".into()),
                (TokenKind::Plus, "+".into()),
                (TokenKind::Identifier, "s".into())
            ]
        );
    }

    #[test]
    fn call() {
        let toks = tokenize("gamma(s)").unwrap();
        let k: Vec<_> = toks.iter().map(|t| t.kind).collect();
        assert_eq!(
            k,
            [TokenKind::Identifier, TokenKind::LParen, TokenKind::Identifier, TokenKind::RParen]
        );
        assert_eq!(toks[2].position, 6);
    }

    #[test]
    fn numbers() {
        assert_eq!(kinds("1.25e-3")[0].1, "1.25e-3");
        assert_eq!(kinds("2E+10")[0].1, "2E+10");
        assert_eq!(kinds("3i")[0].1, "3i");
        // `e` without digits is not an exponent
        assert_eq!(kinds("2e").len(), 2);
        // `in` is an identifier, not an imaginary suffix
        assert_eq!(kinds("2in").len(), 2);
        assert_eq!(kinds("i")[0], (TokenKind::Identifier, "i".into()));
    }

    #[test]
    fn bad_character() {
        let e = tokenize("2 @ 3").unwrap_err();
        assert_eq!(e.position, 2);
        let e = tokenize("éx").unwrap_err();
        assert_eq!(e.position, 0);
    }
}
