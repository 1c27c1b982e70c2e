use crate::diagnostic::Diagnostic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(String),
    Sym(&'static str),
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(s) => format!("number `{s}`"),
            Tok::Sym(s) => format!("`{s}`"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub start: usize,
    pub end: usize,
}

const SYMBOLS: [&str; 17] = ["->", ";", "=", ":", "[", "]", "(", ")", "{", "}", ",", "/", "*", "+", "-", "^", "."];

/// Splits a script into tokens; `//` and `#` start line comments.
pub fn lex(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' || text[i..].starts_with("//") {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(text[start..i].to_string()),
                start,
                end: i,
            });
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Num(text[start..i].to_string()),
                start,
                end: i,
            });
            continue;
        }
        for s in SYMBOLS {
            if text[i..].starts_with(s) {
                i += s.len();
                out.push(Token { tok: Tok::Sym(s), start, end: i });
                continue 'outer;
            }
        }
        let ch = text[i..].chars().next().unwrap();
        return Err(Diagnostic::at(text, start, format!("unexpected character `{ch}`")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows_and_comments() {
        let toks = lex("map f: A -> B { x -> y^2 }; // done\n# more").unwrap();
        let kinds: Vec<Tok> = toks.into_iter().map(|t| t.tok).collect();
        assert_eq!(kinds[2], Tok::Sym(":"));
        assert_eq!(kinds[4], Tok::Sym("->"));
        assert_eq!(kinds.last(), Some(&Tok::Sym(";")));
    }

    #[test]
    fn stray_characters_are_located() {
        let err = lex("ring A = QQ[x];\nring B = @").unwrap_err();
        assert_eq!((err.line, err.col), (2, 10));
    }
}
