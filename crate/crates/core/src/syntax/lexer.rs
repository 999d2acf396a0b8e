use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Lowercase identifier or quoted name.
    Name(String),
    Var(String),
    Int(i64),
    /// Punctuation and operators: `( ) [ ] | ,` and the infix symbols.
    Sym(&'static str),
    Neck,
    CoNeck,
    Query,
    End,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Multi-character symbols first so the longest one wins.
const SYMBOLS: &[&str] = &[
    ":-", ":~", "?-", "\\=", "=<", ">=", "=", "<", ">", "+", "-", "*", "(", ")", "[", "]", "|",
    ",",
];

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    macro_rules! advance {
        ($n:expr) => {{
            for _ in 0..$n {
                if chars[i] == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
                i += 1;
            }
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: tl, col: tc });
        if c.is_whitespace() {
            advance!(1);
        } else if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                advance!(1);
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance!(1);
            }
            let text: String = chars[start..i].iter().collect();
            let n = text
                .parse::<i64>()
                .map_err(|_| ParseError::new(tl, tc, format!("integer literal {text} out of range")))?;
            push(&mut out, Tok::Int(n));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                advance!(1);
            }
            let text: String = chars[start..i].iter().collect();
            if c.is_uppercase() || c == '_' {
                push(&mut out, Tok::Var(text));
            } else {
                push(&mut out, Tok::Name(text));
            }
        } else if c == '\'' {
            advance!(1);
            let mut text = String::new();
            loop {
                if i >= chars.len() {
                    return Err(ParseError::new(tl, tc, "unterminated quoted name"));
                }
                if chars[i] == '\'' {
                    if i + 1 < chars.len() && chars[i + 1] == '\'' {
                        text.push('\'');
                        advance!(2);
                        continue;
                    }
                    advance!(1);
                    break;
                }
                text.push(chars[i]);
                advance!(1);
            }
            push(&mut out, Tok::Name(text));
        } else if c == '.' {
            let next = chars.get(i + 1).copied();
            if next.is_none() || next.is_some_and(|n| n.is_whitespace() || n == '%') {
                advance!(1);
                push(&mut out, Tok::End);
            } else {
                return Err(ParseError::new(tl, tc, "unexpected '.' (end of clause must be followed by whitespace)"));
            }
        } else {
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    advance!(s.chars().count());
                    let tok = match *s {
                        ":-" => Tok::Neck,
                        ":~" => Tok::CoNeck,
                        "?-" => Tok::Query,
                        other => Tok::Sym(other),
                    };
                    push(&mut out, tok);
                }
                None => return Err(ParseError::new(tl, tc, format!("unexpected character {c:?}"))),
            }
        }
    }
    Ok(out)
}
