use thiserror::Error;

use super::QueryExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct SyntaxError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token<'a> {
    Open,
    Close,
    Not,
    And,
    Or,
    After,
    Atom(&'a str, &'a str),
}

fn describe(t: Option<&(usize, Token<'_>)>) -> String {
    match t {
        None => "end of input".into(),
        Some((_, Token::Open)) => "`(`".into(),
        Some((_, Token::Close)) => "`)`".into(),
        Some((_, Token::Not)) => "`not`".into(),
        Some((_, Token::And)) => "`and`".into(),
        Some((_, Token::Or)) => "`or`".into(),
        Some((_, Token::After)) => "`after`".into(),
        Some((_, Token::Atom(l, f))) => format!("`{l}@{f}`"),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token<'_>)>, SyntaxError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                tokens.push((pos, Token::Open));
            }
            ')' => {
                chars.next();
                tokens.push((pos, Token::Close));
            }
            _ => {
                let mut end = text.len();
                while let Some(&(i, c)) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' {
                        end = i;
                        break;
                    }
                    chars.next();
                }
                let word = &text[pos..end];
                let token = match word.to_ascii_lowercase().as_str() {
                    "not" => Token::Not,
                    "and" => Token::And,
                    "or" => Token::Or,
                    "after" => Token::After,
                    _ => match word.split_once('@') {
                        Some((label, family))
                            if !label.is_empty() && !family.is_empty() && !family.contains('@') =>
                        {
                            Token::Atom(label, family)
                        }
                        _ => {
                            return Err(SyntaxError {
                                position: pos,
                                message: format!(
                                    "expected `LABEL@FAMILY` or a keyword, found `{word}`"
                                ),
                            })
                        }
                    },
                };
                tokens.push((pos, token));
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn error(&self, expected: &str) -> SyntaxError {
        let position = self.tokens.get(self.pos).map_or(self.len, |(p, _)| *p);
        SyntaxError {
            position,
            message: format!(
                "expected {expected}, found {}",
                describe(self.tokens.get(self.pos))
            ),
        }
    }

    fn eat(&mut self, t: &Token<'_>) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn or_expr(&mut self) -> Result<QueryExpr, SyntaxError> {
        let mut e = self.and_expr()?;
        while self.eat(&Token::Or) {
            e = QueryExpr::or(e, self.and_expr()?);
        }
        Ok(e)
    }

    fn and_expr(&mut self) -> Result<QueryExpr, SyntaxError> {
        let mut e = self.seq_expr()?;
        while self.eat(&Token::And) {
            e = QueryExpr::and(e, self.seq_expr()?);
        }
        Ok(e)
    }

    fn seq_expr(&mut self) -> Result<QueryExpr, SyntaxError> {
        let mut e = self.unary()?;
        while self.eat(&Token::After) {
            e = QueryExpr::then(e, self.unary()?);
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<QueryExpr, SyntaxError> {
        match self.peek() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(QueryExpr::not(self.unary()?))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let e = self.or_expr()?;
                if !self.eat(&Token::Close) {
                    return Err(self.error("`)`"));
                }
                Ok(e)
            }
            Some(&Token::Atom(label, family)) => {
                self.pos += 1;
                Ok(QueryExpr::atom(label, family))
            }
            _ => Err(self.error("an atom, `not` or `(`")),
        }
    }
}

pub fn parse_query(text: &str) -> Result<QueryExpr, SyntaxError> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        len: text.len(),
    };
    let e = p.or_expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("end of input"));
    }
    Ok(e)
}
