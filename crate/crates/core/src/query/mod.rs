//! Queries over question atoms.
//!
//! Surface syntax, loosest binding first:
//!
//! ```text
//! expr     := or_expr
//! or_expr  := and_expr { "or" and_expr }
//! and_expr := seq_expr { "and" seq_expr }
//! seq_expr := unary { "after" unary }        left-associative
//! unary    := "not" unary | atom | "(" expr ")"
//! atom     := LABEL "@" FAMILY
//! ```
//!
//! `x after y` means "x is asked after y was answered positively". The two
//! shapes `D after (A or B)` and `(D after A) or (D after B)` compile to
//! different plans and in general evaluate to different probabilities.

mod compile;
mod parser;

pub use compile::{compile, evaluate, CompileError, EvalPlan, FamilyEvent};
pub use parser::{parse_query, SyntaxError};

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryExpr {
    Atom {
        family: String,
        label: String,
    },
    Not(Box<QueryExpr>),
    And(Box<QueryExpr>, Box<QueryExpr>),
    Or(Box<QueryExpr>, Box<QueryExpr>),
    Then {
        later: Box<QueryExpr>,
        earlier: Box<QueryExpr>,
    },
}

impl QueryExpr {
    pub fn atom(label: impl Into<String>, family: impl Into<String>) -> Self {
        QueryExpr::Atom {
            family: family.into(),
            label: label.into(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: QueryExpr) -> Self {
        QueryExpr::Not(Box::new(e))
    }

    pub fn and(a: QueryExpr, b: QueryExpr) -> Self {
        QueryExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: QueryExpr, b: QueryExpr) -> Self {
        QueryExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn then(later: QueryExpr, earlier: QueryExpr) -> Self {
        QueryExpr::Then {
            later: Box::new(later),
            earlier: Box::new(earlier),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            QueryExpr::Or(..) => 0,
            QueryExpr::And(..) => 1,
            QueryExpr::Then { .. } => 2,
            QueryExpr::Not(_) | QueryExpr::Atom { .. } => 3,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Renders in surface syntax with the fewest parentheses that re-parse to
/// the same tree.
impl fmt::Display for QueryExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryExpr::Atom { family, label } => write!(f, "{label}@{family}"),
            QueryExpr::Not(e) => {
                f.write_str("not ")?;
                e.fmt_child(f, 3)
            }
            QueryExpr::And(a, b) => {
                a.fmt_child(f, 1)?;
                f.write_str(" and ")?;
                b.fmt_child(f, 2)
            }
            QueryExpr::Or(a, b) => {
                a.fmt_child(f, 0)?;
                f.write_str(" or ")?;
                b.fmt_child(f, 1)
            }
            QueryExpr::Then { later, earlier } => {
                later.fmt_child(f, 2)?;
                f.write_str(" after ")?;
                earlier.fmt_child(f, 3)
            }
        }
    }
}
