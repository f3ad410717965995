//! Text language for q-series expressions.
//!
//! Grammar (UTF-8, `#` line comments):
//!
//! ```text
//! expr   := term (('+'|'-') term)* ;
//! term   := unary (('*'|'/') unary)* ;
//! unary  := '-' unary | pow ;
//! pow    := atom ('^' pexp)? ;          pexp := snum | var | '(' expr ')' ;
//! atom   := snum | 'i' | 'q' | var | call | '(' expr ')' ;
//! call   := NAME '(' ... ')' ;
//! poch   := 'poch' '(' expr (',' expr)* ';' expr ';' bound ')' ;
//! prod   := 'prod' '(' expr (',' expr)* ';' expr ')' ;
//! bound  := snum | 'inf' | var | '(' expr ')' ;
//! sum    := 'sum' '(' var '=' lo '..' hi ',' expr ')' ;   lo,hi := snum | '-inf' | 'inf' ;
//! ```
//!
//! Named functions: `jtp(z=..)` (expands to its triple-product form),
//! `j(x;base)`, `J(a,m)`, `Jbar(a,m)`, `Jm(m)`, `m(x;z[;base])`,
//! `g2(x[;base])`, `g3(x[;base])`, and every mock theta name (`f3(q)`,
//! `psi6(q^2)`, `mu6(-q)`, ...).

mod ast;
mod eval;
mod parser;

pub use ast::{Bound, Expr, Func, SumBound};
pub use eval::{evaluate, EvalConfig, Env};
pub use parser::{parse, parse_monomial};
