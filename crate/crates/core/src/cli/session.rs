//! The line-oriented session format.
//!
//! ```text
//! # comment
//! seed 7
//! trials 50
//! monoid nat
//! ring leavitt 2
//! action diagonal
//! let x = sm(1) * y1*x2 * sp(2)
//! check relations
//! check zero x
//! dilate
//! ktheory 3
//! ```

use std::fmt;

use crate::monoid::builtin_monoid;

use super::expr::{parse_expr, Expr};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for SessionError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "text" => Some(Format::Text),
            "structured" => Some(Format::Structured),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Structured => "structured",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingSpec {
    MatQ(usize),
    DiagQ(usize),
    Uhf(u64),
    Leavitt(u8),
    IdemQ2,
}

impl RingSpec {
    pub fn parse(name: &str, params: &[u64]) -> Result<RingSpec, String> {
        let one = |lo: u64, hi: u64| match params {
            [k] if (lo..=hi).contains(k) => Ok(*k),
            [k] => Err(format!("`{name}` needs a size in {lo}..={hi}, got {k}")),
            _ => Err(format!("`{name}` takes exactly one parameter, got {}", params.len())),
        };
        match name {
            "matq" => Ok(RingSpec::MatQ(one(1, 8)? as usize)),
            "diagq" => Ok(RingSpec::DiagQ(one(1, 16)? as usize)),
            "uhf" => Ok(RingSpec::Uhf(one(2, 16)?)),
            "leavitt" => Ok(RingSpec::Leavitt(one(2, 255)? as u8)),
            "idemq2" if params.is_empty() => Ok(RingSpec::IdemQ2),
            "idemq2" => Err("`idemq2` takes no parameters".into()),
            other => Err(format!("unknown ring `{other}` (see --list-instances)")),
        }
    }

    pub fn actions(self) -> &'static [&'static str] {
        match self {
            RingSpec::MatQ(_) => &["identity", "cyclic"],
            RingSpec::DiagQ(2) => &["identity", "swap", "cyclic"],
            RingSpec::DiagQ(_) => &["identity", "cyclic"],
            RingSpec::Uhf(_) => &["corner", "identity"],
            RingSpec::Leavitt(_) => &["diagonal", "identity"],
            RingSpec::IdemQ2 => &["collapse", "identity"],
        }
    }

    pub fn render(self) -> String {
        match self {
            RingSpec::MatQ(k) => format!("matq {k}"),
            RingSpec::DiagQ(k) => format!("diagq {k}"),
            RingSpec::Uhf(n) => format!("uhf {n}"),
            RingSpec::Leavitt(n) => format!("leavitt {n}"),
            RingSpec::IdemQ2 => "idemq2".into(),
        }
    }
}

/// `(name, description)` of every ring instance, for `--list-instances`.
pub fn ring_catalogue() -> Vec<(&'static str, &'static str)> {
    vec![
        ("matq <k>", "M_k(Q); actions: identity, cyclic (conjugation by the cyclic shift)"),
        ("diagq <k>", "Q^k; actions: identity, swap (k = 2), cyclic"),
        ("uhf <n>", "lim M_{n^k}(Q); actions: corner a ↦ a⊗e11, identity"),
        ("leavitt <n>", "Leavitt algebra L_n; actions: diagonal a ↦ Σ y_i a x_i, identity"),
        ("idemq2", "Q²; actions: collapse (a,b) ↦ (a,a), identity"),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Relations,
    Rewriting,
    Grading,
    Arithmetic,
    Limit,
    Bar,
    Fractions,
    Phi,
    Transport,
    Zero(String),
    Nonzero(String),
    Equal(String, String),
}

impl Check {
    fn parse(words: &[&str]) -> Result<Check, String> {
        Ok(match words {
            ["relations"] => Check::Relations,
            ["rewriting"] => Check::Rewriting,
            ["grading"] => Check::Grading,
            ["arithmetic"] => Check::Arithmetic,
            ["limit"] => Check::Limit,
            ["bar"] => Check::Bar,
            ["fractions"] => Check::Fractions,
            ["phi"] => Check::Phi,
            ["transport"] => Check::Transport,
            ["zero", x] => Check::Zero(x.to_string()),
            ["nonzero", x] => Check::Nonzero(x.to_string()),
            ["equal", x, y] => Check::Equal(x.to_string(), y.to_string()),
            [] => return Err("`check` needs a suite name".into()),
            [kind @ ("zero" | "nonzero" | "equal"), ..] => {
                return Err(format!("wrong number of operands for `check {kind}`"))
            }
            [other, ..] => {
                return Err(format!(
                    "unknown check `{other}` (relations, rewriting, grading, arithmetic, limit, bar, \
                     fractions, phi, transport, zero, nonzero, equal)"
                ))
            }
        })
    }

    fn render(&self) -> String {
        match self {
            Check::Relations => "relations".into(),
            Check::Rewriting => "rewriting".into(),
            Check::Grading => "grading".into(),
            Check::Arithmetic => "arithmetic".into(),
            Check::Limit => "limit".into(),
            Check::Bar => "bar".into(),
            Check::Fractions => "fractions".into(),
            Check::Phi => "phi".into(),
            Check::Transport => "transport".into(),
            Check::Zero(x) => format!("zero {x}"),
            Check::Nonzero(x) => format!("nonzero {x}"),
            Check::Equal(x, y) => format!("equal {x} {y}"),
        }
    }

    fn operands(&self) -> Vec<&str> {
        match self {
            Check::Zero(x) | Check::Nonzero(x) => vec![x],
            Check::Equal(x, y) => vec![x, y],
            _ => vec![],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Seed(u64),
    Trials(usize),
    Format(Format),
    Monoid { name: String, params: Vec<u32> },
    Ring(RingSpec),
    Action(Vec<String>),
    Quotient,
    Let { name: String, expr: Expr, src: String },
    Print(String),
    Check(Check),
    Dilate,
    Ktheory(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub line: usize,
    pub stmt: Stmt,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Session {
    pub lines: Vec<Line>,
}

impl Session {
    pub fn seed(&self) -> Option<u64> {
        self.lines.iter().rev().find_map(|l| match l.stmt {
            Stmt::Seed(s) => Some(s),
            _ => None,
        })
    }

    pub fn trials(&self) -> Option<usize> {
        self.lines.iter().rev().find_map(|l| match l.stmt {
            Stmt::Trials(t) => Some(t),
            _ => None,
        })
    }

    pub fn format(&self) -> Option<Format> {
        self.lines.iter().rev().find_map(|l| match l.stmt {
            Stmt::Format(f) => Some(f),
            _ => None,
        })
    }

    /// Back to session text; `parse_session(&s.render())` gives the same statements.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let text = match &l.stmt {
                Stmt::Seed(s) => format!("seed {s}"),
                Stmt::Trials(t) => format!("trials {t}"),
                Stmt::Format(f) => format!("format {}", f.name()),
                Stmt::Monoid { name, params } => {
                    let mut w = vec![name.clone()];
                    w.extend(params.iter().map(u32::to_string));
                    format!("monoid {}", w.join(" "))
                }
                Stmt::Ring(r) => format!("ring {}", r.render()),
                Stmt::Action(a) => format!("action {}", a.join(" ")),
                Stmt::Quotient => "quotient".into(),
                Stmt::Let { name, src, .. } => format!("let {name} = {src}"),
                Stmt::Print(x) => format!("print {x}"),
                Stmt::Check(c) => format!("check {}", c.render()),
                Stmt::Dilate => "dilate".into(),
                Stmt::Ktheory(n) => format!("ktheory {n}"),
            };
            out.push_str(&text);
            out.push('\n');
        }
        out
    }
}

/// What is in scope while validating.
#[derive(Default)]
struct Scope {
    rank: Option<usize>,
    ring: Option<RingSpec>,
    action: bool,
    quotient: bool,
    names: Vec<String>,
}

fn is_name(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(f) if f.is_ascii_alphabetic() || f == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
        && s != "sm"
        && s != "sp"
}

pub fn parse_session(text: &str) -> Result<Session, SessionError> {
    let mut session = Session::default();
    let mut scope = Scope::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let indent = content.len() - content.trim_start().len();
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let at = |col: usize, message: String| SessionError { line, col: indent + col, message };
        let words: Vec<&str> = content.split_whitespace().collect();
        let head = words[0];
        let rest = &words[1..];
        // column of the first argument
        let arg_col = head.chars().count() + 2;
        let stmt = match head {
            "seed" | "trials" | "ktheory" => {
                let [v] = rest else {
                    return Err(at(1, format!("`{head}` takes exactly one number")));
                };
                let n: u64 = v.parse().map_err(|_| at(arg_col, format!("`{v}` is not a non-negative integer")))?;
                match head {
                    "seed" => Stmt::Seed(n),
                    "trials" if n == 0 => return Err(at(arg_col, "trials must be positive".into())),
                    "trials" => Stmt::Trials(n as usize),
                    _ if !(2..=1000).contains(&n) => {
                        return Err(at(arg_col, format!("ktheory needs 2 ≤ n ≤ 1000, got {n}")))
                    }
                    _ => Stmt::Ktheory(n),
                }
            }
            "format" => match rest {
                [f] => Stmt::Format(Format::parse(f).ok_or_else(|| at(arg_col, format!("unknown format `{f}`")))?),
                _ => return Err(at(1, "`format` takes `text` or `structured`".into())),
            },
            "monoid" => {
                let [name, params @ ..] = rest else {
                    return Err(at(1, "`monoid` needs a name".into()));
                };
                let params: Vec<u32> = params
                    .iter()
                    .map(|p| p.parse().map_err(|_| at(arg_col, format!("`{p}` is not a parameter"))))
                    .collect::<Result<_, _>>()?;
                let m = builtin_monoid(name, &params).map_err(|e| at(arg_col, e.to_string()))?;
                scope = Scope { rank: Some(m.rank()), ..Scope::default() };
                Stmt::Monoid { name: name.to_string(), params }
            }
            "ring" => {
                let [name, params @ ..] = rest else {
                    return Err(at(1, "`ring` needs a name".into()));
                };
                let params: Vec<u64> = params
                    .iter()
                    .map(|p| p.parse().map_err(|_| at(arg_col, format!("`{p}` is not a parameter"))))
                    .collect::<Result<_, _>>()?;
                let spec = RingSpec::parse(name, &params).map_err(|e| at(arg_col, e))?;
                scope = Scope { rank: scope.rank, ring: Some(spec), ..Scope::default() };
                Stmt::Ring(spec)
            }
            "action" => {
                let (Some(rank), Some(ring)) = (scope.rank, scope.ring) else {
                    return Err(at(1, "`action` needs a `monoid` and a `ring` first".into()));
                };
                let names: Vec<String> = match rest {
                    [] => return Err(at(1, "`action` needs an endomorphism name".into())),
                    [one] => vec![one.to_string(); rank],
                    many if many.len() == rank => many.iter().map(|s| s.to_string()).collect(),
                    many => {
                        return Err(at(
                            arg_col,
                            format!("`action` takes 1 or {rank} endomorphisms (one per generator), got {}", many.len()),
                        ))
                    }
                };
                for n in &names {
                    if !ring.actions().contains(&n.as_str()) {
                        return Err(at(
                            arg_col,
                            format!("unknown action `{n}` for {}; available: {}", ring.render(), ring.actions().join(", ")),
                        ));
                    }
                }
                scope = Scope { rank: scope.rank, ring: scope.ring, action: true, ..Scope::default() };
                Stmt::Action(rest.iter().map(|s| s.to_string()).collect())
            }
            "quotient" | "dilate" | "let" | "print" | "check" if !scope.action => {
                return Err(at(1, format!("`{head}` needs an `action` in scope")));
            }
            "quotient" => {
                if !rest.is_empty() {
                    return Err(at(arg_col, "`quotient` takes no arguments".into()));
                }
                if scope.quotient {
                    return Err(at(1, "the action is already quotiented".into()));
                }
                scope.quotient = true;
                Stmt::Quotient
            }
            "dilate" => {
                if !rest.is_empty() {
                    return Err(at(arg_col, "`dilate` takes no arguments".into()));
                }
                Stmt::Dilate
            }
            "let" => {
                let body = content["let".len()..].trim_start();
                let body_col = content.len() - body.len() + 1;
                let (name, src) = body.split_once('=').ok_or_else(|| at(body_col, "expected `let <name> = <expr>`".into()))?;
                let name = name.trim();
                if !is_name(name) {
                    return Err(at(body_col, format!("`{name}` is not a valid name")));
                }
                let src_col = body_col + body.find('=').unwrap_or(0) + 1;
                let lead = src.len() - src.trim_start().len();
                let src = src.trim();
                let expr = parse_expr(src).map_err(|e| at(src_col + lead + e.col - 1, e.message))?;
                scope.names.push(name.to_string());
                Stmt::Let { name: name.to_string(), expr, src: src.to_string() }
            }
            "print" => match rest {
                [x] if scope.names.iter().any(|n| n == x) => Stmt::Print(x.to_string()),
                [x] => return Err(at(arg_col, format!("`{x}` is not bound"))),
                _ => return Err(at(1, "`print` takes one name".into())),
            },
            "check" => {
                let c = Check::parse(rest).map_err(|e| at(arg_col, e))?;
                for x in c.operands() {
                    if !scope.names.iter().any(|n| n == x) {
                        return Err(at(arg_col, format!("`{x}` is not bound")));
                    }
                }
                if c == Check::Transport && !scope.quotient {
                    return Err(at(arg_col, "`check transport` needs `quotient` first".into()));
                }
                Stmt::Check(c)
            }
            other => return Err(at(1, format!("unknown statement `{other}`"))),
        };
        session.lines.push(Line { line, stmt });
    }
    Ok(session)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_session() {
        let s = parse_session("monoid nat\nring matq 2\naction identity\n").unwrap();
        assert_eq!(s.lines.len(), 3);
        assert_eq!(s.lines[1].stmt, Stmt::Ring(RingSpec::MatQ(2)));
        assert_eq!(s.seed(), None);
    }

    #[test]
    fn free_monoid_is_refused() {
        let e = parse_session("monoid free 2\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 8));
        assert!(e.message.contains("common left multiples"), "{e}");
    }

    #[test]
    fn unbalanced_sp_is_positioned() {
        let text = "monoid nat\nring leavitt 2\naction diagonal\nlet x = sm(1) * y1 * sp(2\n";
        let e = parse_session(text).unwrap_err();
        assert_eq!(e.line, 4);
        assert_eq!(e.col, 26);
        assert!(e.message.contains("unbalanced `sp(`"));
    }

    #[test]
    fn scope_rules() {
        assert!(parse_session("check relations\n").unwrap_err().message.contains("needs an `action`"));
        let base = "monoid nat\nring idemq2\naction collapse\n";
        assert!(parse_session(&format!("{base}check transport\n")).is_err());
        assert!(parse_session(&format!("{base}quotient\ncheck transport\n")).is_ok());
        assert!(parse_session(&format!("{base}check zero x\n")).unwrap_err().message.contains("not bound"));
        assert!(parse_session("monoid nat\nring leavitt 2\naction corner\n").unwrap_err().message.contains("available"));
        assert!(parse_session("monoid nat 2\nring uhf 2\naction corner identity identity\n").is_err());
        assert!(parse_session("monoid nat 2\nring uhf 2\naction corner identity\n").is_ok());
        assert!(parse_session("ring leavitt 1\n").is_err());
        assert!(parse_session("ring idemq2 3\n").unwrap_err().message.contains("no parameters"));
    }

    #[test]
    fn render_round_trip() {
        let text = "seed 3 # comment\ntrials 10\nmonoid nat\nring leavitt 2\naction diagonal\n\
                    let x = sm(1) *  y1*x2 * sp(2)\ncheck zero x\ncheck equal x x\ndilate\nktheory 4\nformat structured\n";
        let s = parse_session(text).unwrap();
        let again = parse_session(&s.render()).unwrap();
        let strip = |s: &Session| s.lines.iter().map(|l| l.stmt.clone()).collect::<Vec<_>>();
        assert_eq!(strip(&s), strip(&again));
        assert_eq!(s.seed(), Some(3));
        assert_eq!(s.format(), Some(Format::Structured));
    }
}
