use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::lexer::Tok;
use super::parser::{Parser, Signature};
use super::render::{render_formula, render_judgment, render_term};
use super::ParseError;
use crate::kernel::{Derivation, Justification, Line, Rule, Witness};
use crate::logic::{Formula, Hypothesis, Judgment, Sequent, Term};
use crate::tactics::Tactic;

/// Name under which emitted derivation files abbreviate the root context.
pub const CONTEXT_ALIAS: &str = "Γ";

/// `hyp <label> : <formula>` lines followed by `theorem <name> : <formula>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremFile {
    pub hypotheses: Vec<Hypothesis>,
    pub name: String,
    pub goal: Formula,
}

impl TheoremFile {
    pub fn sequent(&self) -> Sequent {
        Sequent::new(self.hypotheses.clone(), self.goal.clone())
    }

    pub fn context(&self) -> Vec<Formula> {
        self.hypotheses.iter().map(|h| h.formula.clone()).collect()
    }
}

pub fn parse_theorem(text: &str) -> Result<TheoremFile, ParseError> {
    let mut sig = Signature::default();
    let mut p = Parser::new(text, 1, &mut sig)?;
    let mut hypotheses: Vec<Hypothesis> = Vec::new();
    loop {
        let line = p.pos().line;
        if p.peek_keyword("hyp") {
            p.bump();
            let label = p.ident()?;
            p.expect(&Tok::Colon)?;
            let formula = p.formula()?;
            p.eat(&Tok::Dot);
            if hypotheses.iter().any(|h| h.label == label) {
                return Err(ParseError::DuplicateLabel { line, label });
            }
            hypotheses.push(Hypothesis::new(label, formula));
        } else if p.peek_keyword("theorem") {
            p.bump();
            let name = p.ident()?;
            p.expect(&Tok::Colon)?;
            let goal = p.formula()?;
            p.eat(&Tok::Dot);
            p.expect_end()?;
            return Ok(TheoremFile {
                hypotheses,
                name,
                goal,
            });
        } else {
            return Err(p.unexpected("`hyp` or `theorem`"));
        }
    }
}

pub fn render_theorem(t: &TheoremFile) -> String {
    let mut out = String::new();
    for h in &t.hypotheses {
        out.push_str(&format!("hyp {} : {}\n", h.label, render_formula(&h.formula)));
    }
    out.push_str(&format!("theorem {} : {}\n", t.name, render_formula(&t.goal)));
    out
}

/// A tactic script: period-terminated commands.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Script {
    pub tactics: Vec<Tactic>,
}

impl Script {
    pub fn new(tactics: Vec<Tactic>) -> Script {
        Script { tactics }
    }

    pub fn len(&self) -> usize {
        self.tactics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tactics.is_empty()
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_script(self))
    }
}

pub fn parse_script(text: &str) -> Result<Script, ParseError> {
    let mut sig = Signature::default();
    let mut p = Parser::new(text, 1, &mut sig)?;
    let mut tactics = Vec::new();
    while !p.at_end() {
        tactics.push(tactic(&mut p)?);
    }
    Ok(Script { tactics })
}

/// Parses exactly one command; the closing period may be omitted.
pub fn parse_tactic(text: &str) -> Result<Tactic, ParseError> {
    let mut sig = Signature::default();
    let mut p = Parser::new(text, 1, &mut sig)?;
    if p.at_end() {
        return Err(p.unexpected("tactic"));
    }
    let t = tactic_body(&mut p)?;
    p.eat(&Tok::Dot);
    p.expect_end()?;
    Ok(t)
}

fn tactic(p: &mut Parser<'_>) -> Result<Tactic, ParseError> {
    let t = tactic_body(p)?;
    p.expect(&Tok::Dot)?;
    Ok(t)
}

fn tactic_body(p: &mut Parser<'_>) -> Result<Tactic, ParseError> {
    let pos = p.pos();
    let name = match p.bump() {
        Some(Tok::Ident(name)) => name,
        _ => return Err(ParseError::syntax(pos, "expected a tactic name")),
    };
    Ok(match name.as_str() {
        "intro" => Tactic::Intro,
        "split" => Tactic::Split,
        "left" => Tactic::Left,
        "right" => Tactic::Right,
        "trivial" => Tactic::Trivial,
        "exists" => Tactic::Exists(p.term()?),
        "apply" => {
            let label = p.ident()?;
            let with = if p.peek_keyword("with") {
                p.bump();
                Some(p.term()?)
            } else {
                None
            };
            Tactic::Apply { label, with }
        }
        "destruct" => Tactic::Destruct(p.ident()?),
        "assert" => {
            let lemma = parenthesized(p)?;
            let label = if p.peek_keyword("as") {
                p.bump();
                Some(p.ident()?)
            } else {
                None
            };
            Tactic::Assert { lemma, label }
        }
        "cut" => Tactic::Cut(parenthesized(p)?),
        _ => {
            return Err(ParseError::UnknownTactic {
                line: pos.line,
                col: pos.col,
                name,
            })
        }
    })
}

fn parenthesized(p: &mut Parser<'_>) -> Result<Formula, ParseError> {
    p.expect(&Tok::LParen)?;
    let f = p.formula()?;
    p.expect(&Tok::RParen)?;
    Ok(f)
}

pub fn render_tactic(t: &Tactic) -> String {
    let body = match t {
        Tactic::Intro => "intro".to_string(),
        Tactic::Split => "split".to_string(),
        Tactic::Left => "left".to_string(),
        Tactic::Right => "right".to_string(),
        Tactic::Trivial => "trivial".to_string(),
        Tactic::Exists(t) => format!("exists {}", render_term(t)),
        Tactic::Apply { label, with: None } => format!("apply {label}"),
        Tactic::Apply {
            label,
            with: Some(t),
        } => format!("apply {label} with {}", render_term(t)),
        Tactic::Destruct(h) => format!("destruct {h}"),
        Tactic::Assert { lemma, label: None } => format!("assert ({})", render_formula(lemma)),
        Tactic::Assert {
            lemma,
            label: Some(h),
        } => format!("assert ({}) as {h}", render_formula(lemma)),
        Tactic::Cut(a) => format!("cut ({})", render_formula(a)),
    };
    body + "."
}

pub fn render_script(s: &Script) -> String {
    s.tactics.iter().map(|t| render_tactic(t) + "\n").collect()
}

/// Parses `A, B |- C`, expanding any context item that names an alias.
pub fn parse_judgment(
    text: &str,
    aliases: &[(String, Vec<Formula>)],
) -> Result<Judgment, ParseError> {
    let mut sig = Signature::default();
    let mut p = Parser::new(text, 1, &mut sig)?;
    let j = judgment(&mut p, aliases)?;
    p.expect_end()?;
    Ok(j)
}

fn judgment(
    p: &mut Parser<'_>,
    aliases: &[(String, Vec<Formula>)],
) -> Result<Judgment, ParseError> {
    let mut context = Vec::new();
    if !p.eat(&Tok::Turnstile) {
        loop {
            context.extend(context_item(p, aliases)?);
            if p.eat(&Tok::Turnstile) {
                break;
            }
            if !p.eat(&Tok::Comma) {
                return Err(p.unexpected("`,` or `|-`"));
            }
        }
    }
    let conclusion = p.formula()?;
    Ok(Judgment::new(context, conclusion))
}

fn context_item(
    p: &mut Parser<'_>,
    aliases: &[(String, Vec<Formula>)],
) -> Result<Vec<Formula>, ParseError> {
    if let Some(Tok::Ident(name)) = p.peek() {
        let delimited = matches!(p.peek_at(1), Some(Tok::Comma | Tok::Turnstile) | None);
        if delimited {
            if let Some((_, fs)) = aliases.iter().find(|(a, _)| a == name) {
                let fs = fs.clone();
                p.bump();
                return Ok(fs);
            }
        }
    }
    Ok(vec![p.formula()?])
}

/// Parses a derivation file, either the pipe-separated table or the JSON
/// object form (detected by a leading `{`).
pub fn parse_derivation(text: &str) -> Result<Derivation, ParseError> {
    if text.trim_start().starts_with('{') {
        return parse_derivation_json(text);
    }
    let mut sig = Signature::default();
    let mut aliases: Vec<(String, Vec<Formula>)> = Vec::new();
    let mut lines = Vec::new();
    let mut assumed = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let lineno = n + 1;
        let mut p = Parser::new(raw, lineno, &mut sig)?;
        if p.at_end() {
            continue;
        }
        if p.peek_keyword("context") {
            if !lines.is_empty() {
                return Err(p.error("context aliases must precede the first line"));
            }
            p.bump();
            let name = p.ident()?;
            p.expect(&Tok::Define)?;
            let mut fs = Vec::new();
            if !p.at_end() {
                loop {
                    fs.extend(context_item(&mut p, &aliases)?);
                    if p.at_end() {
                        break;
                    }
                    p.expect(&Tok::Comma)?;
                }
            }
            if aliases.iter().any(|(a, _)| *a == name) {
                return Err(ParseError::DuplicateLabel {
                    line: lineno,
                    label: name,
                });
            }
            aliases.push((name, fs));
            continue;
        }
        let index = match p.bump() {
            Some(Tok::Int(i)) => i,
            _ => {
                return Err(ParseError::Syntax {
                    line: lineno,
                    col: 1,
                    msg: "expected line index".into(),
                })
            }
        };
        if index != lines.len() + 1 {
            return Err(ParseError::Syntax {
                line: lineno,
                col: 1,
                msg: format!("expected line index {}, found {index}", lines.len() + 1),
            });
        }
        p.expect(&Tok::Pipe)?;
        let j = judgment(&mut p, &aliases)?;
        p.expect(&Tok::Pipe)?;
        let rule_pos = p.pos();
        let rule_name = p.ident()?;
        let rule = Rule::from_name(&rule_name).ok_or_else(|| {
            ParseError::syntax(rule_pos, format!("unknown rule `{rule_name}`"))
        })?;
        let mut premises = Vec::new();
        while let Some(Tok::Int(k)) = p.peek() {
            let k = *k;
            p.bump();
            if k == 0 || k >= index {
                return Err(ParseError::BadIndex {
                    line: lineno,
                    index,
                    premise: k,
                });
            }
            premises.push(k);
            p.eat(&Tok::Comma);
        }
        let witness = if p.at_end() {
            None
        } else {
            let wpos = p.pos();
            Some(witness_for(rule, p.term()?).map_err(|m| ParseError::syntax(wpos, m))?)
        };
        p.expect_end()?;
        if rule == Rule::Assumed {
            assumed.push(j.clone());
        }
        lines.push(Line {
            judgment: j,
            justification: Justification {
                rule,
                premises,
                witness,
            },
        });
    }
    Ok(Derivation { lines, assumed })
}

fn witness_for(rule: Rule, t: Term) -> Result<Witness, String> {
    match rule {
        Rule::ForallE | Rule::ExistsI => Ok(Witness::Term(t)),
        Rule::ForallI | Rule::ExistsE => match t {
            Term::Var(x) => Ok(Witness::Eigen(x)),
            other => Err(format!("eigenvariable of {} must be a variable, found `{other}`", rule.name())),
        },
        _ => Err(format!("rule {} takes no witness", rule.name())),
    }
}

fn render_witness(w: &Witness) -> String {
    match w {
        Witness::Term(t) => render_term(t),
        Witness::Eigen(x) => x.clone(),
    }
}

/// Pipe-separated rendering. A non-empty root context is abbreviated as
/// [`CONTEXT_ALIAS`] wherever it is a prefix of a line's context.
pub fn render_derivation(d: &Derivation) -> String {
    let mut out = String::new();
    let root: Vec<Formula> = d
        .lines
        .last()
        .map(|l| l.judgment.context.clone())
        .unwrap_or_default();
    let alias = if root.is_empty() || uses_alias_name(d) {
        None
    } else {
        let items: Vec<String> = root.iter().map(render_formula).collect();
        out.push_str(&format!("context {CONTEXT_ALIAS} := {}\n", items.join(", ")));
        Some((CONTEXT_ALIAS, root.as_slice()))
    };
    for (i, line) in d.lines.iter().enumerate() {
        let just = &line.justification;
        let mut tail = just.rule.name().to_string();
        if !just.premises.is_empty() {
            let ps: Vec<String> = just.premises.iter().map(usize::to_string).collect();
            tail.push(' ');
            tail.push_str(&ps.join(","));
        }
        if let Some(w) = &just.witness {
            tail.push(' ');
            tail.push_str(&render_witness(w));
        }
        out.push_str(&format!(
            "{} | {} | {}\n",
            i + 1,
            render_judgment(&line.judgment, alias),
            tail
        ));
    }
    out
}

// An atom spelled like the alias would be swallowed by it on reparse.
fn uses_alias_name(d: &Derivation) -> bool {
    d.lines.iter().any(|l| {
        l.judgment
            .context
            .iter()
            .any(|f| matches!(f, Formula::Atom(p, args) if p == CONTEXT_ALIAS && args.is_empty()))
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct DerivationJson {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    aliases: BTreeMap<String, Vec<String>>,
    lines: Vec<LineJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct LineJson {
    index: usize,
    context: Vec<String>,
    conclusion: String,
    rule: String,
    #[serde(default)]
    premises: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
}

fn parse_derivation_json(text: &str) -> Result<Derivation, ParseError> {
    let doc: DerivationJson = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    let mut sig = Signature::default();
    let mut formula = |s: &str, line: usize| -> Result<Formula, ParseError> {
        let mut p = Parser::new(s, line, &mut sig)?;
        let f = p.formula()?;
        p.expect_end()?;
        Ok(f)
    };
    let mut aliases: Vec<(String, Vec<Formula>)> = Vec::new();
    for (name, fs) in &doc.aliases {
        let fs = fs.iter().map(|s| formula(s, 0)).collect::<Result<_, _>>()?;
        aliases.push((name.clone(), fs));
    }
    let mut lines = Vec::new();
    let mut assumed = Vec::new();
    for (i, l) in doc.lines.iter().enumerate() {
        let index = i + 1;
        let syntax = |msg: String| ParseError::Syntax {
            line: index,
            col: 1,
            msg,
        };
        if l.index != index {
            return Err(syntax(format!("expected line index {index}, found {}", l.index)));
        }
        let mut context = Vec::new();
        for item in &l.context {
            match aliases.iter().find(|(a, _)| a == item) {
                Some((_, fs)) => context.extend(fs.iter().cloned()),
                None => context.push(formula(item, index)?),
            }
        }
        let conclusion = formula(&l.conclusion, index)?;
        let rule = Rule::from_name(&l.rule).ok_or_else(|| syntax(format!("unknown rule `{}`", l.rule)))?;
        if let Some(&k) = l.premises.iter().find(|&&k| k == 0 || k >= index) {
            return Err(ParseError::BadIndex {
                line: index,
                index,
                premise: k,
            });
        }
        let witness = match &l.witness {
            None => None,
            Some(w) => {
                let t = super::parse_term(w)?;
                Some(witness_for(rule, t).map_err(syntax)?)
            }
        };
        let judgment = Judgment::new(context, conclusion);
        if rule == Rule::Assumed {
            assumed.push(judgment.clone());
        }
        lines.push(Line {
            judgment,
            justification: Justification {
                rule,
                premises: l.premises.clone(),
                witness,
            },
        });
    }
    Ok(Derivation { lines, assumed })
}

/// The structured-object form of a derivation file.
pub fn render_derivation_json(d: &Derivation) -> String {
    let doc = DerivationJson {
        aliases: BTreeMap::new(),
        lines: d
            .lines
            .iter()
            .enumerate()
            .map(|(i, l)| LineJson {
                index: i + 1,
                context: l.judgment.context.iter().map(render_formula).collect(),
                conclusion: render_formula(&l.judgment.conclusion),
                rule: l.justification.rule.name().to_string(),
                premises: l.justification.premises.clone(),
                witness: l.justification.witness.as_ref().map(render_witness),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("derivation serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const LISTING: &str = "\
hyp H1 : p -> q \\/ r
hyp H2 : q -> r
hyp H3 : r -> s
theorem Example1 : p -> s.
";

    #[test]
    fn theorem_file_from_listing() {
        let t = parse_theorem(LISTING).unwrap();
        let labels: Vec<_> = t.hypotheses.iter().map(|h| h.label.as_str()).collect();
        assert_eq!(labels, ["H1", "H2", "H3"]);
        assert_eq!(t.name, "Example1");
        assert_eq!(render_formula(&t.goal), "p -> s");
        assert_eq!(parse_theorem(&render_theorem(&t)).unwrap(), t);
    }

    #[test]
    fn theorem_rejects_duplicate_labels() {
        let err = parse_theorem("hyp H : p\nhyp H : q\ntheorem T : p").unwrap_err();
        assert_eq!(err, ParseError::DuplicateLabel { line: 2, label: "H".into() });
    }

    #[test]
    fn script_commands() {
        let s = parse_script("intro. apply H3. trivial.").unwrap();
        assert_eq!(
            s.tactics,
            vec![
                Tactic::Intro,
                Tactic::Apply { label: "H3".into(), with: None },
                Tactic::Trivial
            ]
        );
        assert!(parse_script("").unwrap().is_empty());
        assert_eq!(
            parse_script("exists y.").unwrap().tactics,
            vec![Tactic::Exists(Term::var("y"))]
        );
    }

    #[test]
    fn script_with_formulas_and_comments() {
        let text = "-- lemma first\nassert (q \\/ r) as H4.\ncut (forall x. P(x)).\napply H with f(a()).\n";
        let s = parse_script(text).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(parse_script(&render_script(&s)).unwrap(), s);
    }

    #[test]
    fn script_errors() {
        assert!(matches!(parse_script("intro. frobnicate."), Err(ParseError::UnknownTactic { .. })));
        assert!(matches!(parse_script("intro"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_script("apply."), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn single_line_derivation() {
        let d = parse_derivation("1 | p |- p | Hyp").unwrap();
        assert_eq!(d.lines.len(), 1);
        assert_eq!(d.lines[0].justification.rule, Rule::Hyp);
        assert!(d.lines[0].justification.premises.is_empty());
    }

    #[test]
    fn forward_premise_is_bad_index() {
        let text = "1 | p |- p | Hyp\n2 | p |- p | Hyp\n3 | p |- p /\\ p | AndI 1,5\n";
        assert_eq!(
            parse_derivation(text).unwrap_err(),
            ParseError::BadIndex { line: 3, index: 3, premise: 5 }
        );
    }

    #[test]
    fn alias_expansion_and_witnesses() {
        let text = "\
context G := P(x), q
1 | G |- P(x) | Hyp
2 | G |- exists y. P(y) | ExistsI 1 x
";
        let d = parse_derivation(text).unwrap();
        assert_eq!(d.lines[0].judgment.context.len(), 2);
        assert_eq!(d.lines[1].justification.witness, Some(Witness::Term(Term::var("x"))));
        assert!(parse_derivation("1 | p |- p | Hyp x").is_err());
    }

    #[test]
    fn json_and_text_agree() {
        let text = "1 | p, q |- p | Hyp\n2 | p, q |- q | Hyp\n3 | p, q |- p /\\ q | AndI 1,2\n";
        let d = parse_derivation(text).unwrap();
        let json = render_derivation_json(&d);
        assert_eq!(parse_derivation(&json).unwrap(), d);
        assert_eq!(parse_derivation(&render_derivation(&d)).unwrap(), d);
    }
}
