use std::fmt;

use serde_json::{json, Value};

use crate::syntax::{parse_sequent_with_mapped, Sequent};

/// Inference rules of the calculus, plus Cut and the five `Q*` placeholders
/// produced when atoms of a quasi-simulation derivation are replaced by formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleLabel {
    Init,
    LAnd,
    RAnd,
    LOr,
    ROr,
    LImp,
    RImp,
    LBot,
    RBot,
    Cut,
    QAnd1,
    QAnd2,
    QOr,
    QImp,
    QBot,
}

impl RuleLabel {
    pub const ALL: [RuleLabel; 15] = [
        RuleLabel::Init,
        RuleLabel::LAnd,
        RuleLabel::RAnd,
        RuleLabel::LOr,
        RuleLabel::ROr,
        RuleLabel::LImp,
        RuleLabel::RImp,
        RuleLabel::LBot,
        RuleLabel::RBot,
        RuleLabel::Cut,
        RuleLabel::QAnd1,
        RuleLabel::QAnd2,
        RuleLabel::QOr,
        RuleLabel::QImp,
        RuleLabel::QBot,
    ];

    pub const Q_RULES: [RuleLabel; 5] = [
        RuleLabel::QAnd1,
        RuleLabel::QAnd2,
        RuleLabel::QOr,
        RuleLabel::QImp,
        RuleLabel::QBot,
    ];

    pub fn arity(self) -> usize {
        use RuleLabel::*;
        match self {
            Init | LBot => 0,
            LAnd | ROr | RImp | RBot | QAnd1 | QAnd2 | QOr | QBot => 1,
            RAnd | LOr | LImp | Cut | QImp => 2,
        }
    }

    pub fn is_q(self) -> bool {
        Self::Q_RULES.contains(&self)
    }

    pub fn name(self) -> &'static str {
        use RuleLabel::*;
        match self {
            Init => "init",
            LAnd => "L-and",
            RAnd => "R-and",
            LOr => "L-or",
            ROr => "R-or",
            LImp => "L-imp",
            RImp => "R-imp",
            LBot => "L-bot",
            RBot => "R-bot",
            Cut => "cut",
            QAnd1 => "Q-and1",
            QAnd2 => "Q-and2",
            QOr => "Q-or",
            QImp => "Q-imp",
            QBot => "Q-bot",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleLabel> {
        Self::ALL.into_iter().find(|r| r.name() == name)
    }

    pub fn latex(self) -> &'static str {
        use RuleLabel::*;
        match self {
            Init => "$\\mathsf{init}$",
            LAnd => "$L\\land$",
            RAnd => "$R\\land$",
            LOr => "$L\\lor$",
            ROr => "$R\\lor$",
            LImp => "$L\\to$",
            RImp => "$R\\to$",
            LBot => "$L\\bot$",
            RBot => "$R\\bot$",
            Cut => "$\\mathsf{Cut}$",
            QAnd1 => "$Q\\land^{*}_{1}$",
            QAnd2 => "$Q\\land^{*}_{2}$",
            QOr => "$Q\\lor^{*}$",
            QImp => "$Q\\to^{*}$",
            QBot => "$Q\\bot^{*}$",
        }
    }
}

impl fmt::Display for RuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A proof tree. Premises are ordered as in the rule schema.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Proof {
    pub conclusion: Sequent,
    pub rule: RuleLabel,
    pub premises: Vec<Proof>,
}

impl Proof {
    pub fn new(conclusion: Sequent, rule: RuleLabel, premises: Vec<Proof>) -> Proof {
        Proof {
            conclusion,
            rule,
            premises,
        }
    }

    pub fn leaf(conclusion: Sequent, rule: RuleLabel) -> Proof {
        Proof::new(conclusion, rule, Vec::new())
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Proof::height).max().unwrap_or(0)
    }

    /// Number of nodes carrying `rule`.
    pub fn count(&self, rule: RuleLabel) -> usize {
        usize::from(self.rule == rule) + self.premises.iter().map(|p| p.count(rule)).sum::<usize>()
    }

    pub fn contains(&self, rule: RuleLabel) -> bool {
        self.rule == rule || self.premises.iter().any(|p| p.contains(rule))
    }

    pub fn is_cut_free(&self) -> bool {
        !self.contains(RuleLabel::Cut)
    }

    /// Indented text, conclusion first, one node per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        for _ in 0..depth {
            out.push_str("  ");
        }
        out.push_str(&format!("{}    [{}]\n", self.conclusion, self.rule));
        for p in &self.premises {
            p.write_text(out, depth + 1);
        }
    }

    /// A `bussproofs` prooftree environment.
    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{prooftree}\n");
        self.write_latex(&mut out);
        out.push_str("\\end{prooftree}\n");
        out
    }

    fn write_latex(&self, out: &mut String) {
        for p in &self.premises {
            p.write_latex(out);
        }
        if self.premises.is_empty() {
            out.push_str("\\AxiomC{}\n");
        }
        let inf = match self.premises.len() {
            0 | 1 => "UnaryInfC",
            2 => "BinaryInfC",
            3 => "TrinaryInfC",
            4 => "QuaternaryInfC",
            _ => "QuinaryInfC",
        };
        out.push_str(&format!(
            "\\RightLabel{{\\scriptsize{{{}}}}}\n\\{inf}{{${}$}}\n",
            self.rule.latex(),
            self.conclusion.to_latex()
        ));
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sequent": self.conclusion.to_string(),
            "rule": self.rule.name(),
            "premises": self.premises.iter().map(Proof::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Proof, String> {
        let obj = value.as_object().ok_or("proof node must be an object")?;
        let text = obj
            .get("sequent")
            .and_then(Value::as_str)
            .ok_or("proof node lacks a \"sequent\" string")?;
        let conclusion = parse_sequent_with_mapped(text).map_err(|e| format!("in '{text}': {e}"))?;
        let name = obj
            .get("rule")
            .and_then(Value::as_str)
            .ok_or("proof node lacks a \"rule\" string")?;
        let rule = RuleLabel::from_name(name).ok_or_else(|| format!("unknown rule '{name}'"))?;
        let premises = match obj.get("premises") {
            None => Vec::new(),
            Some(Value::Array(items)) => items
                .iter()
                .map(Proof::from_json)
                .collect::<Result<_, _>>()?,
            Some(_) => return Err("\"premises\" must be an array".into()),
        };
        Ok(Proof::new(conclusion, rule, premises))
    }
}

impl fmt::Debug for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
