//! Abstract fact trees: authored templates of objects and attribute slots.
//!
//! ```text
//! # comment
//! node <name> noun|verb <constraint> [mention=<Nonterminal>] [clause=<Nonterminal>]
//!   <attribute> <role> <constraint> [pick=<n>]
//! ```
//!
//! Constraints are `literal(a, b, ...)`, `category(<frequency category>)`,
//! `paired(<pair category>)` (a modifier drawn for the node's own head),
//! `paired(<pair category>; head, head, ...)` (modifier + head noun phrases)
//! and `ref(<node>)`.
//!
//! Roles and the facts they produce (H is the node head):
//!
//! | role                       | node | fact                               |
//! |----------------------------|------|------------------------------------|
//! | `noun-modifier`            | noun | NounModifier(value, H)             |
//! | `phrase-noun(<prep>)`      | noun | PhraseModifierNoun(prep value, H)  |
//! | `clause-noun`              | noun | ClauseModifierNoun(value, H)       |
//! | `svo(<verb>)`              | noun | SubjectVerbObject(H, verb, value)  |
//! | `subject`, `object`        | verb | SubjectVerbObject(subject, H, object or ∅) |
//! | `verb-modifier`            | verb | VerbModifier(value, H)             |
//! | `phrase-verb(<prep>)`      | verb | PhraseModifierVerb(prep value, H)  |
//! | `clause-verb`              | verb | ClauseModifierVerb(value, H)       |
//! | `complement`               | verb | MainSubordinateClause((S, H), (S', H')) |

use std::fmt;

use crate::error::FormatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Noun,
    Verb,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    Literal(Vec<String>),
    Category(String),
    Paired { category: String, heads: Vec<String> },
    Ref(String),
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Literal(v) => write!(f, "literal({})", v.join(", ")),
            Constraint::Category(c) => write!(f, "category({c})"),
            Constraint::Paired { category, heads } if heads.is_empty() => write!(f, "paired({category})"),
            Constraint::Paired { category, heads } => write!(f, "paired({category}; {})", heads.join(", ")),
            Constraint::Ref(n) => write!(f, "ref({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Role {
    NounModifier,
    PhraseNoun(String),
    ClauseNoun,
    Svo(String),
    Subject,
    Object,
    Complement,
    VerbModifier,
    PhraseVerb(String),
    ClauseVerb,
}

impl Role {
    fn parse(s: &str) -> Option<Role> {
        let (name, arg) = match s.split_once('(') {
            Some((n, rest)) => (n, Some(rest.strip_suffix(')')?.trim().to_string())),
            None => (s, None),
        };
        Some(match (name, arg) {
            ("noun-modifier", None) => Role::NounModifier,
            ("phrase-noun", Some(p)) if !p.is_empty() => Role::PhraseNoun(p),
            ("clause-noun", None) => Role::ClauseNoun,
            ("svo", Some(v)) if !v.is_empty() => Role::Svo(v),
            ("subject", None) => Role::Subject,
            ("object", None) => Role::Object,
            ("complement", None) => Role::Complement,
            ("verb-modifier", None) => Role::VerbModifier,
            ("phrase-verb", Some(p)) if !p.is_empty() => Role::PhraseVerb(p),
            ("clause-verb", None) => Role::ClauseVerb,
            _ => return None,
        })
    }

    fn allowed_on(&self, kind: NodeKind) -> bool {
        match self {
            Role::NounModifier | Role::PhraseNoun(_) | Role::ClauseNoun | Role::Svo(_) => kind == NodeKind::Noun,
            _ => kind == NodeKind::Verb,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub name: String,
    pub role: Role,
    pub constraint: Constraint,
    pub pick: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactNode {
    pub name: String,
    pub kind: NodeKind,
    pub head: Constraint,
    /// Grammar nonterminal rendering a mention of this (noun) object. The
    /// generator expands `<mention>_first` on the first mention and
    /// `<mention>_ref` afterwards.
    pub mention: Option<String>,
    /// Grammar nonterminal rendering this node as a top-level clause.
    pub clause: Option<String>,
    pub attributes: Vec<Attribute>,
}

impl FactNode {
    pub fn attribute(&self, name: &str) -> Option<&Attribute> {
        self.attributes.iter().find(|a| a.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbstractFactTree {
    pub nodes: Vec<FactNode>,
}

impl AbstractFactTree {
    pub fn node(&self, name: &str) -> Option<&FactNode> {
        self.nodes.iter().find(|n| n.name == name)
    }

    /// Nodes that have a clause nonterminal, in tree order.
    pub fn clause_nodes(&self) -> impl Iterator<Item = &FactNode> {
        self.nodes.iter().filter(|n| n.clause.is_some())
    }

    /// Parses the tree format and checks names, roles and references.
    pub fn parse(text: &str) -> Result<AbstractFactTree, FormatError> {
        let mut nodes: Vec<FactNode> = Vec::new();
        let mut lines_of: Vec<usize> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |m: String| FormatError::new("fact tree", line_no, m);
            let line = raw.split('#').next().unwrap_or("").trim_end();
            if line.trim().is_empty() {
                continue;
            }
            let indented = line.starts_with(char::is_whitespace);
            let fields = split_fields(line.trim()).map_err(err)?;
            if !indented {
                if fields.len() < 4 || fields[0] != "node" {
                    return Err(err("expected `node <name> noun|verb <constraint> [options]`".into()));
                }
                let kind = match fields[2].as_str() {
                    "noun" => NodeKind::Noun,
                    "verb" => NodeKind::Verb,
                    other => return Err(err(format!("node kind must be noun or verb, found `{other}`"))),
                };
                let head = parse_constraint(&fields[3]).map_err(err)?;
                if matches!(head, Constraint::Ref(_) | Constraint::Paired { .. }) {
                    return Err(err("a node head must be a literal set or a category".into()));
                }
                let mut node = FactNode {
                    name: fields[1].clone(),
                    kind,
                    head,
                    mention: None,
                    clause: None,
                    attributes: Vec::new(),
                };
                for opt in &fields[4..] {
                    match opt.split_once('=') {
                        Some(("mention", v)) if kind == NodeKind::Noun => node.mention = Some(v.to_string()),
                        Some(("clause", v)) => node.clause = Some(v.to_string()),
                        _ => return Err(err(format!("unknown node option `{opt}`"))),
                    }
                }
                if nodes.iter().any(|n| n.name == node.name) {
                    return Err(err(format!("duplicate node name `{}`", node.name)));
                }
                nodes.push(node);
                lines_of.push(line_no);
            } else {
                let node = nodes.last_mut().ok_or_else(|| err("attribute before any node".into()))?;
                if fields.len() < 3 {
                    return Err(err("expected `<attribute> <role> <constraint> [pick=n]`".into()));
                }
                let role = Role::parse(&fields[1]).ok_or_else(|| err(format!("unknown role `{}`", fields[1])))?;
                if !role.allowed_on(node.kind) {
                    return Err(err(format!("role `{}` does not apply to a {:?} node", fields[1], node.kind)));
                }
                let constraint = parse_constraint(&fields[2]).map_err(err)?;
                let mut pick = 1;
                for opt in &fields[3..] {
                    match opt.split_once('=') {
                        Some(("pick", v)) => {
                            pick = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| err(format!("bad pick `{v}`")))?
                        }
                        _ => return Err(err(format!("unknown attribute option `{opt}`"))),
                    }
                }
                if pick > 1 && !matches!(role, Role::Svo(_)) {
                    return Err(err("pick is only supported for svo attributes".into()));
                }
                let name = fields[0].clone();
                if name == "head" || node.attributes.iter().any(|a| a.name == name) {
                    return Err(err(format!("duplicate attribute `{name}` on node `{}`", node.name)));
                }
                node.attributes.push(Attribute { name, role, constraint, pick });
            }
        }
        let tree = AbstractFactTree { nodes };
        tree.check_refs(&lines_of)?;
        Ok(tree)
    }

    fn check_refs(&self, lines_of: &[usize]) -> Result<(), FormatError> {
        for (node, &line) in self.nodes.iter().zip(lines_of) {
            let err = |m: String| FormatError::new("fact tree", line, m);
            let mut has_subject = false;
            for attr in &node.attributes {
                if let Constraint::Ref(target) = &attr.constraint {
                    let t = self.node(target).ok_or_else(|| {
                        err(format!("`{}.{}` refers to unknown node `{target}`", node.name, attr.name))
                    })?;
                    let want = if attr.role == Role::Complement { NodeKind::Verb } else { NodeKind::Noun };
                    if t.kind != want || t.name == node.name {
                        return Err(err(format!("`{}.{}` cannot refer to `{target}`", node.name, attr.name)));
                    }
                } else if matches!(attr.role, Role::Subject | Role::Object | Role::Complement) {
                    return Err(err(format!("`{}.{}` must be a ref(...) constraint", node.name, attr.name)));
                }
                if let Constraint::Paired { heads, .. } = &attr.constraint {
                    if heads.is_empty() && !matches!(attr.role, Role::NounModifier | Role::VerbModifier) {
                        return Err(err(format!("`{}.{}` needs a head list", node.name, attr.name)));
                    }
                }
                has_subject |= attr.role == Role::Subject;
            }
            let count = |r: &Role| node.attributes.iter().filter(|a| &a.role == r).count();
            if count(&Role::Subject) > 1 || count(&Role::Object) > 1 || count(&Role::Complement) > 1 {
                return Err(err(format!("node `{}` has more than one subject, object or complement", node.name)));
            }
            if node.kind == NodeKind::Verb && !has_subject {
                return Err(err(format!("verb node `{}` needs a subject", node.name)));
            }
        }
        Ok(())
    }
}

/// Splits on whitespace outside parentheses.
fn split_fields(line: &str) -> Result<Vec<String>, String> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for c in line.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.checked_sub(1).ok_or("unbalanced `)`")?;
                cur.push(c);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    fields.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err("unbalanced `(`".into());
    }
    if !cur.is_empty() {
        fields.push(cur);
    }
    Ok(fields)
}

fn parse_constraint(s: &str) -> Result<Constraint, String> {
    let (name, body) = s
        .split_once('(')
        .and_then(|(n, rest)| Some((n, rest.strip_suffix(')')?)))
        .ok_or_else(|| format!("expected `kind(...)` constraint, found `{s}`"))?;
    let list = |b: &str| -> Vec<String> {
        b.split(',').map(|v| v.split_whitespace().collect::<Vec<_>>().join(" ")).filter(|v| !v.is_empty()).collect()
    };
    let c = match name {
        "literal" => Constraint::Literal(list(body)),
        "category" => Constraint::Category(body.trim().to_string()),
        "ref" => Constraint::Ref(body.trim().to_string()),
        "paired" => match body.split_once(';') {
            Some((cat, heads)) => Constraint::Paired { category: cat.trim().to_string(), heads: list(heads) },
            None => Constraint::Paired { category: body.trim().to_string(), heads: Vec::new() },
        },
        other => return Err(format!("unknown constraint `{other}`")),
    };
    let empty = match &c {
        Constraint::Literal(v) => v.is_empty(),
        Constraint::Category(x) | Constraint::Ref(x) => x.is_empty(),
        Constraint::Paired { category, .. } => category.is_empty(),
    };
    if empty {
        return Err(format!("empty constraint `{s}`"));
    }
    Ok(c)
}
