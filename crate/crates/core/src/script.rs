//! Line-oriented scripts driving a single current order.
//!
//! ```text
//! vars x y
//! init positive(x)          # or: init flat | init classes [x y ; x -y, -x]
//! nat x > y                 # nat | dow | unc | lex, bare formula = true > f
//! show                      # show json
//! diff-from-init
//! entails true > y
//! check CR5 nat x > y
//! context x > y
//! ```
//!
//! Statements end at a newline or at a `;` outside brackets; `#` starts a
//! comment. Query commands produce one output block each. A script with no
//! queries prints its final order.

use serde::Serialize;
use serde_json::json;

use crate::analysis::{self, Postulate};
use crate::error::{Error, Result};
use crate::logic::{parse_conditional, parse_formula, Alphabet, Conditional};
use crate::preorder::Order;
use crate::revision::{self, OperatorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn render_order(order: &Order, format: Format) -> String {
    match format {
        Format::Text => order.render_text(),
        Format::Json => format!("{}\n", order.to_json()),
    }
}

/// Splits the source into `(line, statement)` pairs.
fn statements(source: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    for (k, line) in source.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in line.char_indices() {
            match ch {
                '[' | '(' => depth += 1,
                ']' | ')' => depth -= 1,
                ';' if depth == 0 => {
                    out.push((k + 1, line[start..i].trim()));
                    start = i + 1;
                }
                _ => {}
            }
        }
        out.push((k + 1, line[start..].trim()));
    }
    out.retain(|(_, s)| !s.is_empty());
    out
}

fn split_word(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], s[i..].trim()),
        None => (s, ""),
    }
}

fn script_error(msg: impl Into<String>) -> Error {
    Error::syntax(0, msg)
}

#[derive(Serialize)]
struct Entry {
    line: usize,
    command: String,
    result: serde_json::Value,
}

struct Machine {
    alphabet: Option<Alphabet>,
    init: Option<Order>,
    current: Option<Order>,
    format: Format,
    text: Vec<String>,
    json: Vec<Entry>,
}

impl Machine {
    fn alphabet(&self) -> Result<&Alphabet> {
        self.alphabet
            .as_ref()
            .ok_or_else(|| script_error("no alphabet declared; start with `vars`"))
    }

    fn current(&self) -> Result<&Order> {
        self.current.as_ref().ok_or_else(|| script_error("no alphabet declared; start with `vars`"))
    }

    fn conditional(&self, text: &str) -> Result<Conditional> {
        if text.is_empty() {
            return Err(script_error("missing conditional"));
        }
        parse_conditional(text, self.alphabet()?)
    }

    fn emit(&mut self, line: usize, command: &str, text: String, value: serde_json::Value) {
        self.text.push(text);
        self.json.push(Entry {
            line,
            command: command.to_string(),
            result: value,
        });
    }

    fn exec(&mut self, line: usize, stmt: &str) -> Result<()> {
        let (head, rest) = split_word(stmt);
        match head {
            "vars" => {
                if self.alphabet.is_some() {
                    return Err(script_error("alphabet already declared"));
                }
                let alphabet = Alphabet::new(rest.split_whitespace())?;
                let flat = Order::flat(&alphabet);
                self.init = Some(flat.clone());
                self.current = Some(flat);
                self.alphabet = Some(alphabet);
            }
            "init" => {
                let alphabet = self.alphabet()?.clone();
                let order = parse_init(&alphabet, rest)?;
                self.init = Some(order.clone());
                self.current = Some(order);
            }
            "show" => {
                let order = self.current()?.clone();
                let format = match rest {
                    "" => self.format,
                    "json" => Format::Json,
                    other => return Err(script_error(format!("unknown show format `{other}`"))),
                };
                let text = render_order(&order, format);
                self.emit(line, "show", text, serde_json::to_value(order.to_json_value()).expect("json"));
            }
            "diff-from-init" => {
                let current = self.current()?;
                let init = self.init.as_ref().expect("set with alphabet");
                let alphabet = self.alphabet()?;
                let mut pairs = analysis::diff(init, current)?.render(alphabet);
                let key = |s: &str| {
                    crate::logic::parse_term(s, alphabet)
                        .ok()
                        .and_then(|t| t.iter().next())
                        .expect("rendered model parses")
                };
                pairs.sort_by(|a, b| {
                    alphabet
                        .display_cmp(key(&a.0), key(&b.0))
                        .then(alphabet.display_cmp(key(&a.1), key(&b.1)))
                });
                let text = if pairs.is_empty() {
                    "no difference\n".to_string()
                } else {
                    pairs.iter().map(|(i, j)| format!("{i} <= {j}\n")).collect()
                };
                self.emit(line, "diff-from-init", text, json!(pairs));
            }
            "entails" => {
                let c = self.conditional(rest)?;
                let holds = self.current()?.satisfies(&c.condition(self.alphabet()?)?);
                self.emit(line, "entails", format!("{holds}\n"), json!(holds));
            }
            "check" => {
                let (post, rest) = split_word(rest);
                let (op, rest) = split_word(rest);
                let post: Postulate = post.parse().map_err(script_error)?;
                let op: OperatorKind = op.parse().map_err(script_error)?;
                let c = self.conditional(rest)?.condition(self.alphabet()?)?;
                let verdict = analysis::check_postulate(op, self.current()?, &c, post)?;
                let mut text = format!(
                    "{post} {op}: {}\n",
                    if verdict.holds { "holds" } else { "fails" }
                );
                if let Some(w) = &verdict.witness {
                    text.push_str(&format!("  {}\n", w.note));
                    for cond in &w.conditionals {
                        text.push_str(&format!("  conditional: {cond}\n"));
                    }
                    for o in &w.orders {
                        let classes: Vec<String> = o.classes.iter().map(|c| c.join(", ")).collect();
                        text.push_str(&format!("  order: [{}]\n", classes.join(" | ")));
                    }
                }
                self.emit(line, "check", text, serde_json::to_value(&verdict).expect("json"));
            }
            "context" => {
                let c = self.conditional(rest)?;
                let q = revision::contingent_context(self.current()?, &c)?;
                let q = q.to_string();
                self.emit(line, "context", format!("{q}\n"), json!(q));
            }
            op => {
                let kind: OperatorKind = op
                    .parse()
                    .map_err(|_| script_error(format!("unknown command `{op}`")))?;
                let c = self.conditional(rest)?;
                let next = revision::revise_conditional(self.current()?, kind, &c)?;
                self.current = Some(next);
            }
        }
        Ok(())
    }
}

fn parse_init(alphabet: &Alphabet, text: &str) -> Result<Order> {
    let spec = text.trim();
    if spec == "flat" {
        return Ok(Order::flat(alphabet));
    }
    if let Some(inner) = spec.strip_prefix("positive") {
        let inner = inner.trim();
        let body = inner
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| script_error("expected positive(<formula>)"))?;
        return Order::positive(alphabet, &parse_formula(body, alphabet)?);
    }
    if let Some(inner) = spec.strip_prefix("classes") {
        let inner = inner.trim();
        let body = inner
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| script_error("expected classes [<term>, ... ; ...]"))?;
        let classes: Vec<Vec<&str>> = body
            .split(';')
            .map(|class| class.split(',').map(str::trim).filter(|t| !t.is_empty()).collect())
            .collect();
        return Order::from_terms(alphabet, &classes);
    }
    Err(script_error(format!("unknown initial order `{spec}`")))
}

/// Runs a script and returns its report.
pub fn run_script(source: &str, format: Format) -> Result<String> {
    let mut m = Machine {
        alphabet: None,
        init: None,
        current: None,
        format,
        text: Vec::new(),
        json: Vec::new(),
    };
    let mut last_line = 0;
    for (line, stmt) in statements(source) {
        m.exec(line, stmt).map_err(|e| e.at_line(line))?;
        last_line = line;
    }
    if m.json.is_empty() {
        if let Some(order) = m.current.clone() {
            m.emit(
                last_line,
                "show",
                render_order(&order, format),
                serde_json::to_value(order.to_json_value()).expect("json"),
            );
        }
    }
    Ok(match format {
        Format::Text => m.text.join("\n"),
        Format::Json => format!("{}\n", serde_json::to_string(&m.json).expect("json")),
    })
}
