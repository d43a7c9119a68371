use std::collections::BTreeMap;

use super::expr::{parse_expr_at, EvalError, ExprAst};
use super::ParseError;
use crate::algebra::VarName;
use crate::field::{DiffFieldPresentation, FieldElement};

/// A parsed and validated field description.
#[derive(Debug, Clone)]
pub struct FieldFile {
    /// Generators in declaration order.
    pub generators: Vec<VarName>,
    pub derivations: BTreeMap<VarName, ExprAst>,
    /// Named elements in file order.
    pub named_elements: Vec<(String, ExprAst)>,
    presentation: DiffFieldPresentation,
    values: Vec<FieldElement>,
}

impl FieldFile {
    pub fn presentation(&self) -> &DiffFieldPresentation {
        &self.presentation
    }

    /// The named element `name` as a field element.
    pub fn element(&self, name: &str) -> Option<&FieldElement> {
        self.named_elements.iter().position(|(n, _)| n == name).map(|i| &self.values[i])
    }

    /// Resolves `item` as an expression over the generators and the named
    /// elements; names shadow generators.
    pub fn resolve(&self, item: &str) -> Result<FieldElement, ParseError> {
        let item = item.trim();
        if let Some(e) = self.element(item) {
            return Ok(e.clone());
        }
        let ast = parse_expr(item)?;
        ast.eval_with(&|v| self.element(v.as_str()).cloned().or_else(|| self.presentation.generator(v).ok()))
            .map_err(|e| eval_error(e, 1))
    }
}

use super::parse_expr;

fn evaluate(ast: &ExprAst, field: &DiffFieldPresentation, line: usize) -> Result<FieldElement, ParseError> {
    ast.eval_with(&|v| field.generator(v).ok()).map_err(|e| eval_error(e, line))
}

fn eval_error(e: EvalError, line: usize) -> ParseError {
    match e {
        EvalError::UnknownVariable(name) => ParseError::UnknownVariable { line, name },
        other => ParseError::Invalid { line, message: other.to_string() },
    }
}

/// Splits `rest` (starting at column `col`) at the first `=`, returning the
/// name and the expression with its starting column.
fn name_and_expr(rest: &str, line: usize, col: usize) -> Result<(String, usize, &str, usize), ParseError> {
    let Some(eq) = rest.find('=') else {
        return Err(ParseError::Syntax {
            line,
            col: col + rest.chars().count(),
            token: "end of line".into(),
            message: "expected `= <expression>`".into(),
        });
    };
    let head = &rest[..eq];
    let name = head.trim();
    let name_col = col + head.chars().take_while(|c| c.is_whitespace()).count();
    check_name(name, line, name_col)?;
    let expr_col = col + rest[..eq + 1].chars().count();
    Ok((name.to_string(), name_col, &rest[eq + 1..], expr_col))
}

fn check_name(name: &str, line: usize, col: usize) -> Result<VarName, ParseError> {
    VarName::new(name).map_err(|_| ParseError::Syntax {
        line,
        col,
        token: if name.is_empty() { "nothing".into() } else { format!("`{name}`") },
        message: "expected a name".into(),
    })
}

/// Parses the line-based field description:
///
/// ```text
/// # comment
/// generator x
/// derivation x = 1
/// element a = x^2 + y
/// ```
pub fn parse_field_file(input: &str) -> Result<FieldFile, ParseError> {
    let mut generators: Vec<(VarName, usize)> = Vec::new();
    let mut derivations: Vec<(VarName, ExprAst, usize)> = Vec::new();
    let mut elements: Vec<(String, ExprAst, usize)> = Vec::new();

    for (i, raw) in input.split('\n').enumerate() {
        let line = i + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let content = raw.split('#').next().unwrap_or("");
        let indent = content.chars().take_while(|c| c.is_whitespace()).count();
        let body = content.trim_start();
        if body.trim().is_empty() {
            continue;
        }
        let word_len = body.find(char::is_whitespace).unwrap_or(body.len());
        let (word, rest) = body.split_at(word_len);
        let rest_col = 1 + indent + word.chars().count();
        match word {
            "generator" => {
                let name = rest.trim();
                let col = rest_col + rest.chars().take_while(|c| c.is_whitespace()).count();
                let v = check_name(name, line, col)?;
                if generators.iter().any(|(g, _)| g == &v) {
                    return Err(ParseError::DuplicateGenerator { line, name: name.into() });
                }
                generators.push((v, line));
            }
            "derivation" => {
                let (name, col, expr, expr_col) = name_and_expr(rest, line, rest_col)?;
                let v = check_name(&name, line, col)?;
                let ast = parse_expr_at(expr, line, expr_col)?;
                if derivations.iter().any(|(g, _, _)| g == &v) {
                    return Err(ParseError::DuplicateDerivation { line, name });
                }
                derivations.push((v, ast, line));
            }
            "element" => {
                let (name, _, expr, expr_col) = name_and_expr(rest, line, rest_col)?;
                let ast = parse_expr_at(expr, line, expr_col)?;
                if elements.iter().any(|(n, _, _)| n == &name) {
                    return Err(ParseError::DuplicateElement { line, name });
                }
                elements.push((name, ast, line));
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col: 1 + indent,
                    token: format!("`{other}`"),
                    message: "expected `generator`, `derivation` or `element`".into(),
                })
            }
        }
    }

    for (v, _, line) in &derivations {
        if !generators.iter().any(|(g, _)| g == v) {
            return Err(ParseError::UnknownVariable { line: *line, name: v.to_string() });
        }
    }
    for (g, line) in &generators {
        if !derivations.iter().any(|(v, _, _)| v == g) {
            return Err(ParseError::MissingDerivation { line: *line, name: g.to_string() });
        }
    }
    if generators.is_empty() {
        return Err(ParseError::Invalid { line: 1, message: "no generator declared".into() });
    }

    let names: Vec<VarName> = generators.iter().map(|(g, _)| g.clone()).collect();
    let mut images = Vec::new();
    for (v, ast, line) in &derivations {
        let img = ast.eval_with(&|w| names.contains(w).then(|| FieldElement::var(w.clone()))).map_err(|e| match e {
            EvalError::UnknownVariable(name) => ParseError::UnknownVariable { line: *line, name },
            other => ParseError::Invalid { line: *line, message: other.to_string() },
        })?;
        images.push((v.clone(), img));
    }
    let presentation = DiffFieldPresentation::new(names.clone(), images)
        .map_err(|e| ParseError::Invalid { line: 1, message: e.to_string() })?;
    let values = elements
        .iter()
        .map(|(_, ast, line)| evaluate(ast, &presentation, *line))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(FieldFile {
        generators: names,
        derivations: derivations.into_iter().map(|(v, a, _)| (v, a)).collect(),
        named_elements: elements.into_iter().map(|(n, a, _)| (n, a)).collect(),
        presentation,
        values,
    })
}
