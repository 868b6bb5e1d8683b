use thiserror::Error;

use super::PropCnf;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: malformed problem line")]
    BadHeader { line: usize },
    #[error("line {line}: invalid literal `{token}`")]
    BadLiteral { line: usize, token: String },
    #[error("line {line}: literal {lit} exceeds declared variable count {num_vars}")]
    VariableOutOfRange {
        line: usize,
        lit: i32,
        num_vars: usize,
    },
    #[error("missing `p cnf` problem line")]
    MissingHeader,
}

pub(super) fn parse(text: &str) -> Result<PropCnf, DimacsError> {
    let mut num_vars = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            match fields.as_slice() {
                ["p", "cnf", vars, _clauses] => {
                    num_vars = Some(vars.parse().map_err(|_| DimacsError::BadHeader { line })?)
                }
                _ => return Err(DimacsError::BadHeader { line }),
            }
            continue;
        }
        let declared = num_vars.ok_or(DimacsError::MissingHeader)?;
        for token in trimmed.split_whitespace() {
            let lit: i32 = token.parse().map_err(|_| DimacsError::BadLiteral {
                line,
                token: token.to_owned(),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > declared {
                return Err(DimacsError::VariableOutOfRange {
                    line,
                    lit,
                    num_vars: declared,
                });
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let num_vars = num_vars.ok_or(DimacsError::MissingHeader)?;
    Ok(PropCnf::new(num_vars, clauses))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let text = "c example\np cnf 3 2\n1 -2 0\n2 3\n-1 0\n";
        let cnf = parse(text).unwrap();
        assert_eq!(cnf.num_vars, 3);
        assert_eq!(cnf.clauses, vec![vec![1, -2], vec![2, 3, -1]]);
        assert_eq!(parse(&cnf.to_dimacs()).unwrap(), cnf);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse("1 2 0\n"), Err(DimacsError::MissingHeader));
        assert!(matches!(
            parse("p cnf 1 1\n2 0\n"),
            Err(DimacsError::VariableOutOfRange { .. })
        ));
        assert!(matches!(
            parse("p cnf 2 1\n1 x 0\n"),
            Err(DimacsError::BadLiteral { .. })
        ));
    }
}
