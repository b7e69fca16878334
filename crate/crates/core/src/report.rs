//! One-line-per-axiom verification reports.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomLine {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl AxiomLine {
    pub fn pass(name: &str) -> Self {
        Self { name: name.into(), pass: true, witness: None }
    }

    pub fn fail(name: &str, witness: String) -> Self {
        Self { name: name.into(), pass: false, witness: Some(witness) }
    }

    /// Pass when `failure` is `None`, otherwise fail with it as witness.
    pub fn from_failure(name: &str, failure: Option<String>) -> Self {
        match failure {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }
}

impl fmt::Display for AxiomLine {
    /// `AXIOM <name> PASS|FAIL [witness]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "AXIOM {} {}", self.name, verdict)?;
        if let Some(w) = &self.witness {
            write!(f, " {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<AxiomLine>,
}

impl Report {
    pub fn push(&mut self, line: AxiomLine) {
        self.lines.push(line);
    }

    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn line(&self, name: &str) -> Option<&AxiomLine> {
        self.lines.iter().find(|l| l.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format() {
        assert_eq!(AxiomLine::pass("flatness").to_string(), "AXIOM flatness PASS");
        assert_eq!(AxiomLine::fail("flatness", "[(1;1) (3;1)]".into()).to_string(), "AXIOM flatness FAIL [(1;1) (3;1)]");
    }
}
