use std::fmt;

use mastercount::Error;

/// Command failure, carrying its exit code.
#[derive(Debug)]
pub enum Fail {
    /// Bad input or a point outside the domain (exit 2).
    Domain(Error),
    /// Parse error in a user-supplied expression, shown with a caret (exit 2).
    Parse {
        input: String,
        pos: usize,
        msg: String,
    },
    /// A numeric check did not meet its tolerance (exit 1).
    Verification(String),
    /// A computed result contradicts what the paper states (exit 3).
    Contradiction(String),
}

impl Fail {
    pub fn code(&self) -> u8 {
        match self {
            Fail::Verification(_) => 1,
            Fail::Domain(_) | Fail::Parse { .. } => 2,
            Fail::Contradiction(_) => 3,
        }
    }

    /// Attaches the source text to a parse error.
    pub fn in_input(input: &str) -> impl Fn(Error) -> Fail + '_ {
        move |e| match e {
            Error::Parse { pos, msg } => Fail::Parse {
                input: input.to_string(),
                pos,
                msg,
            },
            other => Fail::from(other),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::RelationCountMismatch(_) | Error::IbpInconsistency(_) => {
                Fail::Contradiction(e.to_string())
            }
            other => Fail::Domain(other),
        }
    }
}

impl fmt::Display for Fail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fail::Domain(e) => write!(f, "error: {e}"),
            Fail::Parse { input, pos, msg } => {
                let col = input.get(..*pos).map_or(*pos, |s| s.chars().count());
                writeln!(f, "error: parse error: {msg}")?;
                writeln!(f, "  {input}")?;
                write!(f, "  {}^", " ".repeat(col))
            }
            Fail::Verification(m) => write!(f, "verification failed: {m}"),
            Fail::Contradiction(m) => write!(f, "contradiction: {m}"),
        }
    }
}

pub type CmdResult = Result<(), Fail>;
