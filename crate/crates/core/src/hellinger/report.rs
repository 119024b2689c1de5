use serde::Serialize;

/// Direction of a checked relation between `lhs` and `rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `lhs >= rhs`
    Ge,
    /// `lhs <= rhs`
    Le,
    /// `|lhs - rhs| <= tolerance`
    Eq,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Ge => "ge",
            Relation::Le => "le",
            Relation::Eq => "eq",
        }
    }
}

/// One evaluated inequality instance.
///
/// `margin` is signed so that `holds == (margin >= -tolerance)` for every
/// relation: `lhs - rhs` for `Ge`, `rhs - lhs` for `Le`, and `-|lhs - rhs|`
/// for `Eq`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
    pub tolerance: f64,
}

impl InequalityReport {
    pub fn new(name: impl Into<String>, relation: Relation, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let margin = match relation {
            Relation::Ge => lhs - rhs,
            Relation::Le => rhs - lhs,
            Relation::Eq => -(lhs - rhs).abs(),
        };
        // NaN margins never hold.
        let holds = margin >= -tolerance;
        Self {
            name: name.into(),
            relation,
            lhs,
            rhs,
            margin,
            holds,
            tolerance,
        }
    }

    pub fn at_least(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(name, Relation::Ge, lhs, rhs, tolerance)
    }

    pub fn at_most(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(name, Relation::Le, lhs, rhs, tolerance)
    }

    pub fn equal(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(name, Relation::Eq, lhs, rhs, tolerance)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margins_follow_relation() {
        let ge = InequalityReport::at_least("ge", 1.0, 0.5, 1e-9);
        assert_eq!(ge.margin, 0.5);
        assert!(ge.holds);
        let le = InequalityReport::at_most("le", 1.0, 0.5, 1e-9);
        assert_eq!(le.margin, -0.5);
        assert!(!le.holds);
        let eq = InequalityReport::equal("eq", 1.0, 1.0 + 1e-10, 1e-9);
        assert!(eq.holds);
        assert!(eq.margin <= 0.0);
        assert!(!InequalityReport::equal("eq", 1.0, 1.1, 1e-9).holds);
    }

    #[test]
    fn tolerance_is_inclusive_and_nan_fails() {
        assert!(InequalityReport::at_least("t", 0.0, 1e-9, 1e-9).holds);
        assert!(!InequalityReport::at_least("t", f64::NAN, 0.0, 1e-9).holds);
    }
}
