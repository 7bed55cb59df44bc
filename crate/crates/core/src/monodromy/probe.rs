//! The fiber of lines through the marked point of an X₀ degeneration.

use serde::{Deserialize, Serialize};

use super::MonodromyError;
use crate::fermat::MarkedCubic;
use crate::geometry::{line_type, LineType};
use crate::numeric::cubic::CubicForm;
use crate::numeric::lines::{solve_lines_through_exact_point, FiberOptions};
use crate::numeric::newton::Multiplicity;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberLine {
    pub multiplicity: usize,
    pub line_type: LineType,
    /// Typed exactly after promotion to Q(ω) coordinates.
    pub exact: bool,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberReport {
    pub provenance: String,
    pub distinct: usize,
    pub total: usize,
    pub second_type: usize,
    pub first_type: usize,
    pub lines: Vec<FiberLine>,
}

impl FiberReport {
    /// For each second-type line, the numbers of further (distinct) second-
    /// and first-type lines in the fiber.
    pub fn residual_types(&self) -> Vec<(usize, usize)> {
        self.lines
            .iter()
            .enumerate()
            .filter(|(_, l)| l.line_type == LineType::Second)
            .map(|(i, _)| {
                let others = self.lines.iter().enumerate().filter(|(j, _)| *j != i);
                let (s, f): (Vec<_>, Vec<_>) = others.map(|(_, l)| l).partition(|l| l.line_type == LineType::Second);
                (s.len(), f.len())
            })
            .collect()
    }
}

/// Solves for the lines through the marked point and types each one,
/// exactly when it can be promoted, else by the numeric rank test.
pub fn marked_fiber(m: &MarkedCubic, seed: u64) -> Result<FiberReport, MonodromyError> {
    let sols = solve_lines_through_exact_point(&m.form, &m.marked_point, seed, &FiberOptions::default())?;
    let fc = CubicForm::from_poly(&m.form);
    let mut lines = Vec::with_capacity(sols.len());
    for s in &sols {
        let multiplicity = match s.multiplicity {
            Multiplicity::Simple => 1,
            Multiplicity::Cluster(k) => k,
        };
        let (line_type, exact) = match &s.exact {
            Some(l) => (line_type(&m.form, l).map_err(|e| MonodromyError::Fermat(e.into()))?, true),
            None => (s.line.numeric_type(&fc)?, false),
        };
        lines.push(FiberLine { multiplicity, line_type, exact, residual: s.residual });
    }
    Ok(FiberReport {
        provenance: m.provenance.clone(),
        distinct: lines.len(),
        total: lines.iter().map(|l| l.multiplicity).sum(),
        second_type: lines.iter().filter(|l| l.line_type == LineType::Second).count(),
        first_type: lines.iter().filter(|l| l.line_type == LineType::First).count(),
        lines,
    })
}

/// The fiber over the marked point of a construction with two tangencies,
/// which must consist of four distinct lines.
pub fn ram3fold_probe(m: &MarkedCubic) -> Result<FiberReport, MonodromyError> {
    let r = marked_fiber(m, 0)?;
    if r.distinct != 4 {
        return Err(MonodromyError::UnexpectedFiber { expected: 4, found: r.distinct });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::x0::node_example;

    #[test]
    fn two_tangencies_give_two_second_and_two_first() {
        let r = ram3fold_probe(&node_example(2).unwrap()).unwrap();
        assert_eq!((r.second_type, r.first_type), (2, 2));
        assert_eq!(r.total, 6);
        for l in &r.lines {
            assert_eq!(l.multiplicity == 2, l.line_type == LineType::Second);
        }
        // seen from either second-type line: one further second, two first
        assert_eq!(r.residual_types(), vec![(1, 2), (1, 2)]);
    }

    #[test]
    fn one_tangency_gives_a_single_doubled_line() {
        let m = node_example(1).unwrap();
        let r = marked_fiber(&m, 0).unwrap();
        assert_eq!(r.distinct, 5);
        assert_eq!(r.lines.iter().filter(|l| l.multiplicity == 2).count(), 1);
        assert_eq!((r.second_type, r.first_type), (1, 4));
        assert_eq!(ram3fold_probe(&m).unwrap_err(), MonodromyError::UnexpectedFiber { expected: 4, found: 5 });
    }

    #[test]
    fn no_tangency_gives_six_first_type_lines() {
        let r = marked_fiber(&node_example(0).unwrap(), 0).unwrap();
        assert_eq!((r.distinct, r.first_type), (6, 6));
        assert!(r.lines.iter().all(|l| l.exact));
    }
}
