use super::system::Congruence;
use super::AnalysisError;

/// Largest number of assignments any enumeration will visit.
pub const SEARCH_LIMIT: u64 = 1 << 26;

/// Every satisfying assignment, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub assignments: Vec<Vec<u64>>,
}

impl SolutionSet {
    pub fn count(&self) -> usize {
        self.assignments.len()
    }

    pub fn contains(&self, assignment: &[u64]) -> bool {
        self.assignments.iter().any(|a| a == assignment)
    }
}

/// `p^vars`, or an error above [`SEARCH_LIMIT`].
pub fn search_space(p: u64, vars: usize) -> Result<u64, AnalysisError> {
    let size = (0..vars).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&s| s <= SEARCH_LIMIT));
    size.ok_or(AnalysisError::SearchSpaceTooLarge {
        p,
        variables: vars,
        limit: SEARCH_LIMIT,
    })
}

/// Exhaustive enumeration over `F_p^variables`.
pub fn brute_force_solutions<C: Congruence + ?Sized>(sys: &C) -> Result<SolutionSet, AnalysisError> {
    let p = sys.field().value();
    let vars = sys.variables();
    search_space(p, vars)?;
    let mut assignment = vec![0u64; vars];
    let mut assignments = Vec::new();
    loop {
        if sys.is_satisfied(&assignment) {
            assignments.push(assignment.clone());
        }
        // odometer, last coordinate fastest
        let mut i = vars;
        loop {
            if i == 0 {
                return Ok(SolutionSet { assignments });
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < p {
                break;
            }
            assignment[i] = 0;
        }
    }
}
