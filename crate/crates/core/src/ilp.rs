//! Integer feasibility over finite boxes by depth-first branching with
//! interval propagation.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    /// Sparse coefficients `(variable, coefficient)`.
    pub coeffs: Vec<(usize, i64)>,
    pub rhs: i64,
}

impl Row {
    pub fn new(coeffs: Vec<(usize, i64)>, rhs: i64) -> Self {
        Row { coeffs, rhs }
    }

    fn activity(&self, z: &[i64]) -> i64 {
        self.coeffs.iter().map(|&(j, a)| a * z[j]).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntegerProgram {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    /// Rows `a·z = b`.
    pub equalities: Vec<Row>,
    /// Rows `a·z <= b`.
    pub inequalities: Vec<Row>,
}

impl IntegerProgram {
    pub fn new() -> Self {
        IntegerProgram::default()
    }

    pub fn add_variable(&mut self, lower: i64, upper: i64) -> usize {
        self.lower.push(lower);
        self.upper.push(upper);
        self.lower.len() - 1
    }

    pub fn variables(&self) -> usize {
        self.lower.len()
    }

    pub fn is_satisfied_by(&self, z: &[i64]) -> bool {
        z.len() == self.variables()
            && z
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| lo <= v && v <= hi)
            && self.equalities.iter().all(|r| r.activity(z) == r.rhs)
            && self.inequalities.iter().all(|r| r.activity(z) <= r.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<i64>),
    Infeasible,
}

/// Finds the first feasible point in lexicographic order of the variables.
pub fn solve_feasibility(prog: &IntegerProgram) -> Feasibility {
    let p = prog.variables();
    // rows touching each variable, for propagation
    let mut touching = vec![Vec::new(); p];
    let rows: Vec<(&Row, bool)> = prog
        .equalities
        .iter()
        .map(|r| (r, true))
        .chain(prog.inequalities.iter().map(|r| (r, false)))
        .collect();
    for (k, (r, _)) in rows.iter().enumerate() {
        for &(j, _) in &r.coeffs {
            touching[j].push(k);
        }
    }
    let mut lo = prog.lower.clone();
    let mut hi = prog.upper.clone();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Feasibility::Infeasible;
    }
    let search = Search { rows, touching };
    if search.branch(0, &mut lo, &mut hi) {
        debug_assert!(prog.is_satisfied_by(&lo));
        Feasibility::Feasible(lo)
    } else {
        Feasibility::Infeasible
    }
}

struct Search<'a> {
    rows: Vec<(&'a Row, bool)>,
    touching: Vec<Vec<usize>>,
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

impl Search<'_> {
    /// Tightens the box to a fixpoint; false when some row cannot be met.
    fn propagate(&self, lo: &mut [i64], hi: &mut [i64], seed: Option<usize>) -> bool {
        let mut pending: Vec<usize> = match seed {
            Some(j) => self.touching[j].clone(),
            None => (0..self.rows.len()).collect(),
        };
        let mut queued = vec![false; self.rows.len()];
        for &k in &pending {
            queued[k] = true;
        }
        while let Some(k) = pending.pop() {
            queued[k] = false;
            let (row, is_eq) = self.rows[k];
            let (mut min_act, mut max_act) = (0i64, 0i64);
            for &(j, a) in &row.coeffs {
                if a > 0 {
                    min_act += a * lo[j];
                    max_act += a * hi[j];
                } else {
                    min_act += a * hi[j];
                    max_act += a * lo[j];
                }
            }
            if min_act > row.rhs || (is_eq && max_act < row.rhs) {
                return false;
            }
            for &(j, a) in &row.coeffs {
                if a == 0 {
                    continue;
                }
                let own_min = if a > 0 { a * lo[j] } else { a * hi[j] };
                let own_max = if a > 0 { a * hi[j] } else { a * lo[j] };
                // a*z_j <= rhs - (min_act - own_min)
                let cap = row.rhs - (min_act - own_min);
                let (mut nlo, mut nhi) = (lo[j], hi[j]);
                if a > 0 {
                    nhi = nhi.min(div_floor(cap, a));
                } else {
                    nlo = nlo.max(div_ceil(cap, a));
                }
                if is_eq {
                    // a*z_j >= rhs - (max_act - own_max)
                    let floor = row.rhs - (max_act - own_max);
                    if a > 0 {
                        nlo = nlo.max(div_ceil(floor, a));
                    } else {
                        nhi = nhi.min(div_floor(floor, a));
                    }
                }
                if nlo > nhi {
                    return false;
                }
                if (nlo, nhi) != (lo[j], hi[j]) {
                    lo[j] = nlo;
                    hi[j] = nhi;
                    for &r in &self.touching[j] {
                        if !queued[r] {
                            queued[r] = true;
                            pending.push(r);
                        }
                    }
                    // activities changed; recompute this row later
                    if !queued[k] {
                        queued[k] = true;
                        pending.push(k);
                    }
                    break;
                }
            }
        }
        true
    }

    fn branch(&self, from: usize, lo: &mut Vec<i64>, hi: &mut Vec<i64>) -> bool {
        if from == 0 && !self.propagate(lo, hi, None) {
            return false;
        }
        let Some(j) = (from..lo.len()).find(|&j| lo[j] < hi[j]) else {
            return true;
        };
        for value in lo[j]..=hi[j] {
            let (mut l2, mut h2) = (lo.clone(), hi.clone());
            l2[j] = value;
            h2[j] = value;
            if self.propagate(&mut l2, &mut h2, Some(j)) && self.branch(j + 1, &mut l2, &mut h2) {
                *lo = l2;
                *hi = h2;
                return true;
            }
        }
        false
    }
}
