//! Greedy shrinking of failing perturbation trials.

use crate::linalg::{GaussianRational, Matrix};
use crate::pencil::{CanonicalSpec, OperatorPencil};
use crate::Result;

use super::{apply_perturbation, PerturbationSpec};

/// A base pencil `(S E0 T, S A0 T)` together with a rank-one perturbation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationCase {
    pub e0: Matrix,
    pub a0: Matrix,
    pub s: Matrix,
    pub t: Matrix,
    pub perturbation: PerturbationSpec,
}

impl PerturbationCase {
    pub fn from_canonical(
        spec: &CanonicalSpec,
        s: Matrix,
        t: Matrix,
        perturbation: PerturbationSpec,
    ) -> Self {
        let p = OperatorPencil::from_canonical(spec);
        Self {
            e0: p.e().clone(),
            a0: p.a().clone(),
            s,
            t,
            perturbation,
        }
    }

    pub fn from_pencil(p: &OperatorPencil, perturbation: PerturbationSpec) -> Self {
        let n = p.n();
        Self {
            e0: p.e().clone(),
            a0: p.a().clone(),
            s: Matrix::identity(n),
            t: Matrix::identity(n),
            perturbation,
        }
    }

    pub fn n(&self) -> usize {
        self.e0.rows()
    }

    pub fn base(&self) -> Result<OperatorPencil> {
        OperatorPencil::new(self.e0.clone(), self.a0.clone())?.apply_equivalence(&self.s, &self.t)
    }

    pub fn perturbed(&self) -> Result<OperatorPencil> {
        apply_perturbation(&self.base()?, &self.perturbation)
    }

    fn without_index(&self, i: usize) -> Self {
        let keep: Vec<usize> = (0..self.n()).filter(|&j| j != i).collect();
        let cut = |m: &Matrix| m.submatrix(&keep, &keep);
        let mut perturbation = self.perturbation.clone();
        for v in perturbation.vectors_mut() {
            v.remove(i);
        }
        Self {
            e0: cut(&self.e0),
            a0: cut(&self.a0),
            s: cut(&self.s),
            t: cut(&self.t),
            perturbation,
        }
    }

    /// Candidate simplifications, each strictly smaller in (dimension,
    /// nonzero count).
    fn candidates(&self) -> Vec<Self> {
        let n = self.n();
        let mut out = Vec::new();
        if n > 1 {
            out.extend((0..n).map(|i| self.without_index(i)));
        }
        for which in 0..3 {
            for j in 0..n {
                if !self.perturbation.vectors()[which][j].is_zero() {
                    let mut c = self.clone();
                    c.perturbation.vectors_mut()[which][j] = GaussianRational::zero();
                    out.push(c);
                }
            }
        }
        let identity = Matrix::identity(n);
        for which in 0..2 {
            let m = if which == 0 { &self.s } else { &self.t };
            if *m == identity {
                continue;
            }
            let mut c = self.clone();
            *(if which == 0 { &mut c.s } else { &mut c.t }) = identity.clone();
            out.push(c);
            for i in 0..n {
                for j in 0..n {
                    if i != j && !m[(i, j)].is_zero() {
                        let mut c = self.clone();
                        (if which == 0 { &mut c.s } else { &mut c.t })[(i, j)] =
                            GaussianRational::zero();
                        out.push(c);
                    }
                }
            }
        }
        for which in 0..2 {
            let m = if which == 0 { &self.e0 } else { &self.a0 };
            for i in 0..n {
                for j in 0..n {
                    if !m[(i, j)].is_zero() {
                        let mut c = self.clone();
                        (if which == 0 { &mut c.e0 } else { &mut c.a0 })[(i, j)] =
                            GaussianRational::zero();
                        out.push(c);
                    }
                }
            }
        }
        out
    }
}

/// Repeatedly applies the first simplification that keeps `fails` true.
pub fn shrink_case(case: &PerturbationCase, fails: impl Fn(&PerturbationCase) -> bool) -> PerturbationCase {
    const MAX_STEPS: usize = 500;
    let mut current = case.clone();
    for _ in 0..MAX_STEPS {
        match current.candidates().into_iter().find(|c| fails(c)) {
            Some(next) => current = next,
            None => break,
        }
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_perturbation, random_regular_pencil, trial_rng};
    use crate::perturb::PerturbationKind;

    #[test]
    fn shrinks_to_minimal_failing_case() {
        let mut rng = trial_rng(3, 0);
        let (spec, s, t, _) = random_regular_pencil(&mut rng, 5, 2);
        let n = spec.dim();
        let mut pert = random_perturbation(&mut rng, PerturbationKind::TypeU, n, 3);
        pert.vectors_mut()[0][0] = GaussianRational::from_int(2);
        let case = PerturbationCase::from_canonical(&spec, s, t, pert);
        // synthetic failure: the first entry of u is nonzero
        let fails = |c: &PerturbationCase| !c.perturbation.vectors()[0][0].is_zero();
        let small = shrink_case(&case, fails);
        assert!(fails(&small));
        assert_eq!(small.n(), 1);
        assert!(small.e0.is_zero() && small.a0.is_zero());
        assert_eq!(small.perturbation.vectors()[1][0], GaussianRational::zero());
        assert_eq!(small.perturbation.vectors()[2][0], GaussianRational::zero());
    }

    #[test]
    fn passing_case_is_left_alone() {
        let spec: CanonicalSpec = "2@1".parse().unwrap();
        let pert = PerturbationSpec::TypeV {
            u: vec![GaussianRational::one(); 2],
            w: vec![GaussianRational::one(); 2],
            v_func: vec![GaussianRational::one(); 2],
        };
        let case = PerturbationCase::from_canonical(&spec, Matrix::identity(2), Matrix::identity(2), pert);
        assert_eq!(shrink_case(&case, |_| false), case);
        assert!(case.base().unwrap().is_regular());
    }
}
