//! Lifts of the simple reflections to a constructed representation via
//! `exp(e_i) exp(-f_i) exp(e_i)`, giving the sign-group extension of the
//! Weyl group that genuinely acts on modules.

use super::rep::Representation;
use crate::error::Result;
use crate::linalg::QMat;

#[derive(Debug, Clone)]
pub struct TitsLift {
    /// One matrix per simple reflection.
    pub matrices: Vec<QMat>,
    pub inverses: Vec<QMat>,
}

pub fn tits_lift(rep: &Representation) -> Result<TitsLift> {
    let mut matrices = Vec::with_capacity(rep.root_system.rank);
    let mut inverses = Vec::with_capacity(rep.root_system.rank);
    for i in 0..rep.root_system.rank {
        let e = rep.simple_e(i);
        let f = rep.simple_f(i);
        let exp_e = e.exp_nilpotent()?;
        let exp_mf = (-f.clone()).exp_nilpotent()?;
        let s = &(&exp_e * &exp_mf) * &exp_e;
        // Inverse in closed form: exp(-e) exp(f) exp(-e).
        let exp_me = (-e.clone()).exp_nilpotent()?;
        let exp_f = f.exp_nilpotent()?;
        let s_inv = &(&exp_me * &exp_f) * &exp_me;
        matrices.push(s);
        inverses.push(s_inv);
    }
    Ok(TitsLift { matrices, inverses })
}

/// Lift of the reflection in an arbitrary positive root, conjugating a
/// simple lift along a height-reducing word. On the zero weight space this
/// is the honest Weyl group action.
pub fn lifted_reflection(rep: &Representation, lift: &TitsLift, root_idx: usize) -> QMat {
    let word = rep.root_system.reflection_word(root_idx);
    let mid = word.len() / 2;
    // Words are palindromes s_{i1} .. s_{ik} .. s_{i1} around a simple core.
    let core = word[mid];
    let mut m = lift.matrices[core].clone();
    for &i in word[..mid].iter().rev() {
        m = &(&lift.matrices[i] * &m) * &lift.inverses[i];
    }
    m
}
