//! Lower bounds for relatively free lattices by probe separation.
//!
//! Every term gets a signature: its value under every assignment of the
//! generators in every probe lattice. Terms with different signatures are
//! different in the relatively free lattice of any variety containing the
//! probes, so the number of signatures is a lower bound on its size.

use std::collections::HashMap;

use serde::Serialize;

use super::{check_identity, sd_identity, IdentitySpec, Op, Polarity, Term};
use crate::enumerate::{lattices_up_to, DEFAULT_ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::lattice::Lattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "level")]
pub enum Variety {
    Distributive,
    SdMeet(usize),
    SdJoin(usize),
    /// Both polarities of `SD_n`.
    Sd(usize),
}

impl Variety {
    pub fn identities(self) -> Vec<IdentitySpec> {
        match self {
            Variety::Distributive => {
                let (x, y, z) = (Term::var("x"), Term::var("y"), Term::var("z"));
                vec![IdentitySpec {
                    left: Term::meet(x.clone(), Term::join(y.clone(), z.clone())),
                    right: Term::join(Term::meet(x.clone(), y), Term::meet(x, z)),
                    variables: vec!["x".into(), "y".into(), "z".into()],
                }]
            }
            Variety::SdMeet(n) => vec![sd_identity(n, Polarity::Meet)],
            Variety::SdJoin(n) => vec![sd_identity(n, Polarity::Join)],
            Variety::Sd(n) => vec![sd_identity(n, Polarity::Meet), sd_identity(n, Polarity::Join)],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Exploration {
    /// Separated classes among terms of depth at most `d`, for each `d`.
    pub counts_by_depth: Vec<usize>,
    /// One term per class, in discovery order.
    #[serde(serialize_with = "as_strings")]
    pub representatives: Vec<Term>,
}

fn as_strings<S: serde::Serializer>(terms: &[Term], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(terms.iter().map(ToString::to_string))
}

/// Which probe each signature slot reads from.
struct Layout<'a> {
    slots: Vec<&'a Lattice>,
}

impl Layout<'_> {
    fn combine(&self, op: Op, a: &[u8], b: &[u8]) -> Vec<u8> {
        self.slots
            .iter()
            .zip(a.iter().zip(b))
            .map(|(l, (&x, &y))| op.apply(l, x as usize, y as usize) as u8)
            .collect()
    }
}

/// Every lattice with at most `max_size` elements that satisfies the
/// variety's identities, smallest first.
pub fn variety_corpus(variety: Variety, max_size: usize) -> Result<Vec<Lattice>> {
    let identities = variety.identities();
    let mut out = Vec::new();
    for l in lattices_up_to(max_size, max_size.max(DEFAULT_ENUMERATION_CAP))?.into_iter().flatten() {
        let mut inside = true;
        for spec in &identities {
            inside &= check_identity(&l, spec)?.holds;
        }
        if inside {
            out.push(l);
        }
    }
    Ok(out)
}

/// Explores terms over `generators` variables up to `depth`. Probes are
/// first checked against the variety's defining identities.
pub fn explore_relatively_free(
    variety: Variety,
    generators: usize,
    depth: usize,
    probes: &[Lattice],
) -> Result<Exploration> {
    if generators == 0 || generators > 26 {
        return Err(Error::InvalidArgument(format!("generator count {generators} outside 1..=26")));
    }
    let identities = variety.identities();
    for (i, probe) in probes.iter().enumerate() {
        if probe.len() > u8::MAX as usize + 1 {
            return Err(Error::SizeGuard { size: probe.len(), bound: u8::MAX as usize + 1 });
        }
        for spec in &identities {
            if let Some(assignment) = check_identity(probe, spec)?.witness {
                return Err(Error::ProbeOutsideVariety { probe: i, assignment });
            }
        }
    }

    let mut slots: Vec<&Lattice> = Vec::new();
    let mut generator_rows: Vec<Vec<u8>> = vec![Vec::new(); generators];
    for probe in probes {
        let n = probe.len();
        let count = n.checked_pow(generators as u32).ok_or(Error::CapExceeded { requested: usize::MAX, cap: 1 << 24 })?;
        for code in 0..count {
            slots.push(probe);
            let mut rest = code;
            for row in generator_rows.iter_mut().rev() {
                row.push((rest % n) as u8);
                rest /= n;
            }
        }
    }
    let layout = Layout { slots };

    let names: Vec<String> = (0..generators).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut signatures: Vec<Vec<u8>> = Vec::new();
    let mut representatives: Vec<Term> = Vec::new();
    for (name, row) in names.iter().zip(generator_rows) {
        if !index.contains_key(&row) {
            index.insert(row.clone(), signatures.len());
            signatures.push(row);
            representatives.push(Term::var(name));
        }
    }
    let mut counts_by_depth = vec![signatures.len()];
    let mut frontier_start = 0;
    for _ in 0..depth {
        let known = signatures.len();
        for i in frontier_start..known {
            for j in 0..known {
                if j >= frontier_start && j > i {
                    continue;
                }
                for op in [Op::Join, Op::Meet] {
                    let sig = layout.combine(op, &signatures[i], &signatures[j]);
                    if !index.contains_key(&sig) {
                        index.insert(sig.clone(), signatures.len());
                        signatures.push(sig);
                        let (a, b) = if j < i { (j, i) } else { (i, j) };
                        representatives.push(Term::Op(
                            op,
                            Box::new(representatives[a].clone()),
                            Box::new(representatives[b].clone()),
                        ));
                    }
                }
            }
        }
        frontier_start = known;
        counts_by_depth.push(signatures.len());
    }
    Ok(Exploration { counts_by_depth, representatives })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::chain;
    use crate::fd::free_distributive;
    use crate::fixtures::fixture;
    use crate::iso::isomorphic;

    #[test]
    fn two_element_chain_recovers_fd3() {
        let e = explore_relatively_free(Variety::Distributive, 3, 3, &[chain(2).unwrap()]).unwrap();
        assert_eq!(e.counts_by_depth[0], 3);
        assert_eq!(*e.counts_by_depth.last().unwrap(), 18);
        assert_eq!(e.representatives.len(), 18);

        // The signatures order the classes like FD(3).
        let fd = free_distributive(3).unwrap();
        let c2 = chain(2).unwrap();
        let env = ["a", "b", "c"].map(String::from);
        let values: Vec<Vec<usize>> = e
            .representatives
            .iter()
            .map(|t| {
                (0..8)
                    .map(|code| t.evaluate(&c2, &env, &[code >> 2 & 1, code >> 1 & 1, code & 1]).unwrap())
                    .collect()
            })
            .collect();
        let names = crate::lattice::Lattice::numbered(18);
        let from_terms = Lattice::from_leq(names, |i, j| values[i].iter().zip(&values[j]).all(|(x, y)| x <= y)).unwrap();
        assert!(isomorphic(&from_terms, &fd.lattice));
    }

    #[test]
    fn depth_zero_and_monotonicity() {
        let probes = [fixture("n5").unwrap(), chain(3).unwrap()];
        let e = explore_relatively_free(Variety::SdJoin(2), 3, 3, &probes).unwrap();
        assert_eq!(e.counts_by_depth[0], 3);
        assert!(e.counts_by_depth.windows(2).all(|w| w[0] <= w[1]));
        let fewer = explore_relatively_free(Variety::SdJoin(2), 3, 3, &probes[..1]).unwrap();
        for (a, b) in fewer.counts_by_depth.iter().zip(&e.counts_by_depth) {
            assert!(a <= b);
        }
    }

    #[test]
    fn probes_outside_the_variety_are_rejected() {
        let err = explore_relatively_free(Variety::SdJoin(2), 3, 1, &[chain(2).unwrap(), fixture("m3").unwrap()]);
        assert!(matches!(err, Err(Error::ProbeOutsideVariety { probe: 1, .. })));
        let err = explore_relatively_free(Variety::Distributive, 3, 1, &[fixture("n5").unwrap()]);
        assert!(matches!(err, Err(Error::ProbeOutsideVariety { probe: 0, .. })));
    }
}
