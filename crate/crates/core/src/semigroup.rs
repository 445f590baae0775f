//! Numerical semigroups with arbitrary (possibly non-minimal, possibly gcd > 1)
//! generating lists, membership testing, gaps, and generalized Apéry sets.

use std::collections::BTreeSet;

use num::integer::gcd;
use serde::Serialize;

use crate::error::{Error, Result};

/// Cap on the size of the internal membership table, in entries.
const MAX_TABLE: u64 = 1 << 27;

/// A numerical semigroup `T = <n_1, ..., n_k>`, the set of nonnegative integer
/// combinations of the generators.  The generators are not assumed minimal and
/// their gcd is not assumed to be 1.
///
/// Immutable after construction; cheap to share across threads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    gcd_d: u64,
    /// Smallest `c` such that every multiple of `gcd_d` at or above `c` is a member.
    conductor: u64,
    /// Frobenius number of the primitive semigroup T / gcd_d (-1 for <1>).
    #[serde(skip)]
    frob_prim: i64,
    /// Membership of the primitive semigroup on 0..conductor/gcd_d.
    #[serde(skip)]
    members_prim: Vec<bool>,
}

impl NumericalSemigroup {
    /// Builds a semigroup from a list of positive generators.
    ///
    /// The list is sorted ascending.  Duplicates are rejected rather than
    /// deduplicated: silently dropping one would change the factorization
    /// model without the caller knowing.
    pub fn new(gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        if generators[0] == 0 {
            return Err(Error::ZeroGenerator);
        }
        for w in generators.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateGenerator(w[0]));
            }
        }
        let gcd_d = generators.iter().copied().fold(0, gcd);

        // bounds used downstream (n_k^2, 2k n_2 n_k^2) must stay in range
        let nk = *generators.last().unwrap();
        let n2 = generators.get(1).copied().unwrap_or(nk);
        nk.checked_mul(nk)
            .and_then(|s| s.checked_mul(2 * generators.len() as u64))
            .and_then(|s| s.checked_mul(n2))
            .ok_or(Error::Overflow)?;

        let prim: Vec<u64> = generators.iter().map(|g| g / gcd_d).collect();
        let (frob_prim, members_prim) = primitive_frobenius(&prim)?;
        let conductor = gcd_d * (frob_prim + 1) as u64;

        Ok(NumericalSemigroup {
            generators,
            gcd_d,
            conductor,
            frob_prim,
            members_prim,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn embedding_dim(&self) -> usize {
        self.generators.len()
    }

    pub fn gcd(&self) -> u64 {
        self.gcd_d
    }

    /// Smallest generator n_1.
    pub fn smallest_gen(&self) -> u64 {
        self.generators[0]
    }

    /// Largest generator n_k.
    pub fn largest_gen(&self) -> u64 {
        *self.generators.last().unwrap()
    }

    /// Smallest `c` with `c + gcd * Z>=0` contained in the semigroup.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// True iff `m` is a nonnegative integer combination of the generators.
    pub fn contains(&self, m: u64) -> bool {
        if m % self.gcd_d != 0 {
            return false;
        }
        let s = m / self.gcd_d;
        if s as i64 > self.frob_prim {
            true
        } else {
            self.members_prim[s as usize]
        }
    }

    /// The finite ascending list of nonnegative integers outside the semigroup.
    /// Only defined when the gcd of the generators is 1.
    pub fn gaps(&self) -> Result<Vec<u64>> {
        if self.gcd_d > 1 {
            return Err(Error::InfiniteComplement(self.gcd_d));
        }
        Ok((0..self.conductor).filter(|&m| !self.contains(m)).collect())
    }

    /// Frobenius number `Frob(T) = d (max Ap(S; n_1) - n_1)` where `S = T/d`.
    ///
    /// For gcd 1 this is the classical largest non-member; `<1>` yields -1.
    pub fn frobenius(&self) -> i64 {
        self.gcd_d as i64 * self.frob_prim
    }

    /// First `depth` elements of the semigroup in each residue class mod `n`,
    /// the generalized Apéry sets `Ap_j(T; n)` for `j = 1..=depth`.
    pub fn apery(&self, n: u64, depth: u64) -> AperyTable {
        assert!(n >= 1 && depth >= 1, "apery requires n >= 1 and depth >= 1");
        let g = gcd(self.gcd_d, n);
        let classes = (0..n)
            .map(|i| {
                if i % g != 0 {
                    // no multiple of gcd_d is congruent to i mod n
                    return None;
                }
                let mut found = Vec::with_capacity(depth as usize);
                let mut v = i;
                while (found.len() as u64) < depth {
                    if self.contains(v) {
                        found.push(v);
                    }
                    v += n;
                }
                Some(found)
            })
            .collect();
        AperyTable {
            modulus: n,
            depth,
            classes,
        }
    }
}

/// Per-residue-class table of the first `depth` semigroup elements mod `modulus`.
///
/// A class with no semigroup element at all is stored as `None` (the set view
/// materializes the 0 marker only when asked for).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AperyTable {
    modulus: u64,
    depth: u64,
    classes: Vec<Option<Vec<u64>>>,
}

impl AperyTable {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn depth(&self) -> u64 {
        self.depth
    }

    /// The ascending list for residue class `i`, or `None` when the class is empty.
    pub fn class(&self, i: u64) -> Option<&[u64]> {
        self.classes[i as usize].as_deref()
    }

    /// The j-th element of class `i`.
    pub fn entry(&self, i: u64, j: u64) -> Result<u64> {
        if j > self.depth {
            return Err(Error::DepthExceeded {
                requested: j,
                depth: self.depth,
            });
        }
        match &self.classes[i as usize] {
            Some(list) => Ok(list[(j - 1) as usize]),
            None => Err(Error::AbsentClass(i)),
        }
    }

    /// The set `Ap_j(T; n)`.  For `j = 1`, empty classes contribute 0.
    pub fn set_view(&self, j: u64) -> Result<BTreeSet<u64>> {
        if j > self.depth {
            return Err(Error::DepthExceeded {
                requested: j,
                depth: self.depth,
            });
        }
        let mut out = BTreeSet::new();
        for class in &self.classes {
            match class {
                Some(list) => {
                    out.insert(list[(j - 1) as usize]);
                }
                None if j == 1 => {
                    out.insert(0);
                }
                None => {}
            }
        }
        Ok(out)
    }

    /// First entry of every class, `None` for empty classes.  This is the
    /// shape of the table that determines the periodic functions downstream.
    pub fn first_row(&self) -> Vec<Option<u64>> {
        self.classes
            .iter()
            .map(|c| c.as_ref().map(|l| l[0]))
            .collect()
    }
}

/// Frobenius number and membership table of a gcd-1 semigroup given by `gens`.
///
/// The table is grown until a run of n_1 consecutive members appears, after
/// which every larger value is a member.
fn primitive_frobenius(gens: &[u64]) -> Result<(i64, Vec<bool>)> {
    let n1 = gens[0];
    if n1 == 1 {
        return Ok((-1, Vec::new()));
    }
    let mut cap = 2 * *gens.last().unwrap();
    loop {
        if cap > MAX_TABLE {
            return Err(Error::Overflow);
        }
        let mut reach = vec![false; (cap + 1) as usize];
        reach[0] = true;
        for v in 1..=cap {
            reach[v as usize] = gens
                .iter()
                .take_while(|&&g| g <= v)
                .any(|&g| reach[(v - g) as usize]);
        }
        let run_start = (0..=cap.saturating_sub(n1 - 1))
            .find(|&s| (s..s + n1).all(|v| reach[v as usize]));
        if let Some(s) = run_start {
            let frob = (0..s).rev().find(|&v| !reach[v as usize]);
            let frob = frob.map(|v| v as i64).unwrap_or(-1);
            reach.truncate((frob + 1) as usize);
            return Ok((frob, reach));
        }
        cap *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::new(gens).unwrap()
    }

    #[test]
    fn constructor_validates() {
        assert_eq!(NumericalSemigroup::new(&[]), Err(Error::EmptyGenerators));
        assert_eq!(NumericalSemigroup::new(&[0, 5]), Err(Error::ZeroGenerator));
        assert_eq!(
            NumericalSemigroup::new(&[4, 7, 4]),
            Err(Error::DuplicateGenerator(4))
        );
    }

    #[test]
    fn constructor_sorts_and_computes_gcd() {
        let t = sg(&[12, 5, 9]);
        assert_eq!(t.generators(), &[5, 9, 12]);
        assert_eq!(t.gcd(), 1);
        assert_eq!(sg(&[6, 10]).gcd(), 2);
    }

    #[test]
    fn membership_matches_listed_elements() {
        let t = sg(&[4, 7]);
        let first: Vec<u64> = (0..21).filter(|&m| t.contains(m)).collect();
        assert_eq!(first, vec![0, 4, 7, 8, 11, 12, 14, 15, 16, 18, 19, 20]);
        assert!(!t.contains(17));
        assert!(t.contains(0));
    }

    #[test]
    fn membership_respects_gcd_lattice() {
        let t = sg(&[6, 10]);
        assert!(!t.contains(21));
        assert!(t.contains(16));
        assert!(!t.contains(14)); // 14/2 = 7 is not in <3,5>
        assert!(t.contains(2 * 8));
    }

    #[test]
    fn gaps_of_small_semigroups() {
        assert_eq!(sg(&[4, 7]).gaps().unwrap(), vec![1, 2, 3, 5, 6, 9, 10, 13, 17]);
        assert_eq!(sg(&[1]).gaps().unwrap(), Vec::<u64>::new());
        assert_eq!(sg(&[3, 5]).gaps().unwrap(), vec![1, 2, 4, 7]);
        assert_eq!(sg(&[6, 10]).gaps(), Err(Error::InfiniteComplement(2)));
    }

    #[test]
    fn frobenius_values() {
        assert_eq!(sg(&[4, 7]).frobenius(), 17);
        assert_eq!(sg(&[3, 5]).frobenius(), 7);
        assert_eq!(sg(&[8, 14]).frobenius(), 34);
        assert_eq!(sg(&[1]).frobenius(), -1);
        assert_eq!(sg(&[3]).frobenius(), -3);
        assert_eq!(sg(&[6, 10, 15]).frobenius(), 29);
    }

    #[test]
    fn frobenius_agrees_with_apery_route() {
        // Frob(T) = d (max Ap(S; n1) - n1) with S = T/d, computed through the
        // public Apéry table as an independent route.
        for gens in [&[4u64, 7][..], &[3, 5], &[6, 10], &[8, 14], &[6, 10, 15]] {
            let t = sg(gens);
            let prim: Vec<u64> = gens.iter().map(|g| g / t.gcd()).collect();
            let s = sg(&prim);
            let n1 = s.smallest_gen();
            let max_ap = *s.apery(n1, 1).set_view(1).unwrap().iter().max().unwrap();
            assert_eq!(t.frobenius(), t.gcd() as i64 * (max_ap as i64 - n1 as i64));
        }
    }

    #[test]
    fn conductor_edge_conditions() {
        let t = sg(&[4, 7]);
        assert_eq!(t.conductor(), 18);
        assert!(t.contains(t.conductor()));
        assert!(!t.contains(t.conductor() - t.gcd()));
        let u = sg(&[6, 10]);
        assert!(u.contains(u.conductor()));
        assert!(!u.contains(u.conductor() - u.gcd()));
        assert_eq!(sg(&[1]).conductor(), 0);
    }

    #[test]
    fn apery_of_4_7_mod_5() {
        let t = sg(&[4, 7]);
        let table = t.apery(5, 3);
        assert_eq!(table.class(0), Some(&[0, 15, 20][..]));
        assert_eq!(table.class(1), Some(&[11, 16, 21][..]));
        assert_eq!(table.class(2), Some(&[7, 12, 22][..]));
        assert_eq!(table.class(3), Some(&[8, 18, 23][..]));
        assert_eq!(table.class(4), Some(&[4, 14, 19][..]));
        let v1: Vec<u64> = table.set_view(1).unwrap().into_iter().collect();
        assert_eq!(v1, vec![0, 4, 7, 8, 11]);
        let v2: Vec<u64> = table.set_view(2).unwrap().into_iter().collect();
        assert_eq!(v2, vec![12, 14, 15, 16, 18]);
        let v3: Vec<u64> = table.set_view(3).unwrap().into_iter().collect();
        assert_eq!(v3, vec![19, 20, 21, 22, 23]);
        assert_eq!(
            table.set_view(4),
            Err(Error::DepthExceeded {
                requested: 4,
                depth: 3
            })
        );
    }

    #[test]
    fn apery_mod_1_is_zero() {
        let table = sg(&[5, 9, 12]).apery(1, 1);
        assert_eq!(table.class(0), Some(&[0][..]));
    }

    #[test]
    fn apery_with_absent_classes() {
        let table = sg(&[6, 10]).apery(4, 1);
        assert_eq!(table.class(0), Some(&[0][..]));
        assert_eq!(table.class(2), Some(&[6][..]));
        assert_eq!(table.class(1), None);
        assert_eq!(table.class(3), None);
        let view: Vec<u64> = table.set_view(1).unwrap().into_iter().collect();
        assert_eq!(view, vec![0, 6]);
        assert_eq!(table.entry(1, 1), Err(Error::AbsentClass(1)));
    }

    #[test]
    fn apery_shift_when_modulus_is_member() {
        // Ap_j(T; n) = Ap(T; n) + (j-1) n when n is a member
        let t = sg(&[1]);
        let table = t.apery(3, 2);
        let v2: Vec<u64> = table.set_view(2).unwrap().into_iter().collect();
        assert_eq!(v2, vec![3, 4, 5]);
    }
}
