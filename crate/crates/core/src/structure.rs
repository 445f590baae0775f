//! Derived semigroups, the b/c Apéry indexings, closed-form extremal lengths,
//! and the refined structure theorem for sets of length.
//!
//! For a cofinite semigroup `S = <n_1, ..., n_k>` the two derived semigroups
//! are generated by the generator differences from the smallest and largest
//! generator.  Their Apéry tables give closed forms for the j-th largest and
//! smallest factorization lengths of large elements, and their gaps give the
//! lengths missing near the top and bottom of the length set.

use num::integer::lcm;
use num::rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{LengthSet, LengthTable};
use crate::semigroup::{AperyTable, NumericalSemigroup};

/// The pair `S_M = <n_2 - n_1, ..., n_k - n_1>` and
/// `S_m = <n_k - n_1, ..., n_k - n_{k-1}>`, together with their common gcd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedSemigroups {
    pub s_max: NumericalSemigroup,
    pub s_min: NumericalSemigroup,
    /// `d = gcd(S_M) = gcd(S_m)`, the step of large length sets.
    pub step: u64,
}

/// Builds the derived semigroups of a cofinite parent with at least two generators.
pub fn derive(parent: &NumericalSemigroup) -> Result<DerivedSemigroups> {
    if parent.embedding_dim() < 2 {
        return Err(Error::SingleGenerator);
    }
    if parent.gcd() > 1 {
        return Err(Error::NotCofinite(parent.gcd()));
    }
    let gens = parent.generators();
    let n1 = gens[0];
    let nk = *gens.last().unwrap();
    let diffs_max: Vec<u64> = gens[1..].iter().map(|&g| g - n1).collect();
    let diffs_min: Vec<u64> = gens[..gens.len() - 1].iter().map(|&g| nk - g).collect();
    let s_max = NumericalSemigroup::new(&diffs_max)?;
    let s_min = NumericalSemigroup::new(&diffs_min)?;
    let step = s_max.gcd();
    debug_assert_eq!(step, s_min.gcd());
    Ok(DerivedSemigroups { s_max, s_min, step })
}

/// Everything the refined structure theorem needs for one parent semigroup.
///
/// Immutable after construction.
#[derive(Debug, Clone, Serialize)]
pub struct StructureProfile {
    parent: NumericalSemigroup,
    derived: DerivedSemigroups,
    /// Apéry table of `S_M` mod `n_1`; entry `(i, j)` is `b_{ij}`.
    b_table: AperyTable,
    /// Apéry table of `S_m` mod `n_k`; `c_{i'j}` lives in class `(n_k - i') mod n_k`.
    c_table: AperyTable,
    /// `A_i`, indexed by residue mod `n_1`; `None` for empty classes.
    a_sets: Vec<Option<Vec<u64>>>,
    /// `A'_{i'}`, indexed by residue mod `n_k`; `None` for empty classes.
    a_prime_sets: Vec<Option<Vec<u64>>>,
    t: u64,
    t_prime: u64,
    bound: u64,
}

impl StructureProfile {
    pub fn new(parent: &NumericalSemigroup) -> Result<Self> {
        let derived = derive(parent)?;
        let n1 = parent.smallest_gen();
        let nk = parent.largest_gen();
        let d = derived.step;

        let a_sets = missing_family(&derived.s_max, n1, d);
        // the family for class i of S_m mod n_k; A'_{i'} lives at i = (n_k - i') mod n_k
        let a_prime_by_class = missing_family(&derived.s_min, nk, d);
        let a_prime_sets: Vec<Option<Vec<u64>>> = (0..nk)
            .map(|i_prime| a_prime_by_class[((nk - i_prime) % nk) as usize].clone())
            .collect();
        // A_0 and A'_0 always exist: 0 is in every semigroup
        let t = a_sets[0].as_ref().unwrap().last().copied().unwrap_or(0);
        let t_prime = a_prime_sets[0].as_ref().unwrap().last().copied().unwrap_or(0);

        let depth = t.max(t_prime) + 2;
        let b_table = derived.s_max.apery(n1, depth);
        let c_table = derived.s_min.apery(nk, depth);

        let bound = nk * nk - n1 * n1;

        Ok(StructureProfile {
            parent: parent.clone(),
            derived,
            b_table,
            c_table,
            a_sets,
            a_prime_sets,
            t,
            t_prime,
            bound,
        })
    }

    pub fn parent(&self) -> &NumericalSemigroup {
        &self.parent
    }

    pub fn derived(&self) -> &DerivedSemigroups {
        &self.derived
    }

    pub fn step(&self) -> u64 {
        self.derived.step
    }

    pub fn b_table(&self) -> &AperyTable {
        &self.b_table
    }

    pub fn c_table(&self) -> &AperyTable {
        &self.c_table
    }

    /// `t = max(A_0)`, 0 when `A_0` is empty.
    pub fn t(&self) -> u64 {
        self.t
    }

    /// `t' = max(A'_0)`, 0 when `A'_0` is empty.
    pub fn t_prime(&self) -> u64 {
        self.t_prime
    }

    /// `A_i`, or an error when no parent member falls in class `i` mod `n_1`.
    pub fn a_set(&self, i: u64) -> Result<&[u64]> {
        self.a_sets[i as usize].as_deref().ok_or(Error::AbsentClass(i))
    }

    /// `A'_{i'}`, or an error when class `i'` mod `n_k` is empty.
    pub fn a_prime_set(&self, i_prime: u64) -> Result<&[u64]> {
        self.a_prime_sets[i_prime as usize]
            .as_deref()
            .ok_or(Error::AbsentClass(i_prime))
    }

    /// `b_{ij}`: the unique element of `Ap_j(S_M; n_1)` congruent to `i` mod `n_1`.
    pub fn b_value(&self, i: u64, j: u64) -> Result<u64> {
        self.b_table.entry(i, j)
    }

    /// `c_{i'j}`: the unique element of `Ap_j(S_m; n_k)` with `c + i' = 0` mod `n_k`.
    pub fn c_value(&self, i_prime: u64, j: u64) -> Result<u64> {
        let nk = self.parent.largest_gen();
        self.c_table.entry((nk - i_prime % nk) % nk, j)
    }

    /// Closed-form j-th largest length `M_j(n) = (n - b_{ij}) / n_1`.
    pub fn predicted_max_len(&self, n: u64, j: u64) -> Result<u64> {
        let n1 = self.parent.smallest_gen();
        let b = self.b_value(n % n1, j)?;
        if b > n || (n - b) % n1 != 0 {
            return Err(Error::NonExactDivision(n));
        }
        Ok((n - b) / n1)
    }

    /// Closed-form j-th smallest length `m_j(n) = (n + c_{i'j}) / n_k`.
    pub fn predicted_min_len(&self, n: u64, j: u64) -> Result<u64> {
        let nk = self.parent.largest_gen();
        let c = self.c_value(n % nk, j)?;
        if (n + c) % nk != 0 {
            return Err(Error::NonExactDivision(n));
        }
        Ok((n + c) / nk)
    }

    /// The structure-theorem prediction of the full length set of `n`:
    /// the step-`d` progression from `m(n)` to `M(n)` minus
    /// `dA'_{i'} + m(n)` and `-dA_i + M(n)`.
    pub fn predict_length_set(&self, n: u64) -> Result<LengthSet> {
        let n1 = self.parent.smallest_gen();
        let nk = self.parent.largest_gen();
        let d = self.derived.step;
        let m = self.predicted_min_len(n, 1)?;
        let big_m = self.predicted_max_len(n, 1)?;
        let a = self.a_set(n % n1)?;
        let a_prime = self.a_prime_set(n % nk)?;
        let removed_bottom: Vec<u64> = a_prime.iter().map(|r| m + d * r).collect();
        let removed_top: Vec<u64> = a
            .iter()
            .filter_map(|r| big_m.checked_sub(d * r))
            .collect();
        let mut lengths = Vec::new();
        let mut l = m;
        while l <= big_m {
            if !removed_bottom.contains(&l) && !removed_top.contains(&l) {
                lengths.push(l);
            }
            l += d;
        }
        Ok(LengthSet { element: n, lengths })
    }

    /// `n_k^2 - n_1^2`: the theorem is guaranteed for all `n` at or above this.
    pub fn explicit_bound(&self) -> u64 {
        self.bound
    }

    /// Compares predictions against the oracle for every member in
    /// `[from, from + count)`.  Work is charged per element as if its length
    /// set were computed standalone.
    pub fn verify_window(
        &self,
        from: u64,
        count: u64,
        work_limit: u64,
    ) -> Result<Vec<VerificationRecord>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        let end = from + count - 1;
        let k = self.parent.embedding_dim() as u64;
        // one shared table serves the whole window; the per-element budget
        // still decides which elements are reported as work-limited
        let buildable = (work_limit / k).saturating_sub(1).min(end);
        let table = LengthTable::build(&self.parent, buildable, work_limit)?;
        let mut records = Vec::new();
        for n in from..from + count {
            if !self.parent.contains(n) {
                continue;
            }
            let work = LengthTable::work_for(&self.parent, n);
            if work > work_limit {
                records.push(VerificationRecord {
                    generators: self.parent.generators().to_vec(),
                    n,
                    outcome: Outcome::WorkLimited,
                    predicted: Vec::new(),
                    oracle: Vec::new(),
                    work,
                });
                continue;
            }
            let oracle = table.length_set(n);
            let predicted = self.predict_length_set(n)?;
            let mut agreed = predicted.lengths == oracle.lengths;
            if agreed {
                agreed = self.extremes_match(&oracle)?;
            }
            records.push(VerificationRecord {
                generators: self.parent.generators().to_vec(),
                n,
                outcome: if agreed { Outcome::Agreed } else { Outcome::Disagreed },
                predicted: predicted.lengths,
                oracle: oracle.lengths,
                work,
            });
        }
        Ok(records)
    }

    /// Checks `M_j` for `j <= t + 1` and `m_j` for `j <= t' + 1` against the
    /// oracle length set.
    fn extremes_match(&self, oracle: &LengthSet) -> Result<bool> {
        let n = oracle.element;
        let avail = oracle.lengths.len() as u64;
        for j in 1..=(self.t + 1).min(avail) {
            if self.predicted_max_len(n, j)? != crate::oracle::nth(oracle, j, true)? {
                return Ok(false);
            }
        }
        for j in 1..=(self.t_prime + 1).min(avail) {
            if self.predicted_min_len(n, j)? != crate::oracle::nth(oracle, j, false)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Smallest `N` such that every member in `[N, N + multiplier * lcm(n_1, n_k)]`
    /// satisfies the structure-theorem prediction.  Found by scanning every
    /// member below the explicit bound; the window heuristic makes this an
    /// empirical value, not a proof.
    pub fn validity_frontier(&self, window_multiplier: u64, work_limit: u64) -> Result<u64> {
        let n1 = self.parent.smallest_gen();
        let nk = self.parent.largest_gen();
        let window = window_multiplier * lcm(n1, nk);
        let records = self.verify_window(0, self.bound + window + 1, work_limit)?;
        let last_bad = records
            .iter()
            .filter(|r| r.outcome != Outcome::Agreed)
            .map(|r| r.n)
            .max();
        Ok(last_bad.map(|n| n + 1).unwrap_or(0))
    }

    /// The exact periodic corrections `f_S(n) = -b_{i1}/n_1` and
    /// `g_S(n) = c_{i'1}/n_k` with `M(n) = n/n_1 + f_S(n)` and
    /// `m(n) = n/n_k + g_S(n)` for large `n`.
    pub fn shape_functions(&self, n: u64) -> Result<(Ratio<i64>, Ratio<i64>)> {
        let n1 = self.parent.smallest_gen();
        let nk = self.parent.largest_gen();
        let b = self.b_value(n % n1, 1)?;
        let c = self.c_value(n % nk, 1)?;
        Ok((
            Ratio::new(-(b as i64), n1 as i64),
            Ratio::new(c as i64, nk as i64),
        ))
    }

    /// True iff the top and bottom omission zones of `L(n)` cannot meet:
    /// `m(n) + Frob(S_m)/n_k < M(n) - Frob(S_M)/n_1`, in exact rationals.
    pub fn nonoverlap_check(&self, n: u64) -> Result<bool> {
        let n1 = self.parent.smallest_gen() as i64;
        let nk = self.parent.largest_gen() as i64;
        let m = self.predicted_min_len(n, 1)? as i64;
        let big_m = self.predicted_max_len(n, 1)? as i64;
        let lhs = Ratio::from_integer(m) + Ratio::new(self.derived.s_min.frobenius(), nk);
        let rhs = Ratio::from_integer(big_m) - Ratio::new(self.derived.s_max.frobenius(), n1);
        Ok(lhs < rhs)
    }
}

/// Whether two semigroups share the periodic correction to the maximum length
/// (`f`), and to the minimum length (`g`).  Equality is decided on the Apéry
/// tables, so semigroups with different generator lists can still collide.
pub fn shape_equal(a: &StructureProfile, b: &StructureProfile) -> (bool, bool) {
    let f_equal = a.parent.smallest_gen() == b.parent.smallest_gen()
        && a.b_table.first_row() == b.b_table.first_row();
    let g_equal = a.parent.largest_gen() == b.parent.largest_gen()
        && a.c_table.first_row() == b.c_table.first_row();
    (f_equal, g_equal)
}

/// One row of a prediction-vs-oracle comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub generators: Vec<u64>,
    pub n: u64,
    pub outcome: Outcome,
    pub predicted: Vec<u64>,
    pub oracle: Vec<u64>,
    pub work: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Agreed,
    Disagreed,
    WorkLimited,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Agreed => "true",
            Outcome::Disagreed => "false",
            Outcome::WorkLimited => "limit",
        }
    }
}

/// `A_i = {r >= 1 : first_i + r d modulus not in sg}` for every residue class.
///
/// The scan stops once `first_i + r d modulus` passes the Frobenius number,
/// beyond which membership is automatic, so each set is complete.
fn missing_family(sg: &NumericalSemigroup, modulus: u64, d: u64) -> Vec<Option<Vec<u64>>> {
    let table = sg.apery(modulus, 1);
    let frob = sg.frobenius();
    (0..modulus)
        .map(|i| {
            let first = table.class(i)?.first().copied().unwrap();
            debug_assert_eq!(first % modulus, i);
            let mut missing = Vec::new();
            let mut r = 1u64;
            while (first + r * d * modulus) as i64 <= frob {
                if !sg.contains(first + r * d * modulus) {
                    missing.push(r);
                }
                r += 1;
            }
            Some(missing)
        })
        .collect()
}
