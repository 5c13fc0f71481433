//! Geometric oracle: the reflection hyperplanes of `G(m,p,n)`, exact
//! subspace arithmetic over `Q(ζ_m)` in reduced row-echelon form, the
//! intersection lattice by closure under intersection, and the explicit
//! isomorphism check against the colored-partition model.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::colored::{ColoredElement, ColoredPartition};
use crate::cyclo::CycloNumber;
use crate::lattice::{build_lattice, LatticeConfig};
use crate::report::VerificationReport;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("p = {p} does not divide m = {m}")]
    BadDivisor { m: u32, p: u32 },
    #[error("intersection lattice would exceed the cap of {cap} elements")]
    CapExceeded { cap: u64 },
}

/// A linear form `Σ a_i X_i` over `Q(ζ_m)`; hyperplane = kernel.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct LinearForm {
    pub coefficients: Vec<CycloNumber>,
}

impl LinearForm {
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }
}

/// The reflection hyperplanes of `G(m,p,n)`: coordinate forms `X_i` when
/// `p < m`, and `ζ^c X_i - X_j` for `i < j`, `0 <= c < m`, for all `p`.
pub fn reflection_hyperplanes(
    m: u32,
    p: u32,
    n: u32,
) -> Result<Vec<LinearForm>, ArrangementError> {
    if p == 0 || m % p != 0 {
        return Err(ArrangementError::BadDivisor { m, p });
    }
    let mut forms = Vec::new();
    if p < m {
        for i in 0..n as usize {
            let mut coeffs = vec![CycloNumber::zero(m); n as usize];
            coeffs[i] = CycloNumber::one(m);
            forms.push(LinearForm { coefficients: coeffs });
        }
    }
    for i in 0..n as usize {
        for j in (i + 1)..n as usize {
            for c in 0..m {
                let mut coeffs = vec![CycloNumber::zero(m); n as usize];
                coeffs[i] = CycloNumber::zeta_pow(m, c);
                coeffs[j] = CycloNumber::from_int(m, -1);
                forms.push(LinearForm { coefficients: coeffs });
            }
        }
    }
    Ok(forms)
}

/// A subspace of `C^n`, stored as the reduced row-echelon basis of the
/// linear forms vanishing on it. RREF is canonical, so equality of
/// subspaces is equality of the representation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<CycloNumber>>,
}

impl Subspace {
    /// The whole space `C^n` (empty system).
    pub fn full(m: u32, n: usize) -> Self {
        let _ = m;
        Subspace { n, rows: Vec::new() }
    }

    pub fn from_forms(m: u32, n: usize, forms: &[&LinearForm]) -> Self {
        let rows: Vec<Vec<CycloNumber>> =
            forms.iter().map(|f| f.coefficients.clone()).collect();
        Subspace {
            n,
            rows: rref(m, n, rows),
        }
    }

    pub fn codim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<CycloNumber>] {
        &self.rows
    }

    /// Intersection: union of the vanishing systems.
    pub fn intersect_with_form(&self, m: u32, form: &LinearForm) -> Subspace {
        let mut rows = self.rows.clone();
        rows.push(form.coefficients.clone());
        Subspace {
            n: self.n,
            rows: rref(m, self.n, rows),
        }
    }

    /// Does `form` vanish on this subspace (i.e. lie in the row space)?
    pub fn contains_form(&self, form: &LinearForm) -> bool {
        let mut v = form.coefficients.clone();
        for row in &self.rows {
            let pivot = row.iter().position(|c| !c.is_zero()).unwrap();
            if !v[pivot].is_zero() {
                let factor = v[pivot].clone();
                for (a, b) in v.iter_mut().zip(row.iter()) {
                    *a = a.sub(&factor.mul(b));
                }
            }
        }
        v.iter().all(|c| c.is_zero())
    }

    /// Reverse-inclusion order: `self <= other` iff `self ⊇ other` as
    /// subspaces, i.e. every vanishing form of `self` vanishes on `other`...
    /// cast the other way: row space of `self` contained in row space of
    /// `other`.
    pub fn leq(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|row| {
            other.contains_form(&LinearForm {
                coefficients: row.clone(),
            })
        })
    }

    pub fn rows_as_strings(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|c| c.coeff_string()).collect())
            .collect()
    }
}

/// Reduced row echelon form over `Q(ζ_m)`.
fn rref(m: u32, n: usize, mut rows: Vec<Vec<CycloNumber>>) -> Vec<Vec<CycloNumber>> {
    let _ = m;
    let mut pivot_row = 0usize;
    for col in 0..n {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = rows[pivot_row][col].inv();
        for c in col..n {
            rows[pivot_row][c] = rows[pivot_row][c].mul(&inv);
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..n {
                    let delta = factor.mul(&rows[pivot_row][c]);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// The intersection lattice of an arrangement: closure of the hyperplanes
/// under intersection, plus `C^n` as the bottom, canonically ordered by
/// (codimension, representation).
pub fn intersection_lattice(
    m: u32,
    n: usize,
    hyperplanes: &[LinearForm],
    cap: u64,
) -> Result<Vec<Subspace>, ArrangementError> {
    assert!(!hyperplanes.is_empty());
    let bottom = Subspace::full(m, n);
    let mut seen: Vec<Subspace> = vec![bottom.clone()];
    let mut work: Vec<Subspace> = vec![bottom];
    // every lattice element is an intersection of hyperplanes, so
    // intersecting worklist members with original hyperplanes only reaches
    // the whole closure
    while let Some(w) = work.pop() {
        for h in hyperplanes {
            let next = w.intersect_with_form(m, h);
            if !seen.contains(&next) {
                if seen.len() as u64 >= cap {
                    return Err(ArrangementError::CapExceeded { cap });
                }
                seen.push(next.clone());
                work.push(next);
            }
        }
    }
    seen.sort_by(|a, b| a.codim().cmp(&b.codim()).then_with(|| a.cmp(b)));
    Ok(seen)
}

/// The isomorphism certificate: each partition next to the echelon basis of
/// its image subspace.
pub struct IsoCertificate {
    pub entries: Vec<(ColoredPartition, Subspace)>,
}

impl IsoCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|(p, s)| {
                (
                    p.to_text(),
                    serde_json::json!(s.rows_as_strings()),
                )
            })
            .collect();
        serde_json::json!(map)
    }
}

pub struct IsoOutcome {
    pub report: VerificationReport,
    pub certificate: IsoCertificate,
    pub geometric_size: usize,
    pub whitney_geometric: Vec<BigInt>,
}

/// The map of the lattice isomorphism proof: zero-block bases give
/// coordinate hyperplanes (plain model) or all cross-base difference forms
/// (barred model); pairs inside a nonzero block give `ζ^d X_i = ζ^c X_j`.
pub fn partition_to_subspace(p: &ColoredPartition, geom_p: u32) -> Subspace {
    let m = p.m();
    let n = p.n() as usize;
    let barred = geom_p == m && m > 1;
    let mut forms: Vec<LinearForm> = Vec::new();
    let zero_elems: Vec<ColoredElement> = p
        .zero_block()
        .iter()
        .copied()
        .filter(|e| *e != ColoredElement::Zero)
        .collect();
    if !barred {
        let mut bases: Vec<u32> = zero_elems.iter().map(|e| e.base()).collect();
        bases.dedup();
        for b in bases {
            let mut coeffs = vec![CycloNumber::zero(m); n];
            coeffs[(b - 1) as usize] = CycloNumber::one(m);
            forms.push(LinearForm { coefficients: coeffs });
        }
    } else {
        for (idx, a) in zero_elems.iter().enumerate() {
            for b in &zero_elems[idx + 1..] {
                if a.base() != b.base() {
                    forms.push(pair_form(m, n, *a, *b));
                }
            }
        }
    }
    for tuple in p.tuples() {
        for block in tuple {
            let elems: Vec<ColoredElement> = block.iter().copied().collect();
            for (idx, a) in elems.iter().enumerate() {
                for b in &elems[idx + 1..] {
                    forms.push(pair_form(m, n, *a, *b));
                }
            }
        }
    }
    let refs: Vec<&LinearForm> = forms.iter().collect();
    Subspace::from_forms(m, n, &refs)
}

/// The hyperplane `ζ^d X_i = ζ^c X_j` for `i^c, j^d` in one block.
fn pair_form(m: u32, n: usize, a: ColoredElement, b: ColoredElement) -> LinearForm {
    let (i, c) = (a.base(), a.color().unwrap());
    let (j, d) = (b.base(), b.color().unwrap());
    let mut coeffs = vec![CycloNumber::zero(m); n];
    coeffs[(i - 1) as usize] = CycloNumber::zeta_pow(m, d);
    coeffs[(j - 1) as usize] = CycloNumber::zeta_pow(m, c).neg();
    LinearForm { coefficients: coeffs }
}

/// Build both lattices for `G(m,p,n)` and verify that the proof's map is a
/// rank-preserving order isomorphism. Returns the element-to-element
/// certificate alongside the report.
pub fn iso_check(m: u32, p: u32, n: u32, config: LatticeConfig) -> IsoOutcome {
    let params = format!("G({m},{p},{n})");
    let fail = |witness: String| IsoOutcome {
        report: VerificationReport::failed("lattice-iso", params.clone(), witness),
        certificate: IsoCertificate { entries: Vec::new() },
        geometric_size: 0,
        whitney_geometric: Vec::new(),
    };

    let forms = match reflection_hyperplanes(m, p, n) {
        Ok(f) => f,
        Err(e) => return fail(e.to_string()),
    };
    let geom = match intersection_lattice(m, n as usize, &forms, config.max_elements) {
        Ok(g) => g,
        Err(e) => return fail(e.to_string()),
    };
    let comb = match build_lattice(m, n, p == m, config) {
        Ok(l) => l,
        Err(e) => return fail(e.to_string()),
    };

    if geom.len() != comb.len() {
        return fail(format!(
            "geometric lattice has {} elements, combinatorial {}",
            geom.len(),
            comb.len()
        ));
    }

    // materialize the map and check bijectivity + rank preservation
    let mut images: Vec<Subspace> = Vec::with_capacity(comb.len());
    let mut hit: BTreeMap<&Subspace, usize> = BTreeMap::new();
    for part in comb.elements() {
        let img = partition_to_subspace(part, p);
        let Some(pos) = geom.iter().position(|s| *s == img) else {
            return fail(format!("image of {} is not in the intersection lattice", part));
        };
        if hit.insert(&geom[pos], 1).is_some() {
            return fail(format!("image of {} duplicates another element", part));
        }
        let idx = comb.index_of(part).unwrap();
        if comb.rank_of(idx) as usize != img.codim() {
            return fail(format!(
                "rank {} of {} maps to codimension {}",
                comb.rank_of(idx),
                part,
                img.codim()
            ));
        }
        images.push(img);
    }

    // order isomorphism in both directions
    for i in 0..comb.len() {
        for j in 0..comb.len() {
            let comb_le = comb.leq(i, j);
            let geom_le = images[i].leq(&images[j]);
            if comb_le != geom_le {
                return fail(format!(
                    "order mismatch: {} <= {} is {} combinatorially, {} geometrically",
                    comb.elements()[i],
                    comb.elements()[j],
                    comb_le,
                    geom_le
                ));
            }
        }
    }

    // Whitney numbers of the second kind of the geometric side, by rank
    let mut whitney = vec![BigInt::from(0); n as usize + 1];
    for s in &geom {
        whitney[s.codim()] += 1;
    }

    let entries: Vec<(ColoredPartition, Subspace)> = comb
        .elements()
        .iter()
        .cloned()
        .zip(images.into_iter())
        .collect();
    IsoOutcome {
        report: VerificationReport::verified("lattice-iso", params),
        certificate: IsoCertificate { entries },
        geometric_size: geom.len(),
        whitney_geometric: whitney,
    }
}

/// Spot check of the pseudoreflection classification: each returned
/// hyperplane is fixed pointwise by the corresponding map of the lemma.
pub fn reflection_fixes_hyperplane(m: u32, p: u32, n: u32) -> VerificationReport {
    let params = format!("G({m},{p},{n})");
    let forms = match reflection_hyperplanes(m, p, n) {
        Ok(f) => f,
        Err(e) => return VerificationReport::failed("reflection-fix", params, e.to_string()),
    };
    for form in &forms {
        let support: Vec<usize> = form
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect();
        // kernel basis of the form
        let mut kernel: Vec<Vec<CycloNumber>> = Vec::new();
        for t in 0..n as usize {
            if !support.contains(&t) {
                let mut v = vec![CycloNumber::zero(m); n as usize];
                v[t] = CycloNumber::one(m);
                kernel.push(v);
            }
        }
        // the reflection of the lemma for this hyperplane
        let image = |v: &Vec<CycloNumber>| -> Vec<CycloNumber> {
            let mut out = v.clone();
            if support.len() == 1 {
                // type (a): X_i = 0; ρ scales e_i by a nontrivial root in μ_{m/p}
                let i = support[0];
                let zeta = CycloNumber::zeta_pow(m, p); // ζ_m^p generates μ_{m/p}
                out[i] = v[i].mul(&zeta);
            } else {
                // type (b): ζ^c X_i = X_j; ρ(e_i) = ζ^c e_j, ρ(e_j) = ζ^{-c} e_i
                let (i, j) = (support[0], support[1]);
                let zc = form.coefficients[i].clone(); // ζ^c
                out[j] = v[i].mul(&zc);
                out[i] = v[j].div(&zc);
            }
            out
        };
        if support.len() == 2 {
            // the in-hyperplane vector e_i + ζ^c e_j completes the kernel basis
            let (i, j) = (support[0], support[1]);
            let mut v = vec![CycloNumber::zero(m); n as usize];
            v[i] = CycloNumber::one(m);
            v[j] = form.coefficients[i].clone();
            kernel.push(v);
        }
        for v in &kernel {
            if image(v) != *v {
                return VerificationReport::failed(
                    "reflection-fix",
                    params,
                    format!("kernel vector not fixed for form over support {support:?}"),
                );
            }
        }
    }
    VerificationReport::verified("reflection-fix", params)
}

/// The intersection lattice for `G(m,p,n)` is the same for all `p < m`:
/// compare the canonical element lists of two proper divisors.
pub fn compare_proper_divisors(m: u32, p1: u32, p2: u32, n: u32, cap: u64) -> VerificationReport {
    let params = format!("m={m}, n={n}, p={p1} vs p={p2}");
    let a = reflection_hyperplanes(m, p1, n).unwrap();
    let b = reflection_hyperplanes(m, p2, n).unwrap();
    let la = intersection_lattice(m, n as usize, &a, cap).unwrap();
    let lb = intersection_lattice(m, n as usize, &b, cap).unwrap();
    VerificationReport::check("lattice-p-independence", params, la == lb, || {
        format!("{} vs {} elements", la.len(), lb.len())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperplane_counts() {
        // B_2: X_1, X_2, X_1 - X_2, X_1 + X_2
        assert_eq!(reflection_hyperplanes(2, 1, 2).unwrap().len(), 4);
        // D_2: coordinate forms excluded
        assert_eq!(reflection_hyperplanes(2, 2, 2).unwrap().len(), 2);
        // A_1 inside G(1,1,2)
        assert_eq!(reflection_hyperplanes(1, 1, 2).unwrap().len(), 1);
        assert!(reflection_hyperplanes(4, 3, 2).is_err());
    }

    #[test]
    fn small_intersection_lattices() {
        let a1 = reflection_hyperplanes(1, 1, 2).unwrap();
        assert_eq!(intersection_lattice(1, 2, &a1, 1000).unwrap().len(), 2);
        let b2 = reflection_hyperplanes(2, 1, 2).unwrap();
        let lat = intersection_lattice(2, 2, &b2, 1000).unwrap();
        assert_eq!(lat.len(), 6);
        let codims: Vec<usize> = lat.iter().map(|s| s.codim()).collect();
        assert_eq!(codims, vec![0, 1, 1, 1, 1, 2]);
        let d2 = reflection_hyperplanes(2, 2, 2).unwrap();
        assert_eq!(intersection_lattice(2, 2, &d2, 1000).unwrap().len(), 4);
    }

    #[test]
    fn iso_checks_small() {
        for (m, p, n) in [(2u32, 1u32, 2u32), (2, 2, 2), (1, 1, 3), (3, 1, 2)] {
            let outcome = iso_check(m, p, n, LatticeConfig::default());
            assert!(
                !outcome.report.is_failure(),
                "{}",
                outcome.report.render()
            );
        }
    }

    #[test]
    fn subspace_order_is_reverse_inclusion() {
        let m = 2;
        let forms = reflection_hyperplanes(2, 1, 2).unwrap();
        let bottom = Subspace::full(m, 2);
        let h = Subspace::from_forms(m, 2, &[&forms[0]]);
        let origin = Subspace::from_forms(m, 2, &[&forms[0], &forms[1]]);
        assert!(bottom.leq(&h));
        assert!(h.leq(&origin));
        assert!(!origin.leq(&h));
        assert!(bottom.leq(&origin));
    }

    #[test]
    fn reflection_fix_spot_check() {
        for (m, p, n) in [(2u32, 1u32, 2u32), (3, 1, 2), (4, 2, 2), (2, 2, 3)] {
            let r = reflection_fixes_hyperplane(m, p, n);
            assert!(!r.is_failure(), "{}", r.render());
        }
    }
}
