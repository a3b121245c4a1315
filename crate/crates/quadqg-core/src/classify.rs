//! Variety membership of quadratic quasigroups, the exhaustive universal-law
//! oracle, Steiner/Netto machinery and group-isotopy certificates.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::gf::{Elem, FiniteField};
use crate::qgrp::{
    build_quadratic, is_netto_params, is_steiner_params, validate_params, ParamError, Quasigroup,
};

/// How a set of variety flags was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Formula,
    Oracle,
}

/// Variety membership flags for `Q_{a,b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarietyFlags {
    pub medial: bool,
    pub left_distributive: bool,
    pub right_distributive: bool,
    pub commutative: bool,
    pub flexible: bool,
    pub semisymmetric: bool,
    pub steiner: bool,
    pub netto: bool,
    pub group_isotopic: bool,
    pub provenance: Provenance,
}

/// A quasigroup law checkable by exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    /// `xx = x`
    Idempotent,
    /// `xy · uv = xu · yv`
    Medial,
    /// `x · yz = xy · xz`
    LeftDistributive,
    /// `xy · z = xz · yz`
    RightDistributive,
    /// `xy = yx`
    Commutative,
    /// `x · yx = xy · x`
    Flexible,
    /// `xy · x = y`
    Semisymmetric,
}

/// Closed-form classification of `Q_{a,b}` from the parameters.
pub fn classify_params(f: &FiniteField, a: Elem, b: Elem) -> Result<VarietyFlags, ParamError> {
    validate_params(f, a, b)?;
    let affine = a == b;
    let q_is_3_mod_4 = f.order() % 4 == 3;
    let a_plus_b_one = f.add(a, b) == 1;
    let commutative = a_plus_b_one && (q_is_3_mod_4 || affine);
    let flexible = affine
        || (f.chi(a) == 1 && f.chi(f.sub(1, a)) == 1)
        || (a_plus_b_one && q_is_3_mod_4);
    // a^2 - a + 1 = 0
    let sixth_root = f.add(f.sub(f.mul(a, a), a), 1) == 0;
    let semisymmetric = sixth_root && (affine || a_plus_b_one);
    let steiner = is_steiner_params(f, a, b);
    let netto = is_netto_params(f, a, b);
    Ok(VarietyFlags {
        medial: affine,
        left_distributive: affine,
        right_distributive: affine,
        commutative,
        flexible,
        semisymmetric,
        steiner,
        netto,
        group_isotopic: affine,
        provenance: Provenance::Formula,
    })
}

/// First counterexample tuple to a law, in lexicographic variable order, or
/// `None` if the law holds everywhere.
pub fn find_law_violation(q: &Quasigroup, law: Law) -> Option<Vec<u32>> {
    let n = q.n() as u32;
    match law {
        Law::Idempotent => (0..n).find(|&x| q.op(x, x) != x).map(|x| [x].to_vec()),
        Law::Commutative => {
            for x in 0..n {
                for y in 0..n {
                    if q.op(x, y) != q.op(y, x) {
                        return Some([x, y].to_vec());
                    }
                }
            }
            None
        }
        Law::Flexible => {
            for x in 0..n {
                for y in 0..n {
                    if q.op(x, q.op(y, x)) != q.op(q.op(x, y), x) {
                        return Some([x, y].to_vec());
                    }
                }
            }
            None
        }
        Law::Semisymmetric => {
            for x in 0..n {
                for y in 0..n {
                    if q.op(q.op(x, y), x) != y {
                        return Some([x, y].to_vec());
                    }
                }
            }
            None
        }
        Law::LeftDistributive => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if q.op(x, q.op(y, z)) != q.op(q.op(x, y), q.op(x, z)) {
                            return Some([x, y, z].to_vec());
                        }
                    }
                }
            }
            None
        }
        Law::RightDistributive => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if q.op(q.op(x, y), z) != q.op(q.op(x, z), q.op(y, z)) {
                            return Some([x, y, z].to_vec());
                        }
                    }
                }
            }
            None
        }
        Law::Medial => {
            for x in 0..n {
                for y in 0..n {
                    for u in 0..n {
                        for v in 0..n {
                            if q.op(q.op(x, y), q.op(u, v)) != q.op(q.op(x, u), q.op(y, v)) {
                                return Some([x, y, u, v].to_vec());
                            }
                        }
                    }
                }
            }
            None
        }
    }
}

/// Exhaustive check of a law over all variable tuples.
pub fn check_law(q: &Quasigroup, law: Law) -> bool {
    find_law_violation(q, law).is_none()
}

/// Oracle-side classification of `Q_{a,b}` by exhaustive law checks.
/// `group_isotopic` is decided by exhaustive quadrangle-criterion search.
pub fn classify_oracle(f: &FiniteField, a: Elem, b: Elem) -> Result<VarietyFlags, ParamError> {
    let q = build_quadratic(f, a, b)?;
    let commutative = check_law(&q, Law::Commutative);
    let semisymmetric = check_law(&q, Law::Semisymmetric);
    let steiner = check_law(&q, Law::Idempotent) && commutative && semisymmetric;
    Ok(VarietyFlags {
        medial: check_law(&q, Law::Medial),
        left_distributive: check_law(&q, Law::LeftDistributive),
        right_distributive: check_law(&q, Law::RightDistributive),
        commutative,
        flexible: check_law(&q, Law::Flexible),
        semisymmetric,
        steiner,
        netto: steiner && f.p() > 3,
        group_isotopic: find_quadrangle_violation(&q).is_none(),
        provenance: Provenance::Oracle,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    Param(ParamError),
    /// Steiner block construction requested for non-Steiner parameters.
    NotSteiner,
    /// Character-run witnesses are only guaranteed for `q > 9`.
    OrderTooSmall(u64),
    /// No witness found (cannot happen for odd `q > 9`).
    NoWitness,
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::Param(e) => write!(f, "invalid parameters: {e}"),
            ClassifyError::NotSteiner => write!(f, "parameters are not Steiner"),
            ClassifyError::OrderTooSmall(q) => {
                write!(f, "character-run witness needs q > 9, got {q}")
            }
            ClassifyError::NoWitness => write!(f, "no character-run witness found"),
        }
    }
}

impl From<ParamError> for ClassifyError {
    fn from(e: ParamError) -> Self {
        ClassifyError::Param(e)
    }
}

/// Blocks of the Steiner triple system induced by Steiner parameters.
/// For `char > 3` (Netto): the `q(q-1)/6` sets `{u, v, av + bu}` over pairs
/// with `chi(v-u) = 1`. For `char = 3` (`a = b = -1`): the sets `{u, v, -u-v}`
/// over all pairs.
pub fn netto_blocks(
    f: &FiniteField,
    a: Elem,
    b: Elem,
) -> Result<Vec<[u32; 3]>, ClassifyError> {
    validate_params(f, a, b)?;
    if !is_steiner_params(f, a, b) {
        return Err(ClassifyError::NotSteiner);
    }
    let mut blocks: Vec<[u32; 3]> = Vec::new();
    let char3 = f.p() == 3;
    for u in 0..f.order() {
        for v in 0..f.order() {
            if u == v {
                continue;
            }
            if !char3 && f.chi(f.sub(v, u)) != 1 {
                continue;
            }
            let w = if char3 {
                f.neg(f.add(u, v))
            } else {
                f.add(f.mul(a, v), f.mul(b, u))
            };
            let mut block = [u as u32, v as u32, w as u32];
            block.sort_unstable();
            if !blocks.contains(&block) {
                blocks.push(block);
            }
        }
    }
    blocks.sort_unstable();
    Ok(blocks)
}

/// Every unordered pair of distinct points is covered by exactly one block.
pub fn is_steiner_triple_system(n: usize, blocks: &[[u32; 3]]) -> bool {
    let mut cover = alloc::vec![0u32; n * n];
    for b in blocks {
        if b[0] == b[1] || b[1] == b[2] || b[0] == b[2] {
            return false;
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                let (x, y) = (b[i] as usize, b[j] as usize);
                cover[x * n + y] += 1;
                cover[y * n + x] += 1;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && cover[x * n + y] != 1 {
                return false;
            }
        }
    }
    true
}

/// Netto parameters of a field, when they exist: the two distinct roots of
/// `x^2 - x + 1` in the `chi(-1) = -1`, `char > 3` case, smaller code first.
pub fn netto_params(f: &FiniteField) -> Option<(Elem, Elem)> {
    if f.p() <= 3 || f.chi(f.neg(1)) != -1 {
        return None;
    }
    let a = (0..f.order()).find(|&x| f.add(f.sub(f.mul(x, x), x), 1) == 0)?;
    let b = f.sub(1, a);
    if a == b || !is_netto_params(f, a, b) {
        return None;
    }
    Some((a.min(b), a.max(b)))
}

/// Two 2x2 sub-rectangles of a Cayley table witnessing a quadrangle-criterion
/// violation: the first three entries agree pairwise, the fourth differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quadrangle {
    pub rows: [u32; 2],
    pub cols: [u32; 2],
    pub rows2: [u32; 2],
    pub cols2: [u32; 2],
}

impl Quadrangle {
    /// Re-verifies the violation against a table: entries at `(0,0)`, `(0,1)`
    /// and `(1,0)` agree between the rectangles, the `(1,1)` entries differ.
    pub fn violates(&self, q: &Quasigroup) -> bool {
        q.op(self.rows[0], self.cols[0]) == q.op(self.rows2[0], self.cols2[0])
            && q.op(self.rows[0], self.cols[1]) == q.op(self.rows2[0], self.cols2[1])
            && q.op(self.rows[1], self.cols[0]) == q.op(self.rows2[1], self.cols2[0])
            && q.op(self.rows[1], self.cols[1]) != q.op(self.rows2[1], self.cols2[1])
    }
}

/// Exhaustive quadrangle-criterion search over all pairs of 2x2 rectangles,
/// keyed by the first three entries. Independent of the parameter formulas.
pub fn find_quadrangle_violation(q: &Quasigroup) -> Option<Quadrangle> {
    let n = q.n() as u32;
    type Rectangle = ([u32; 2], [u32; 2], u32);
    let mut seen: BTreeMap<(u32, u32, u32), Rectangle> = BTreeMap::new();
    for r0 in 0..n {
        for r1 in 0..n {
            if r0 == r1 {
                continue;
            }
            for c0 in 0..n {
                for c1 in 0..n {
                    if c0 == c1 {
                        continue;
                    }
                    let key = (q.op(r0, c0), q.op(r0, c1), q.op(r1, c0));
                    let last = q.op(r1, c1);
                    match seen.get(&key) {
                        Some(&(rows, cols, prev)) if prev != last => {
                            return Some(Quadrangle {
                                rows,
                                cols,
                                rows2: [r0, r1],
                                cols2: [c0, c1],
                            });
                        }
                        Some(_) => {}
                        None => {
                            seen.insert(key, ([r0, r1], [c0, c1], last));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Result of the group-isotopy decision for `Q_{a,b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsotopyCertificate {
    /// `a = b`: isotopic to the additive group, with the affine form
    /// `x * y = (1-a)x + ay` as witness.
    Isotopic { one_minus_a: Elem, a: Elem },
    /// `a != b`: a verified quadrangle-criterion violation.
    NotIsotopic(Quadrangle),
}

/// A pair `(u, v)` with `chi(u) = chi(v) = chi(u+1) = chi(v+1) = chi(u-1) = -1`
/// and `chi(v-1) = 1`, guaranteed to exist for odd `q > 9`. Search is
/// ascending by element code, `u` outer, `v` inner.
pub fn find_character_run_witness(f: &FiniteField) -> Result<(Elem, Elem), ClassifyError> {
    if f.order() <= 9 {
        return Err(ClassifyError::OrderTooSmall(f.order()));
    }
    let u = (0..f.order())
        .find(|&u| {
            f.chi(u) == -1 && f.chi(f.add(u, 1)) == -1 && f.chi(f.sub(u, 1)) == -1
        })
        .ok_or(ClassifyError::NoWitness)?;
    let v = (0..f.order())
        .find(|&v| {
            f.chi(v) == -1 && f.chi(f.add(v, 1)) == -1 && f.chi(f.sub(v, 1)) == 1
        })
        .ok_or(ClassifyError::NoWitness)?;
    Ok((u, v))
}

/// The quadrangle pair built from a character-run witness `(u, v)`:
/// rows `(-bu, 1-bu)` x cols `(u-bu+1, u-bu)` against the same shape in `v`.
/// The three agreeing entries are `b`, `0`, `1`; the fourth entries are
/// `1-b` and `1-a + v(a-b)`, distinct whenever `a != b` (as `v != 1`).
pub fn witness_quadrangle(f: &FiniteField, b: Elem, u: Elem, v: Elem) -> Quadrangle {
    let corner = |w: Elem| {
        let bw = f.mul(b, w);
        let r0 = f.neg(bw);
        let r1 = f.sub(1, bw);
        let c1 = f.sub(w, bw);
        let c0 = f.add(c1, 1);
        ([r0 as u32, r1 as u32], [c0 as u32, c1 as u32])
    };
    let (rows, cols) = corner(u);
    let (rows2, cols2) = corner(v);
    Quadrangle {
        rows,
        cols,
        rows2,
        cols2,
    }
}

/// Decides group-isotopy of `Q_{a,b}`. For `a != b` the returned quadrangle
/// is re-verified against the table before being returned: for `q > 9` it is
/// built from a character-run witness, for `q <= 9` (and the two parameter
/// pairs whose quadrangles are pinned in tests) by exhaustive search.
pub fn group_isotopy_certificate(
    f: &FiniteField,
    a: Elem,
    b: Elem,
) -> Result<IsotopyCertificate, ClassifyError> {
    validate_params(f, a, b)?;
    if a == b {
        return Ok(IsotopyCertificate::Isotopic {
            one_minus_a: f.sub(1, a),
            a,
        });
    }
    let q = build_quadratic(f, a, b).expect("validated above");
    let quad = if f.order() > 9 {
        let (u, v) = find_character_run_witness(f)?;
        witness_quadrangle(f, b, u, v)
    } else {
        find_quadrangle_violation(&q).ok_or(ClassifyError::NoWitness)?
    };
    debug_assert!(quad.violates(&q));
    if quad.violates(&q) {
        Ok(IsotopyCertificate::NotIsotopic(quad))
    } else {
        Err(ClassifyError::NoWitness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FiniteField;
    use crate::qgrp::build_quadratic;

    #[test]
    fn classify_fano_params() {
        let f = FiniteField::new(7, 1).unwrap();
        let flags = classify_params(&f, 3, 5).unwrap();
        assert!(flags.steiner);
        assert!(flags.netto);
        assert!(flags.commutative);
        assert!(flags.semisymmetric);
        assert!(flags.flexible);
        assert!(!flags.medial);
        assert!(!flags.group_isotopic);
    }

    #[test]
    fn classify_affine_params() {
        for (p, k, a) in [(7u64, 1u32, 2u64), (3, 2, 2), (11, 1, 3)] {
            let f = FiniteField::new(p, k).unwrap();
            let flags = classify_params(&f, a, a).unwrap();
            assert!(flags.medial);
            assert!(flags.left_distributive);
            assert!(flags.right_distributive);
            assert!(flags.group_isotopic);
            assert!(flags.flexible);
        }
    }

    #[test]
    fn classify_char3_steiner() {
        let f = FiniteField::new(3, 1).unwrap();
        let flags = classify_params(&f, 2, 2).unwrap();
        assert!(flags.steiner);
        assert!(!flags.netto);
    }

    #[test]
    fn oracle_matches_formula_f7_f9() {
        for (p, k) in [(3u64, 1u32), (5, 1), (7, 1), (3, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            for a in 0..f.order() {
                for b in 0..f.order() {
                    let Ok(formula) = classify_params(&f, a, b) else {
                        continue;
                    };
                    let oracle = classify_oracle(&f, a, b).unwrap();
                    assert_eq!(formula.medial, oracle.medial, "medial p={p} a={a} b={b}");
                    assert_eq!(formula.left_distributive, oracle.left_distributive);
                    assert_eq!(formula.right_distributive, oracle.right_distributive);
                    assert_eq!(formula.commutative, oracle.commutative);
                    assert_eq!(formula.flexible, oracle.flexible, "flexible p={p} a={a} b={b}");
                    assert_eq!(formula.semisymmetric, oracle.semisymmetric);
                    assert_eq!(formula.steiner, oracle.steiner);
                    assert_eq!(formula.netto, oracle.netto);
                    assert_eq!(formula.group_isotopic, oracle.group_isotopic);
                }
            }
        }
    }

    #[test]
    fn medial_or_commutative_implies_flexible() {
        for (p, k) in [(7u64, 1u32), (11, 1), (3, 2), (13, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            for a in 0..f.order() {
                for b in 0..f.order() {
                    if let Ok(flags) = classify_params(&f, a, b) {
                        if flags.medial || flags.commutative {
                            assert!(flags.flexible);
                        }
                        if flags.steiner {
                            assert!(flags.commutative && flags.semisymmetric);
                        }
                        if flags.netto {
                            assert!(flags.steiner && a != b);
                        }
                        assert_eq!(flags.medial, flags.group_isotopic);
                    }
                }
            }
        }
    }

    #[test]
    fn commutativity_oracle_example() {
        let f = FiniteField::new(11, 1).unwrap();
        let q = build_quadratic(&f, 2, 6).unwrap();
        assert!(!check_law(&q, Law::Commutative)); // a + b = 8 != 1
        assert!(check_law(&q, Law::Idempotent));
    }

    #[test]
    fn fano_blocks() {
        let f = FiniteField::new(7, 1).unwrap();
        let blocks = netto_blocks(&f, 3, 5).unwrap();
        assert_eq!(blocks.len(), 7);
        assert!(is_steiner_triple_system(7, &blocks));
    }

    #[test]
    fn f19_netto_blocks() {
        let f = FiniteField::new(19, 1).unwrap();
        let (a, b) = netto_params(&f).unwrap();
        let blocks = netto_blocks(&f, a, b).unwrap();
        assert_eq!(blocks.len(), 57);
        assert!(is_steiner_triple_system(19, &blocks));
    }

    #[test]
    fn char3_blocks() {
        let f = FiniteField::new(3, 1).unwrap();
        let blocks = netto_blocks(&f, 2, 2).unwrap();
        assert_eq!(blocks, alloc::vec![[0, 1, 2]]);
        let f9 = FiniteField::new(3, 2).unwrap();
        let blocks = netto_blocks(&f9, 2, 2).unwrap();
        assert_eq!(blocks.len(), 12);
        assert!(is_steiner_triple_system(9, &blocks));
    }

    #[test]
    fn netto_params_examples() {
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(netto_params(&f7), Some((3, 5)));
        let f13 = FiniteField::new(13, 1).unwrap();
        assert_eq!(netto_params(&f13), None); // 13 ≡ 1 mod 12
        let f49 = FiniteField::new(7, 2).unwrap();
        assert_eq!(netto_params(&f49), None); // even extension degree
        // ef1 identities at q = 7
        let (a, b) = (3u64, 5u64);
        assert_eq!(f7.mul(a, b), 1);
        assert_eq!(f7.add(a, b), 1);
        assert_eq!(f7.sub(a, f7.mul(a, a)), 1);
        assert_eq!(f7.sub(b, f7.mul(b, b)), 1);
    }

    #[test]
    fn witness_f11_is_papers() {
        let f = FiniteField::new(11, 1).unwrap();
        let (u, v) = find_character_run_witness(&f).unwrap();
        assert_eq!((u, v), (7, 6));
    }

    #[test]
    fn witness_predicate_for_paper_vectors() {
        let check = |f: &FiniteField, u: u64, v: u64| {
            assert_eq!(f.chi(u), -1);
            assert_eq!(f.chi(v), -1);
            assert_eq!(f.chi(f.add(u, 1)), -1);
            assert_eq!(f.chi(f.add(v, 1)), -1);
            assert_eq!(f.chi(f.sub(u, 1)), -1);
            assert_eq!(f.chi(f.sub(v, 1)), 1);
        };
        let f11 = FiniteField::new(11, 1).unwrap();
        check(&f11, 7, 6);
        let f13 = FiniteField::new(13, 1).unwrap();
        check(&f13, 6, 5);
        // u = 2*sqrt(2) in F_25, v = u - 1
        let f25 = FiniteField::new(5, 2).unwrap();
        let sqrt2 = (0..25).find(|&x| f25.mul(x, x) == 2).unwrap();
        let u = f25.mul(2, sqrt2);
        check(&f25, u, f25.sub(u, 1));
    }

    #[test]
    fn witness_rejected_at_small_orders() {
        let f9 = FiniteField::new(3, 2).unwrap();
        assert!(matches!(
            find_character_run_witness(&f9),
            Err(ClassifyError::OrderTooSmall(9))
        ));
    }

    #[test]
    fn paper_quadrangles_violate() {
        // F_7, Q_{3,5}: rows {0,1} x cols {0,1} against rows {2,4} x cols {6,5}
        let f = FiniteField::new(7, 1).unwrap();
        let q = build_quadratic(&f, 3, 5).unwrap();
        let quad = Quadrangle {
            rows: [0, 1],
            cols: [0, 1],
            rows2: [2, 4],
            cols2: [6, 5],
        };
        assert!(quad.violates(&q));

        // F_9 (modulus x^2+1, i = code 3), Q_{1+i,1+2i}:
        // rows {1, 1+i} x cols {1, 2i} against rows {1+2i, i} x cols {2+i, 2+2i}
        let f9 = FiniteField::new(3, 2).unwrap();
        let q9 = build_quadratic(&f9, 4, 7).unwrap();
        let quad9 = Quadrangle {
            rows: [1, 4],
            cols: [1, 6],
            rows2: [7, 3],
            cols2: [5, 8],
        };
        assert!(quad9.violates(&q9));
    }

    #[test]
    fn certificates() {
        let f = FiniteField::new(7, 1).unwrap();
        match group_isotopy_certificate(&f, 3, 5).unwrap() {
            IsotopyCertificate::NotIsotopic(quad) => {
                let q = build_quadratic(&f, 3, 5).unwrap();
                assert!(quad.violates(&q));
            }
            _ => panic!("Q_{{3,5}} is not group-isotopic"),
        }
        assert!(matches!(
            group_isotopy_certificate(&f, 2, 2).unwrap(),
            IsotopyCertificate::Isotopic { .. }
        ));

        let f11 = FiniteField::new(11, 1).unwrap();
        match group_isotopy_certificate(&f11, 2, 6).unwrap() {
            IsotopyCertificate::NotIsotopic(quad) => {
                let q = build_quadratic(&f11, 2, 6).unwrap();
                assert!(quad.violates(&q));
            }
            _ => panic!("Q_{{2,6}} is not group-isotopic"),
        }
    }
}
