//! Isomorphism decision, automorphism groups and isomorphism-class
//! representatives for quadratic quasigroups, with a brute-force table
//! backtracker as the independent oracle.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gf::{pow_u64, Elem, FiniteField};
use crate::qgrp::{build_quadratic, validate_params, ParamError, Quasigroup};

/// The semilinear permutation `x -> lambda * x^{p^frob} + mu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemilinearMap {
    pub lambda: Elem,
    pub frob: u32,
    pub mu: Elem,
}

impl SemilinearMap {
    pub fn apply(&self, f: &FiniteField, x: Elem) -> Elem {
        f.add(f.mul(self.lambda, f.frobenius(x, self.frob)), self.mu)
    }

    /// The map as a permutation of element codes.
    pub fn permutation(&self, f: &FiniteField) -> Vec<u32> {
        (0..f.order()).map(|x| self.apply(f, x) as u32).collect()
    }
}

/// A verified isomorphism `Q_{a,b} -> Q_{c,d}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    /// The witness is `x -> zeta * x^{p^frob}` (swap) or `x -> x^{p^frob}`.
    pub swap: bool,
    pub frob: u32,
    /// Order-9 exceptional family: the witness is instead the prime-linear
    /// map fixing `1` and sending `a` to `c` (`swap`/`frob` are meaningless).
    pub exceptional: bool,
    pub permutation: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoError {
    Param(ParamError),
    /// Pair map needs either both pairs distinct or both collapsed.
    DegeneratePair,
    /// No affine map with square slope sends the first pair to the second.
    ChiMismatch,
    /// Requested enumeration exceeds the cap.
    TooMany { order: u128, cap: u128 },
}

impl fmt::Display for IsoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoError::Param(e) => write!(f, "invalid parameters: {e}"),
            IsoError::DegeneratePair => write!(f, "degenerate pair"),
            IsoError::ChiMismatch => write!(f, "pair difference characters disagree"),
            IsoError::TooMany { order, cap } => {
                write!(f, "automorphism group of order {order} exceeds cap {cap}")
            }
        }
    }
}

impl From<ParamError> for IsoError {
    fn from(e: ParamError) -> Self {
        IsoError::Param(e)
    }
}

/// Decides `Q_{a,b} ~ Q_{c,d}` by parameter-orbit scan: isomorphic exactly
/// when `(c,d) = (a,b)^{p^j}` (witness `x -> x^{p^j}`) or `(c,d) = (b,a)^{p^j}`
/// (witness `x -> zeta x^{p^j}`, `zeta` the canonical nonsquare) for some `j`
/// — plus one exceptional family confirmed by exhaustive search: over the
/// field of order 9, all pairs `(a, a^3)` with `a` outside the prime field
/// are mutually isomorphic (the order-9 nearfield has automorphisms beyond
/// the field's; its multiplicative group is quaternion), witnessed by the
/// prime-linear map fixing `1` with `a -> c`. Witness permutations are
/// verified against the tables before return (orders within the table cap).
pub fn iso_by_theorem(
    f: &FiniteField,
    a: Elem,
    b: Elem,
    c: Elem,
    d: Elem,
) -> Result<Option<IsoWitness>, ParamError> {
    validate_params(f, a, b)?;
    validate_params(f, c, d)?;
    for j in 0..f.k() {
        let (aj, bj) = (f.frobenius(a, j), f.frobenius(b, j));
        let swap = if (aj, bj) == (c, d) {
            false
        } else if (bj, aj) == (c, d) {
            true
        } else {
            continue;
        };
        let zeta = if swap { f.canonical_nonsquare() } else { 1 };
        let perm: Vec<u32> = (0..f.order())
            .map(|x| f.mul(zeta, f.frobenius(x, j)) as u32)
            .collect();
        verify_witness(f, a, b, c, d, &perm);
        return Ok(Some(IsoWitness {
            swap,
            frob: j,
            exceptional: false,
            permutation: perm,
        }));
    }
    if f.order() == 9 && a != b && c != d && f.pow(a, 3) == b && f.pow(c, 3) == d {
        let perm = f9_linear_map(f, a, c);
        verify_witness(f, a, b, c, d, &perm);
        return Ok(Some(IsoWitness {
            swap: false,
            frob: 0,
            exceptional: true,
            permutation: perm,
        }));
    }
    Ok(None)
}

/// The prime-linear bijection of the order-9 field fixing `1` and sending
/// `a` to `c` (`{1, a}` and `{1, c}` are prime-field bases).
fn f9_linear_map(f: &FiniteField, a: Elem, c: Elem) -> Vec<u32> {
    (0..9u64)
        .map(|x| {
            for s in 0..3u64 {
                for t in 0..3u64 {
                    if f.add(s, f.mul(t, a)) == x {
                        return f.add(s, f.mul(t, c)) as u32;
                    }
                }
            }
            unreachable!("{{1, a}} spans the order-9 field")
        })
        .collect()
}

fn verify_witness(f: &FiniteField, a: Elem, b: Elem, c: Elem, d: Elem, perm: &[u32]) {
    if f.order() as usize > crate::qgrp::DEFAULT_TABLE_CAP {
        return;
    }
    let q1 = build_quadratic(f, a, b).expect("validated");
    let q2 = build_quadratic(f, c, d).expect("validated");
    assert_eq!(q1.relabel(perm), q2, "witness failed table verification");
}

// ---- brute-force backtracker over Cayley tables ----

struct Search<'a> {
    q1: &'a Quasigroup,
    q2: &'a Quasigroup,
    map: Vec<i32>,
    rmap: Vec<i32>,
    assigned: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(q1: &'a Quasigroup, q2: &'a Quasigroup) -> Self {
        let n = q1.n();
        Search {
            q1,
            q2,
            map: vec![-1; n],
            rmap: vec![-1; n],
            assigned: Vec::with_capacity(n),
        }
    }

    /// Assigns `psi(x) = t` and propagates every product constraint among
    /// currently assigned points. Leaves partial work on failure; callers
    /// roll back with [`Search::undo`].
    fn try_assign(&mut self, x: u32, t: u32) -> bool {
        let mut stack = vec![(x, t)];
        while let Some((x, t)) = stack.pop() {
            let cur = self.map[x as usize];
            if cur >= 0 {
                if cur as u32 != t {
                    return false;
                }
                continue;
            }
            if self.rmap[t as usize] >= 0 {
                return false;
            }
            self.map[x as usize] = t as i32;
            self.rmap[t as usize] = x as i32;
            self.assigned.push(x);
            for i in 0..self.assigned.len() {
                let y = self.assigned[i];
                let ty = self.map[y as usize] as u32;
                stack.push((self.q1.op(x, y), self.q2.op(t, ty)));
                stack.push((self.q1.op(y, x), self.q2.op(ty, t)));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().unwrap();
            let t = self.map[x as usize];
            self.map[x as usize] = -1;
            self.rmap[t as usize] = -1;
        }
    }

    /// Depth-first search; returns `true` to stop early (single-witness mode).
    fn run(&mut self, results: &mut Vec<Vec<u32>>, find_all: bool) -> bool {
        let n = self.q1.n();
        let Some(x) = (0..n as u32).find(|&x| self.map[x as usize] < 0) else {
            results.push(self.map.iter().map(|&t| t as u32).collect());
            return !find_all;
        };
        for t in 0..n as u32 {
            if self.rmap[t as usize] >= 0 {
                continue;
            }
            let mark = self.assigned.len();
            if self.try_assign(x, t) && self.run(results, find_all) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// First isomorphism `q1 -> q2` found by exhaustive backtracking, or `None`.
pub fn iso_brute_force(q1: &Quasigroup, q2: &Quasigroup) -> Option<Vec<u32>> {
    if q1.n() != q2.n() {
        return None;
    }
    let mut results = Vec::new();
    Search::new(q1, q2).run(&mut results, false);
    results.pop()
}

/// Every automorphism of `q`, by exhaustive backtracking.
pub fn aut_brute_force(q: &Quasigroup) -> Vec<Vec<u32>> {
    let mut results = Vec::new();
    Search::new(q, q).run(&mut results, true);
    results
}

/// The affine map `x -> lambda x + mu` with square slope sending `(s, t)` to
/// `(u, v)`; collapsed pairs map to each other by a translation. Errors:
/// exactly one pair collapsed, or the difference characters disagree (no
/// square slope exists).
pub fn affine_map_between_pairs(
    f: &FiniteField,
    s: Elem,
    t: Elem,
    u: Elem,
    v: Elem,
) -> Result<(Elem, Elem), IsoError> {
    if s == t && u == v {
        return Ok((1, f.sub(u, s)));
    }
    if s == t || u == v {
        return Err(IsoError::DegeneratePair);
    }
    if f.chi(f.sub(s, t)) != f.chi(f.sub(u, v)) {
        return Err(IsoError::ChiMismatch);
    }
    let lambda = f.div(f.sub(u, v), f.sub(s, t)).expect("s != t");
    let mu = f.sub(u, f.mul(lambda, s));
    Ok((lambda, mu))
}

/// Structural case of `Aut(Q_{a,b})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutCase {
    /// `q = 7`, `{a,b} = {3,5}`: the full collineation group of the Fano
    /// plane, order 168.
    Fano,
    /// `a = b`: all invertible `K`-affine maps, `K = <a>`.
    Medial,
    /// `|K| = gamma^2` and `b = a^gamma`: semilinear maps over the index-2
    /// subfield of `K`, slope character tied to whether `a`, `b` swap.
    Twisted,
    /// Everything else: `x -> lambda sigma(x) + mu`, `chi(lambda) = 1`,
    /// `sigma` in `Gal(F | K)`.
    Generic,
}

/// Generating set of `Aut(Q_{a,b})`, in the form natural to the case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generators {
    Semilinear(Vec<SemilinearMap>),
    /// Medial case: the group is all of `AGL_m(K)` acting on `F` as an
    /// `m`-dimensional `K`-space; no short semilinear list exists.
    Linear { subfield_order: u64, dimension: u32 },
    Permutations(Vec<Vec<u32>>),
}

/// `Aut(Q_{a,b})`: case, the subfield `K = <a, b>`, the group order and a
/// generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutDescriptor {
    pub case: AutCase,
    pub subfield_order: u64,
    pub subfield_degree: u32,
    pub galois_order: u32,
    pub order: u128,
    pub generators: Generators,
}

/// Closed-form automorphism group of `Q_{a,b}`.
pub fn aut_descriptor(f: &FiniteField, a: Elem, b: Elem) -> Result<AutDescriptor, ParamError> {
    validate_params(f, a, b)?;
    let q = f.order() as u128;
    let sub = f.subfield_generated_by(&[a, b]);
    let d = sub.degree();
    let gal = f.k() / d;

    if f.order() == 7 && a.min(b) == 3 && a.max(b) == 5 {
        let table = build_quadratic(f, a, b)?;
        let perms = aut_brute_force(&table);
        debug_assert_eq!(perms.len(), 168);
        return Ok(AutDescriptor {
            case: AutCase::Fano,
            subfield_order: sub.order(),
            subfield_degree: d,
            galois_order: gal,
            order: 168,
            generators: Generators::Permutations(perms),
        });
    }

    if a == b {
        let m = f.k() / d;
        let kq = sub.order() as u128;
        let mut order = q;
        let mut pw = 1u128;
        for _ in 0..m {
            order *= q - pw;
            pw *= kq;
        }
        return Ok(AutDescriptor {
            case: AutCase::Medial,
            subfield_order: sub.order(),
            subfield_degree: d,
            galois_order: gal,
            order,
            generators: Generators::Linear {
                subfield_order: sub.order(),
                dimension: m,
            },
        });
    }

    let twisted = d.is_multiple_of(2) && f.pow(a, pow_u64(f.p(), d / 2)) == b;
    let mut gens: Vec<SemilinearMap> = (0..f.k())
        .map(|j| SemilinearMap {
            lambda: 1,
            frob: 0,
            mu: pow_u64(f.p(), j),
        })
        .collect();
    let g = f.primitive_element();
    gens.push(SemilinearMap {
        lambda: f.mul(g, g),
        frob: 0,
        mu: 0,
    });
    if gal > 1 {
        gens.push(SemilinearMap {
            lambda: 1,
            frob: d,
            mu: 0,
        });
    }
    if twisted {
        gens.push(SemilinearMap {
            lambda: f.canonical_nonsquare(),
            frob: d / 2,
            mu: 0,
        });
    }
    let order = if twisted {
        q * (q - 1) * gal as u128
    } else {
        q * (q - 1) / 2 * gal as u128
    };
    Ok(AutDescriptor {
        case: if twisted { AutCase::Twisted } else { AutCase::Generic },
        subfield_order: sub.order(),
        subfield_degree: d,
        galois_order: gal,
        order,
        generators: Generators::Semilinear(gens),
    })
}

/// Every automorphism of `Q_{a,b}` as an explicit permutation, enumerated
/// from the closed form (brute force only in the Fano case). Refuses groups
/// larger than `cap`.
pub fn aut_elements(
    f: &FiniteField,
    a: Elem,
    b: Elem,
    cap: u128,
) -> Result<Vec<Vec<u32>>, IsoError> {
    let desc = aut_descriptor(f, a, b)?;
    if desc.order > cap {
        return Err(IsoError::TooMany {
            order: desc.order,
            cap,
        });
    }
    let q = f.order();
    let perms = match desc.case {
        AutCase::Fano => match desc.generators {
            Generators::Permutations(p) => p,
            _ => unreachable!(),
        },
        AutCase::Medial => medial_elements(f, a, desc.subfield_degree),
        AutCase::Twisted | AutCase::Generic => {
            let mut out = Vec::with_capacity(desc.order as usize);
            for j in 0..f.k() {
                let (aj, bj) = (f.frobenius(a, j), f.frobenius(b, j));
                let want = if (aj, bj) == (a, b) {
                    1
                } else if (aj, bj) == (b, a) {
                    -1
                } else {
                    continue;
                };
                for lambda in 1..q {
                    if f.chi(lambda) != want {
                        continue;
                    }
                    for mu in 0..q {
                        let m = SemilinearMap { lambda, frob: j, mu };
                        out.push(m.permutation(f));
                    }
                }
            }
            out
        }
    };
    debug_assert_eq!(perms.len() as u128, desc.order);
    Ok(perms)
}

/// All of `AGL_m(K)` acting on `F`, as permutations of element codes.
fn medial_elements(f: &FiniteField, a: Elem, sub_degree: u32) -> Vec<Vec<u32>> {
    let q = f.order() as usize;
    let sub = f.subfield_generated_by(&[a]);
    debug_assert_eq!(sub.degree(), sub_degree);
    let m = (f.k() / sub_degree) as usize;
    let kelems = sub.elements();
    let kq = kelems.len();

    // K-basis of F: powers of a primitive element
    let theta = f.primitive_element();
    let basis: Vec<Elem> = (0..m as u64).map(|i| f.pow(theta, i)).collect();

    // K-coordinates of every element, by enumerating all combinations
    let mut coords: Vec<Vec<Elem>> = vec![Vec::new(); q];
    let mut idx = vec![0usize; m];
    loop {
        let combo: Vec<Elem> = idx.iter().map(|&i| kelems[i]).collect();
        let z = combo
            .iter()
            .zip(&basis)
            .fold(0, |acc, (&c, &bv)| f.add(acc, f.mul(c, bv)));
        debug_assert!(coords[z as usize].is_empty());
        coords[z as usize] = combo;
        if !advance(&mut idx, kq) {
            break;
        }
    }

    // all m-tuples of images; keep the bijective (K-linearly independent) ones
    let mut out = Vec::new();
    let mut timg = vec![0u64; m];
    let mut seen = vec![false; q];
    loop {
        let mut linear = vec![0u32; q];
        let mut bijective = true;
        seen.iter_mut().for_each(|s| *s = false);
        for z in 0..q {
            let img = coords[z]
                .iter()
                .zip(&timg)
                .fold(0, |acc, (&c, &t)| f.add(acc, f.mul(c, t)));
            if seen[img as usize] {
                bijective = false;
                break;
            }
            seen[img as usize] = true;
            linear[z] = img as u32;
        }
        if bijective {
            for mu in 0..q as u64 {
                out.push(
                    linear
                        .iter()
                        .map(|&x| f.add(x as u64, mu) as u32)
                        .collect(),
                );
            }
        }
        // odometer over F^m
        let mut i = 0;
        loop {
            if i == m {
                return out;
            }
            timg[i] += 1;
            if timg[i] < f.order() {
                break;
            }
            timg[i] = 0;
            i += 1;
        }
    }
}

fn advance(idx: &mut [usize], radix: usize) -> bool {
    for v in idx.iter_mut() {
        *v += 1;
        if *v < radix {
            return true;
        }
        *v = 0;
    }
    false
}

/// A permutation set is 2-transitive when the images of `(0, 1)` cover all
/// ordered pairs of distinct points.
pub fn is_two_transitive(n: usize, perms: &[Vec<u32>]) -> bool {
    if n < 2 {
        return true;
    }
    let mut hit = vec![false; n * n];
    let mut count = 0usize;
    for p in perms {
        let key = p[0] as usize * n + p[1] as usize;
        if !hit[key] {
            hit[key] = true;
            count += 1;
        }
    }
    count == n * (n - 1)
}

/// One representative per isomorphism class of valid parameter pairs, using
/// the full isomorphism decision (Frobenius/swap orbits plus the order-9
/// exceptional family). The representative of each class is the
/// lexicographically smallest `(min, max)` pair; the list is sorted.
pub fn class_representatives(f: &FiniteField) -> Vec<(Elem, Elem)> {
    let mut reps: Vec<(Elem, Elem)> = Vec::new();
    for a in 0..f.order() {
        for b in a..f.order() {
            if validate_params(f, a, b).is_err() {
                continue;
            }
            let known = reps.iter().any(|&(c, d)| {
                iso_by_theorem(f, c, d, a, b)
                    .expect("representatives are valid")
                    .is_some()
            });
            if !known {
                reps.push((a, b));
            }
        }
    }
    reps
}
