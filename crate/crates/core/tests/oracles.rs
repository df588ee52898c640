//! Library results against independent computations.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use symquad::algebra::linalg;
use symquad::algebra::rat::{int, rat};
use symquad::algebra::{QMatrix, Rat};
use symquad::picard::{cones_of_models, ledger_s, Space};
use symquad::schubert::{lg_degree, moduli_dimension, ring_tables, SchubertElt, StrictPartition};

/// Standard tableaux of the shifted staircase `(r, r-1, .., 1)`, counted by
/// removing corners one at a time.
fn shifted_staircase_tableaux(r: usize) -> BigInt {
    fn count(rows: &mut Vec<usize>, memo: &mut std::collections::HashMap<Vec<usize>, BigInt>) -> BigInt {
        if rows.iter().all(|&x| x == 0) {
            return BigInt::one();
        }
        if let Some(v) = memo.get(rows) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for i in 0..rows.len() {
            // row i occupies columns i .. i + rows[i]; its last box is a corner
            // when the row below does not reach under it
            if rows[i] == 0 {
                continue;
            }
            let end = i + rows[i];
            let below = rows.get(i + 1).map_or(0, |&l| if l == 0 { 0 } else { i + 1 + l });
            if below < end {
                rows[i] -= 1;
                total += count(rows, memo);
                rows[i] += 1;
            }
        }
        memo.insert(rows.clone(), total.clone());
        total
    }
    let mut rows: Vec<usize> = (1..=r).rev().collect();
    count(&mut rows, &mut Default::default())
}

#[test]
fn lagrangian_grassmannian_degrees() {
    for r in 1..=7usize {
        let n = r * (r + 1) / 2;
        let oracle = shifted_staircase_tableaux(r) << (n - r);
        assert_eq!(lg_degree(r).unwrap(), oracle, "r = {r}");
    }
    assert_eq!(lg_degree(3).unwrap(), BigInt::from(16));
    assert_eq!(lg_degree(4).unwrap(), BigInt::from(768));
}

#[test]
fn degree_from_the_ring() {
    for r in 1..=5usize {
        let t = ring_tables(r).unwrap();
        let s1 = t.sigma(1).unwrap();
        let top = t.power(&s1, t.top_weight()).unwrap();
        let d = t.integrate(&top).unwrap();
        assert_eq!(d, Rat::from_integer(lg_degree(r).unwrap()), "r = {r}");
    }
}

#[test]
fn quadratic_relations() {
    // sigma_i^2 = 2 sum_{k>=1} (-1)^{k+1} sigma_{i+k} sigma_{i-k}, sigma_0 = 1
    for r in 2..=5usize {
        let t = ring_tables(r).unwrap();
        let sigma = |j: usize| if j == 0 { t.one() } else { t.sigma(j).unwrap() };
        for i in 1..=r {
            let lhs = t.multiply(&sigma(i), &sigma(i)).unwrap();
            let mut rhs = SchubertElt::zero(r);
            for k in 1..=i {
                if i + k > r {
                    break;
                }
                let sign = if k % 2 == 1 { 2 } else { -2 };
                let term = t.multiply(&sigma(i + k), &sigma(i - k)).unwrap();
                rhs = rhs.add(&term.scale(&int(sign))).unwrap();
            }
            assert_eq!(lhs, rhs, "r = {r}, i = {i}");
        }
        // distinct generators multiply to the monomial basis element
        let p = t.multiply(&sigma(1), &sigma(2)).unwrap();
        assert_eq!(p, SchubertElt::basis(r, StrictPartition::new(vec![2, 1]).unwrap()));
    }
}

#[test]
fn conic_moduli_dimension() {
    // dim LG + c_1 . (conic) + dim M_{0,0}(P^1 image) = r(r+1)/2 + 2(r+1) - 3
    for r in 2..=12usize {
        let m = moduli_dimension(r).unwrap();
        assert_eq!(m.dimension as usize, r * (r + 1) / 2 + 2 * (r + 1) - 3, "r = {r}");
    }
}

type P2 = (Rat, Rat);

/// Generators of the effective cone of `S_6` in an affine section, with the
/// walls of its chamber decomposition.
fn section_positions() -> Vec<(&'static str, P2)> {
    vec![
        ("S", (int(-1), int(0))),
        ("E1", (int(1), int(0))),
        ("E2", (int(0), int(1))),
        ("D2", (int(0), rat(1, 2))),
        ("D1", (rat(1, 5), rat(2, 5))),
        ("D3", (rat(-1, 9), rat(4, 9))),
        ("P", (rat(1, 11), rat(4, 11))),
    ]
}

const SECTION_WALLS: [(&str, &str); 13] = [
    ("S", "E2"),
    ("E1", "E2"),
    ("S", "E1"),
    ("D3", "D2"),
    ("D2", "D1"),
    ("D1", "D3"),
    ("D2", "E2"),
    ("D1", "E1"),
    ("D3", "S"),
    ("D3", "E1"),
    ("D1", "S"),
    ("D3", "E2"),
    ("E2", "D1"),
];

fn lookup(name: &str) -> P2 {
    section_positions().into_iter().find(|(n, _)| *n == name).unwrap().1
}

/// Projective map sending the classes of S, E1, E2, D2 to their section
/// positions.
fn section_map() -> QMatrix {
    let l = ledger_s(3).unwrap();
    let names = ["S", "E1", "E2"];
    let src = QMatrix::from_rows(
        (0..3)
            .map(|i| names.iter().map(|n| l.class(n).unwrap().coords()[i].clone()).collect())
            .collect(),
    )
    .unwrap();
    let hom = |p: P2| vec![p.0, p.1, int(1)];
    let dst = QMatrix::from_rows(
        (0..3)
            .map(|i| names.iter().map(|n| hom(lookup(n))[i].clone()).collect())
            .collect(),
    )
    .unwrap();
    let a = linalg::inverse(&src).unwrap().mul_vec(l.class("D2").unwrap().coords());
    let b = linalg::inverse(&dst).unwrap().mul_vec(&hom(lookup("D2")));
    let scale: Vec<Rat> = a.iter().zip(&b).map(|(x, y)| y / x).collect();
    let m = dst.mul(&QMatrix::diagonal(&scale)).unwrap();
    m.mul(&linalg::inverse(&src).unwrap()).unwrap()
}

fn to_section(m: &QMatrix, v: &[Rat]) -> P2 {
    let w = m.mul_vec(v);
    (&w[0] / &w[2], &w[1] / &w[2])
}

#[test]
fn s6_ledger_matches_the_section_positions() {
    let l = ledger_s(3).unwrap();
    let m = section_map();
    for (name, pos) in section_positions() {
        assert_eq!(to_section(&m, l.class(name).unwrap().coords()), pos, "{name}");
    }
}

fn cross(o: &P2, a: &P2, b: &P2) -> Rat {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

fn on_segment(p: &P2, a: &P2, b: &P2) -> bool {
    cross(a, b, p).is_zero()
        && (&p.0 - &a.0) * (&p.0 - &b.0) <= Rat::zero()
        && (&p.1 - &a.1) * (&p.1 - &b.1) <= Rat::zero()
}

/// Bounded faces of the wall arrangement, by Euler's formula.
fn section_faces() -> usize {
    let segs: Vec<(P2, P2)> = SECTION_WALLS.iter().map(|(a, b)| (lookup(a), lookup(b))).collect();
    let mut points: Vec<P2> = Vec::new();
    let add = |p: P2, points: &mut Vec<P2>| {
        if !points.contains(&p) {
            points.push(p);
        }
    };
    for (a, b) in &segs {
        add(a.clone(), &mut points);
        add(b.clone(), &mut points);
    }
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (p, q) = &segs[i];
            let (r, s) = &segs[j];
            let d = (&q.0 - &p.0) * (&s.1 - &r.1) - (&q.1 - &p.1) * (&s.0 - &r.0);
            if d.is_zero() {
                continue;
            }
            let t = ((&r.0 - &p.0) * (&s.1 - &r.1) - (&r.1 - &p.1) * (&s.0 - &r.0)) / &d;
            let x = (&p.0 + &t * (&q.0 - &p.0), &p.1 + &t * (&q.1 - &p.1));
            if on_segment(&x, p, q) && on_segment(&x, r, s) {
                add(x, &mut points);
            }
        }
    }
    let edges: usize = segs
        .iter()
        .map(|(a, b)| points.iter().filter(|p| on_segment(p, a, b)).count() - 1)
        .sum();
    edges + 1 - points.len()
}

#[test]
fn s6_chambers_match_the_section_positions() {
    assert_eq!(section_faces(), 9);
    let fan = cones_of_models(Space::S6).unwrap().fan;
    assert_eq!(fan.len(), 9);
    let m = section_map();
    let segs: Vec<(P2, P2)> = SECTION_WALLS.iter().map(|(a, b)| (lookup(a), lookup(b))).collect();
    for ch in &fan.chambers {
        let pts: Vec<P2> = ch
            .cone
            .rays()
            .iter()
            .map(|v| to_section(&m, &v.iter().map(|x| Rat::from_integer(x.clone())).collect::<Vec<_>>()))
            .collect();
        assert_eq!(pts.len(), 3, "chambers of this fan are simplicial");
        for i in 0..3 {
            let (a, b) = (&pts[i], &pts[(i + 1) % 3]);
            assert!(
                segs.iter().any(|(p, q)| on_segment(a, p, q) && on_segment(b, p, q)),
                "edge {a:?} {b:?} of {} is not a wall",
                ch.cone
            );
        }
    }
}
