//! Exterior algebra on `n ≤ 4` generators over GF(2), and the statement that
//! every nonzero element divides the top form.
//!
//! A blade is a subset of the generators (bitmask); an element is a set of
//! blades (bitmask over the `2^n` blades). Signs vanish in characteristic 2.

use super::report::DegreeResult;

pub const MAX_GENERATORS: u32 = 4;

/// `x ∧ y` for elements given as blade sets over `n` generators.
pub fn wedge(n: u32, x: u32, y: u32) -> u32 {
    let blades = 1u32 << n;
    let mut out = 0u32;
    for a in (0..blades).filter(|a| x >> a & 1 == 1) {
        for b in (0..blades).filter(|b| y >> b & 1 == 1) {
            if a & b == 0 {
                out ^= 1 << (a | b);
            }
        }
    }
    out
}

/// The top form `v₁ ∧ … ∧ v_n` as an element.
pub fn top_form(n: u32) -> u32 {
    1 << ((1u32 << n) - 1)
}

/// Candidates `y` in order of increasing number of blades, then numerically.
fn candidates(n: u32) -> Vec<u32> {
    let count = 1u64 << (1u32 << n);
    let mut ys: Vec<u32> = (1..count).map(|y| y as u32).collect();
    ys.sort_by_key(|y| (y.count_ones(), *y));
    ys
}

/// Some `y` with `x ∧ y = top`, if one exists.
pub fn find_cofactor(n: u32, x: u32, ordered: &[u32]) -> Option<u32> {
    let top = top_form(n);
    ordered.iter().copied().find(|&y| wedge(n, x, y) == top)
}

/// Exhaustive over all nonzero `x`; the result's `degree` is `n`.
pub fn top_form_divisibility(n: u32) -> DegreeResult {
    assert!((1..=MAX_GENERATORS).contains(&n), "1 ≤ n ≤ 4");
    let ordered = candidates(n);
    let elements = (1u64 << (1u32 << n)) - 1;
    let mut r = DegreeResult::new("top-form", n).dim("nonzero_elements", elements as usize);
    let mut max_blades = 0;
    for x in 1..=elements {
        match find_cofactor(n, x as u32, &ordered) {
            Some(y) => max_blades = max_blades.max(y.count_ones() as usize),
            None => {
                r.require(false, || {
                    format!("no cofactor for element {}", render(n, x as u32))
                });
                break;
            }
        }
    }
    r.dim("max_cofactor_blades", max_blades)
}

/// Text form such as `1 + v1^v3`.
pub fn render(n: u32, x: u32) -> String {
    if x == 0 {
        return "0".into();
    }
    (0..1u32 << n)
        .filter(|a| x >> a & 1 == 1)
        .map(|a| {
            if a == 0 {
                "1".to_string()
            } else {
                (0..n)
                    .filter(|i| a >> i & 1 == 1)
                    .map(|i| format!("v{}", i + 1))
                    .collect::<Vec<_>>()
                    .join("^")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{BitVec, SpanSolver};

    #[test]
    fn wedge_basics() {
        // v1 ∧ v2 = v1v2, v1 ∧ v1 = 0, 1 ∧ x = x.
        assert_eq!(wedge(2, 1 << 1, 1 << 2), 1 << 3);
        assert_eq!(wedge(2, 1 << 1, 1 << 1), 0);
        assert_eq!(wedge(3, 1, 0b1010_0110), 0b1010_0110);
        assert_eq!(render(2, 1 | 1 << 3), "1 + v1^v2");
    }

    #[test]
    fn small_cases() {
        for n in 1..=3 {
            let r = top_form_divisibility(n);
            assert!(r.pass, "n = {n}");
        }
        assert_eq!(top_form_divisibility(2).dims["nonzero_elements"], 15);
        assert_eq!(top_form_divisibility(3).dims["nonzero_elements"], 255);
    }

    /// Independent route: `y ↦ x ∧ y` is linear; solve for the top form.
    #[test]
    fn linear_solve_agrees() {
        for n in 1..=3u32 {
            let blades = 1usize << n;
            let top = BitVec::unit(blades, blades - 1);
            for x in 1u32..(1 << blades) {
                let columns: Vec<BitVec> = (0..blades)
                    .map(|b| {
                        let img = wedge(n, x, 1 << b);
                        BitVec::from_indices(blades, (0..blades).filter(|i| img >> i & 1 == 1))
                    })
                    .collect();
                let solver = SpanSolver::new(blades, &columns).unwrap();
                let y = solver.solve(&top).unwrap().expect("top form reachable");
                let y_mask = y.ones().fold(0u32, |acc, b| acc | 1 << b);
                assert_eq!(wedge(n, x, y_mask), top_form(n));
            }
        }
    }
}
