//! Finite posets given by an order predicate, and checks that a map between
//! two of them is an order-reversing bijection.

use serde::Serialize;

/// Outcome of [`check_anti_isomorphism`]. `counterexamples` is empty exactly
/// when the map is bijective and order-reversing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PosetReport {
    pub elements: usize,
    pub relations: usize,
    pub map: String,
    pub order_reversing: bool,
    pub bijective: bool,
    pub counterexamples: Vec<String>,
}

impl PosetReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks that `map: A → B` is a bijection with `x ≤ y ⇔ map(y) ≤ map(x)`.
/// `map[i] = None` marks an element whose image is not in B.
pub fn check_anti_isomorphism(
    name: &str,
    a_len: usize,
    a_le: impl Fn(usize, usize) -> bool,
    b_len: usize,
    b_le: impl Fn(usize, usize) -> bool,
    map: &[Option<usize>],
) -> PosetReport {
    let mut counterexamples = Vec::new();
    let mut hit = vec![0usize; b_len];
    for (i, m) in map.iter().enumerate() {
        match m {
            Some(j) => hit[*j] += 1,
            None => counterexamples.push(format!("element {i} has no image")),
        }
    }
    for (j, &h) in hit.iter().enumerate() {
        if h != 1 {
            counterexamples.push(format!("target {j} is hit {h} times"));
        }
    }
    let bijective = a_len == map.len() && counterexamples.is_empty();
    let mut relations = 0;
    let mut order_reversing = true;
    for x in 0..a_len {
        for y in 0..a_len {
            let lhs = a_le(x, y);
            relations += lhs as usize;
            if let (Some(mx), Some(my)) = (map[x], map[y]) {
                if lhs != b_le(my, mx) {
                    order_reversing = false;
                    counterexamples.push(format!("order mismatch on ({x}, {y})"));
                }
            }
        }
    }
    PosetReport { elements: a_len, relations, map: name.to_string(), order_reversing, bijective, counterexamples }
}

/// Indices of the minimal elements.
pub fn minimal_elements(len: usize, le: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    (0..len).filter(|&x| !(0..len).any(|y| y != x && le(y, x) && !le(x, y))).collect()
}
