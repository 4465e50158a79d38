//! Finite simplicial complexes on at most 32 vertices and their reduced
//! homology over `Q` or `F_p`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

/// Coefficient field for homology ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Default for Field {
    fn default() -> Self {
        Field::Rationals
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl FromStr for Field {
    type Err = String;

    /// Accepts `QQ`, `Q`, `rationals`, `GF(p)`, `p` for a prime `p`, or `prime`
    /// for `GF(32003)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "q" | "qq" | "rationals" => return Ok(Field::Rationals),
            "prime" => return Ok(Field::Prime(32003)),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let p: u64 = digits.parse().map_err(|_| format!("unknown field `{s}`"))?;
        if !is_prime(p) || p >= 1 << 32 {
            return Err(format!("{p} is not a prime below 2^32"));
        }
        Ok(Field::Prime(p))
    }
}

/// A simplicial complex stored as the set of all its faces (bit masks).
///
/// The void complex has no faces at all; the irrelevant complex `{∅}` has
/// exactly the empty face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground: usize,
    faces: BTreeSet<u32>,
}

impl SimplicialComplex {
    pub fn void(ground: usize) -> Self {
        assert!(ground <= 32, "at most 32 vertices");
        SimplicialComplex { ground, faces: BTreeSet::new() }
    }

    pub fn irrelevant(ground: usize) -> Self {
        Self::from_facets(ground, [0])
    }

    pub fn simplex(ground: usize, facet: u32) -> Self {
        Self::from_facets(ground, [facet])
    }

    /// Downward closure of the given faces.
    pub fn from_facets(ground: usize, facets: impl IntoIterator<Item = u32>) -> Self {
        let mut c = Self::void(ground);
        for f in facets {
            debug_assert!(ground == 32 || f >> ground == 0);
            if c.faces.contains(&f) {
                continue;
            }
            let mut sub = f;
            loop {
                c.faces.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        c
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: u32) -> bool {
        self.faces.contains(&face)
    }

    pub fn faces(&self) -> impl Iterator<Item = u32> + '_ {
        self.faces.iter().copied()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Maximal faces, in increasing mask order.
    pub fn facets(&self) -> Vec<u32> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| (0..self.ground).all(|v| f >> v & 1 == 1 || !self.faces.contains(&(f | 1 << v))))
            .collect()
    }

    /// Largest face size minus one; `None` for the void complex.
    pub fn dimension(&self) -> Option<i32> {
        self.faces.iter().map(|f| f.count_ones() as i32 - 1).max()
    }

    /// Number of faces of each dimension `-1, 0, 1, …`.
    pub fn f_vector(&self) -> Vec<usize> {
        let Some(d) = self.dimension() else { return Vec::new() };
        let mut f = vec![0; (d + 2) as usize];
        for face in &self.faces {
            f[face.count_ones() as usize] += 1;
        }
        f
    }

    /// A vertex lying in every facet makes a nonvoid complex a cone.
    pub fn is_cone(&self) -> bool {
        let common = self.facets().into_iter().fold(u32::MAX, |a, f| a & f);
        !self.is_void() && common != 0
    }
}

/// Reduced homology ranks; index `k` holds `dim H̃_{k-1}`. The void complex
/// yields an empty vector.
pub fn homology_ranks(c: &SimplicialComplex, field: Field) -> Vec<usize> {
    let f = c.f_vector();
    if f.is_empty() {
        return f;
    }
    if c.is_cone() {
        return vec![0; f.len()];
    }
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); f.len()];
    for face in c.faces() {
        by_size[face.count_ones() as usize].push(face);
    }
    // rank of the boundary from size-k faces to size-(k-1) faces
    let mut ranks = vec![0usize; f.len() + 1];
    for k in 1..f.len() {
        let index: HashMap<u32, usize> = by_size[k - 1].iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let rows: Vec<Vec<(usize, i64)>> = by_size[k]
            .iter()
            .map(|&face| {
                let mut row = Vec::with_capacity(k);
                let mut sign = 1i64;
                for v in 0..32 {
                    if face >> v & 1 == 1 {
                        row.push((index[&(face & !(1 << v))], sign));
                        sign = -sign;
                    }
                }
                row.sort_unstable();
                row
            })
            .collect();
        ranks[k] = matrix_rank(&rows, by_size[k - 1].len(), field);
    }
    (0..f.len()).map(|k| f[k] - ranks[k] - ranks[k + 1]).collect()
}

/// Rank of a sparse integer matrix given by rows of `(column, value)` pairs.
pub fn matrix_rank(rows: &[Vec<(usize, i64)>], ncols: usize, field: Field) -> usize {
    match field {
        Field::Prime(p) => rank_mod_p(rows, ncols, p),
        Field::Rationals => rank_rational(rows, ncols),
    }
}

type SparseRow = BTreeMap<usize, i64>;

/// Sparse elimination restricted to unit pivots. Returns the number of
/// pivots and the untouched remainder, or `None` on overflow.
fn unit_pivot_phase(rows: &[Vec<(usize, i64)>], ncols: usize) -> Option<(usize, Vec<SparseRow>)> {
    let mut rows: Vec<SparseRow> = rows.iter().map(|r| r.iter().copied().filter(|e| e.1 != 0).collect()).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            col_rows[c].insert(i);
        }
    }
    let mut active = vec![true; rows.len()];
    let mut pivots = 0;
    for c in 0..ncols {
        let pivot = col_rows[c]
            .iter()
            .copied()
            .filter(|&i| rows[i][&c].abs() == 1)
            .min_by_key(|&i| rows[i].len());
        let Some(p) = pivot else { continue };
        active[p] = false;
        pivots += 1;
        let prow = std::mem::take(&mut rows[p]);
        for &k in prow.keys() {
            col_rows[k].remove(&p);
        }
        let pv = prow[&c];
        let targets: Vec<usize> = col_rows[c].iter().copied().collect();
        for t in targets {
            // row_t -= (a / pv) * row_p, exact since pv = ±1
            let factor = rows[t][&c] * pv;
            for (&k, &v) in &prow {
                let e = rows[t].entry(k).or_insert(0);
                let was_zero = *e == 0;
                *e = e.checked_sub(factor.checked_mul(v)?)?;
                if *e == 0 {
                    rows[t].remove(&k);
                    col_rows[k].remove(&t);
                } else if was_zero {
                    col_rows[k].insert(t);
                }
            }
        }
    }
    let rest = rows
        .into_iter()
        .zip(active)
        .filter(|(r, a)| *a && !r.is_empty())
        .map(|(r, _)| r)
        .collect();
    Some((pivots, rest))
}

fn rank_rational(rows: &[Vec<(usize, i64)>], ncols: usize) -> usize {
    match unit_pivot_phase(rows, ncols) {
        Some((pivots, rest)) => pivots + dense_rank(&rest),
        None => {
            let all: Vec<SparseRow> = rows.iter().map(|r| r.iter().copied().collect()).collect();
            bareiss_bigint(&densify(&all))
        }
    }
}

fn densify(rows: &[SparseRow]) -> Vec<Vec<i64>> {
    let cols: BTreeSet<usize> = rows.iter().flat_map(|r| r.keys().copied()).collect();
    let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    rows.iter()
        .map(|r| {
            let mut d = vec![0i64; cols.len()];
            for (&c, &v) in r {
                d[pos[&c]] = v;
            }
            d
        })
        .collect()
}

fn dense_rank(rows: &[SparseRow]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = densify(rows);
    bareiss_i128(&m).unwrap_or_else(|| bareiss_bigint(&m))
}

/// Fraction-free elimination in `i128`; `None` on overflow.
fn bareiss_i128(m: &[Vec<i64>]) -> Option<usize> {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (nr, nc) = (a.len(), a.first().map_or(0, Vec::len));
    let mut prev: i128 = 1;
    let mut rank = 0;
    for c in 0..nc {
        let Some(p) = (rank..nr).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..nr {
            for k in c + 1..nc {
                let v = a[rank][c].checked_mul(a[r][k])?.checked_sub(a[r][c].checked_mul(a[rank][k])?)?;
                a[r][k] = v / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    Some(rank)
}

fn bareiss_bigint(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let (nr, nc) = (a.len(), a.first().map_or(0, Vec::len));
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let zero = BigInt::from(0);
    for c in 0..nc {
        let Some(p) = (rank..nr).find(|&r| a[r][c] != zero) else { continue };
        a.swap(rank, p);
        for r in rank + 1..nr {
            for k in c + 1..nc {
                let v = &a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k];
                a[r][k] = v / &prev;
            }
            a[r][c] = zero.clone();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

fn rank_mod_p(rows: &[Vec<(usize, i64)>], ncols: usize, p: u64) -> usize {
    let red = |v: i64| v.rem_euclid(p as i64) as u64;
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inv = |a: u64| {
        // Fermat
        let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let mut rows: Vec<BTreeMap<usize, u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&(c, v)| (c, red(v))).filter(|e| e.1 != 0).collect())
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            col_rows[c].insert(i);
        }
    }
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = col_rows[c].iter().copied().min_by_key(|&i| rows[i].len()) else { continue };
        rank += 1;
        let prow = std::mem::take(&mut rows[piv]);
        for &k in prow.keys() {
            col_rows[k].remove(&piv);
        }
        let pinv = inv(prow[&c]);
        let targets: Vec<usize> = col_rows[c].iter().copied().collect();
        for t in targets {
            let factor = mul(rows[t][&c], pinv);
            for (&k, &v) in &prow {
                let e = rows[t].entry(k).or_insert(0);
                let was_zero = *e == 0;
                *e = (*e + p - mul(factor, v)) % p;
                if *e == 0 {
                    rows[t].remove(&k);
                    col_rows[k].remove(&t);
                } else if was_zero {
                    col_rows[k].insert(t);
                }
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn void_and_irrelevant_differ() {
        let void = SimplicialComplex::void(3);
        let irr = SimplicialComplex::irrelevant(3);
        assert_ne!(void, irr);
        assert!(homology_ranks(&void, Q).is_empty());
        assert_eq!(homology_ranks(&irr, Q), vec![1]);
    }

    #[test]
    fn hollow_triangle() {
        let c = SimplicialComplex::from_facets(3, [0b011, 0b110, 0b101]);
        assert_eq!(homology_ranks(&c, Q), vec![0, 0, 1]);
        assert_eq!(c.facets(), vec![0b011, 0b101, 0b110]);
    }

    #[test]
    fn two_points() {
        let c = SimplicialComplex::from_facets(2, [0b01, 0b10]);
        assert_eq!(homology_ranks(&c, Q), vec![0, 1]);
    }

    #[test]
    fn full_simplex_is_acyclic() {
        let c = SimplicialComplex::simplex(4, 0b1111);
        assert_eq!(homology_ranks(&c, Q), vec![0; 5]);
        assert_eq!(c.f_vector(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn boundary_of_tetrahedron_without_cone_shortcut() {
        let facets = [0b0111, 0b1011, 0b1101, 0b1110];
        let c = SimplicialComplex::from_facets(4, facets);
        assert!(!c.is_cone());
        assert_eq!(homology_ranks(&c, Q), vec![0, 0, 0, 1]);
        assert_eq!(homology_ranks(&c, Field::Prime(2)), vec![0, 0, 0, 1]);
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        // six-vertex triangulation of RP^2
        let tri = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let c = SimplicialComplex::from_facets(6, tri.iter().map(|t| t.iter().fold(0u32, |m, &v| m | 1 << v)));
        assert_eq!(homology_ranks(&c, Q), vec![0, 0, 0, 0]);
        assert_eq!(homology_ranks(&c, Field::Prime(2)), vec![0, 0, 1, 1]);
        assert_eq!(homology_ranks(&c, Field::Prime(32003)), vec![0, 0, 0, 0]);
    }

    #[test]
    fn field_parsing() {
        assert_eq!("QQ".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("GF(7)".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!("32003".parse::<Field>().unwrap(), Field::Prime(32003));
        assert_eq!("prime".parse::<Field>().unwrap(), Field::Prime(32003));
        assert!("GF(8)".parse::<Field>().is_err());
        assert_eq!(Field::Prime(5).to_string(), "GF(5)");
    }

    #[test]
    fn bareiss_paths_agree() {
        let m = vec![vec![2, 4, 6], vec![1, 3, 5], vec![3, 7, 11]];
        assert_eq!(bareiss_i128(&m), Some(2));
        assert_eq!(bareiss_bigint(&m), 2);
        let rows: Vec<Vec<(usize, i64)>> =
            m.iter().map(|r| r.iter().copied().enumerate().collect()).collect();
        assert_eq!(matrix_rank(&rows, 3, Q), 2);
        assert_eq!(matrix_rank(&rows, 3, Field::Prime(2)), 1);
    }

    proptest! {
        #[test]
        fn euler_characteristic(facets in proptest::collection::vec(0u32..128, 1..7)) {
            let c = SimplicialComplex::from_facets(7, facets);
            let f = c.f_vector();
            let h = homology_ranks(&c, Q);
            let alt = |v: &[usize]| v.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>();
            prop_assert_eq!(alt(&f), alt(&h));
        }

        #[test]
        fn integer_ranks_match_large_prime(m in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 1..6)) {
            let rows: Vec<Vec<(usize, i64)>> = m.iter().map(|r| r.iter().copied().enumerate().collect()).collect();
            let dense = bareiss_bigint(&m);
            prop_assert_eq!(matrix_rank(&rows, 5, Q), dense);
            prop_assert_eq!(matrix_rank(&rows, 5, Field::Prime(1_000_003)), dense);
        }
    }
}
