//! Closed-form spanning-tree counts for the graph families used by the
//! constructions: complete bipartite blocks, necklaces, generalized theta
//! graphs and the `H_r` gadget.
//!
//! Every formula is evaluated over exact rationals and only converted to an
//! integer count at the end; a non-integral result is reported as an error
//! rather than rounded, since it can only come from inconsistent inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::kirchhoff::TreeCount;
use crate::rational::{pow, product, sum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("{formula}: value {value} is not a non-negative integer")]
    NonIntegral { formula: &'static str, value: String },
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, FormError>;

fn q(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn integral(formula: &'static str, x: BigRational) -> Result<TreeCount> {
    if !x.is_integer() || x.is_negative() {
        return Err(FormError::NonIntegral {
            formula,
            value: x.to_string(),
        });
    }
    Ok(x.to_integer().magnitude().clone())
}

/// Part sizes of a complete bipartite block `K_{r,s}`: `|X| = r`, `|Y| = s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteBlockParams {
    pub r: u64,
    pub s: u64,
}

impl BipartiteBlockParams {
    pub fn new(r: u64, s: u64) -> Self {
        assert!(r >= 1 && s >= 1, "K_(r,s) needs r, s >= 1");
        BipartiteBlockParams { r, s }
    }

    pub fn tau(&self) -> TreeCount {
        tau_complete_bipartite(self.r, self.s)
    }

    /// Density of any edge; `K_{r,s}` is edge-transitive.
    pub fn edge_density(&self) -> BigRational {
        density_edge_transitive(self.r + self.s, self.r * self.s)
    }
}

/// Position of a non-key necklace edge relative to its block's key edge
/// `u_k v_k`, where `u_k` lies in `X_k` and `v_k` in `Y_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Key,
    /// Shares the endpoint `u_k` with the key edge.
    Type1AtU,
    /// Shares the endpoint `v_k` with the key edge.
    Type1AtV,
    /// Disjoint from the key edge.
    Type2,
}

/// Vertices a subtree of `K_{r,s}` has in each part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubtreeProfile {
    pub m: u64,
    pub n: u64,
}

pub fn tau_complete_bipartite(r: u64, s: u64) -> TreeCount {
    assert!(r >= 1 && s >= 1, "K_(r,s) needs r, s >= 1");
    TreeCount::from(r).pow((s - 1) as u32) * TreeCount::from(s).pow((r - 1) as u32)
}

/// `(n - 1) / m`, the common density of every edge of an edge-transitive
/// graph with `n` vertices and `m` edges.
pub fn density_edge_transitive(n_vertices: u64, m_edges: u64) -> BigRational {
    assert!(m_edges >= 1 && m_edges + 1 >= n_vertices, "need m >= n - 1 >= 0");
    BigRational::new(BigInt::from(n_vertices - 1), BigInt::from(m_edges))
}

/// Spanning trees of `K_{r,s}` containing a fixed subtree with the given
/// profile: `(ms + nr - mn) r^(s-n-1) s^(r-m-1)`.
///
/// The exponents reach -1 for spanning subtrees; the product is still an
/// integer there, so the formula is evaluated rationally.
pub fn gd_tree_count(r: u64, s: u64, profile: SubtreeProfile) -> Result<TreeCount> {
    let SubtreeProfile { m, n } = profile;
    if r == 0 || s == 0 || m > r || n > s || m + n == 0 || (m + n >= 2 && (m == 0 || n == 0)) {
        return Err(FormError::Domain(format!(
            "profile (m={m}, n={n}) is not a subtree of K_({r},{s})"
        )));
    }
    let lead = q(m * s + n * r) - q(m * n);
    let value = lead
        * pow(&q(r), s as i64 - n as i64 - 1)
        * pow(&q(s), r as i64 - m as i64 - 1);
    integral("subtree count", value)
}

/// Spanning trees of `K_{r,s}` containing a fixed matching of size `l`:
/// `(r+s)^(l-1) (r+s-l) r^(s-l-1) s^(r-l-1)`.
pub fn gd_matching_count(r: u64, s: u64, l: u64) -> Result<TreeCount> {
    if l == 0 || l > r.min(s) {
        return Err(FormError::Domain(format!(
            "no matching of size {l} in K_({r},{s})"
        )));
    }
    let value = pow(&q(r + s), l as i64 - 1)
        * q(r + s - l)
        * pow(&q(r), s as i64 - l as i64 - 1)
        * pow(&q(s), r as i64 - l as i64 - 1);
    integral("matching count", value)
}

/// Tree count and key-edge density of one necklace block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForm {
    pub tau: TreeCount,
    pub key_density: BigRational,
}

impl BlockForm {
    pub fn new(tau: TreeCount, key_density: BigRational) -> Self {
        BlockForm { tau, key_density }
    }
}

fn check_blocks(blocks: &[BlockForm]) -> Result<()> {
    if blocks.len() < 2 {
        return Err(FormError::Domain(
            "a necklace needs at least two blocks".into(),
        ));
    }
    for (i, b) in blocks.iter().enumerate() {
        if !b.key_density.is_positive() || b.key_density > BigRational::one() {
            return Err(FormError::Domain(format!(
                "block {i}: key density {} outside (0, 1]",
                b.key_density
            )));
        }
    }
    Ok(())
}

fn tau_product(blocks: &[BlockForm]) -> BigRational {
    blocks
        .iter()
        .map(|b| BigRational::from_integer(b.tau.clone().into()))
        .fold(BigRational::one(), |acc, x| acc * x)
}

/// `prod tau_i * sum d_i` for a necklace of the given blocks.
pub fn necklace_tau(blocks: &[BlockForm]) -> Result<TreeCount> {
    check_blocks(blocks)?;
    let densities = sum(blocks.iter().map(|b| &b.key_density));
    integral("necklace tree count", tau_product(blocks) * densities)
}

/// Trees of the necklace through an edge `xy` of block `k` (0-based):
/// `prod tau_i * [b_k / tau_k + d_k(xy) * sum_{i != k} d_i]`, where `b_k`
/// counts spanning thickets of block `k` that separate its key vertices and
/// contain `xy`.
pub fn necklace_tau_edge(
    blocks: &[BlockForm],
    k: usize,
    thicket: &TreeCount,
    local_density: &BigRational,
) -> Result<TreeCount> {
    check_blocks(blocks)?;
    if k >= blocks.len() {
        return Err(FormError::Domain(format!("block index {k} out of range")));
    }
    let others = sum(
        blocks
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, b)| &b.key_density),
    );
    let tau_k = BigRational::from_integer(blocks[k].tau.clone().into());
    let bracket = BigRational::from_integer(thicket.clone().into()) / tau_k + local_density * others;
    integral("necklace edge count", tau_product(blocks) * bracket)
}

/// Trees through the key edge of block `k`: no thicket of block `k` can
/// contain its own key edge, and the local density is the key density.
pub fn necklace_key_tau(blocks: &[BlockForm], k: usize) -> Result<TreeCount> {
    check_blocks(blocks)?;
    if k >= blocks.len() {
        return Err(FormError::Domain(format!("block index {k} out of range")));
    }
    necklace_tau_edge(blocks, k, &TreeCount::zero(), &blocks[k].key_density)
}

fn bipartite_forms(blocks: &[BipartiteBlockParams]) -> Vec<BlockForm> {
    blocks
        .iter()
        .map(|b| BlockForm::new(b.tau(), b.edge_density()))
        .collect()
}

/// Trees through a non-key edge of block `k` (0-based) in a necklace of
/// complete bipartite blocks, from the type-1 / type-2 closed forms.
pub fn bipartite_type_edge_tau(
    blocks: &[BipartiteBlockParams],
    k: usize,
    class: EdgeClass,
) -> Result<TreeCount> {
    if blocks.len() < 2 || k >= blocks.len() {
        return Err(FormError::Domain(format!(
            "block {k} of a {}-block necklace",
            blocks.len()
        )));
    }
    let BipartiteBlockParams { r, s } = blocks[k];
    let correction = match class {
        EdgeClass::Key => {
            return Err(FormError::Domain(
                "key edges use the necklace key-edge formula".into(),
            ))
        }
        EdgeClass::Type1AtU if s >= 2 => (r - 1) * (r - 1),
        EdgeClass::Type1AtV if r >= 2 => (s - 1) * (s - 1),
        EdgeClass::Type2 if r >= 2 && s >= 2 => 1,
        _ => {
            return Err(FormError::Domain(format!(
                "K_({r},{s}) has no {class:?} edge"
            )))
        }
    };
    let forms = bipartite_forms(blocks);
    let all = sum(forms.iter().map(|b| &b.key_density));
    let bracket = &forms[k].key_density * all - BigRational::new(correction.into(), (r * r * s * s).into());
    integral("type edge count", tau_product(&forms) * bracket)
}

/// Key-edge tree count of block `k` in a complete bipartite necklace.
pub fn bipartite_key_edge_tau(blocks: &[BipartiteBlockParams], k: usize) -> Result<TreeCount> {
    necklace_key_tau(&bipartite_forms(blocks), k)
}

pub fn bipartite_necklace_tau(blocks: &[BipartiteBlockParams]) -> Result<TreeCount> {
    necklace_tau(&bipartite_forms(blocks))
}

fn check_theta(paths: &[u64]) -> Result<()> {
    if paths.len() < 2 || paths.contains(&0) {
        return Err(FormError::Domain(
            "a theta graph needs at least two paths of positive length".into(),
        ));
    }
    Ok(())
}

fn reciprocal_sum(paths: &[u64]) -> BigRational {
    paths
        .iter()
        .map(|&r| BigRational::new(BigInt::one(), r.into()))
        .fold(BigRational::zero(), |acc, x| acc + x)
}

/// `prod r_i * sum 1/r_i` for `Θ(r_1, ..., r_n)`.
pub fn theta_tau(paths: &[u64]) -> Result<TreeCount> {
    check_theta(paths)?;
    let prod = product(paths.iter().map(|&r| q(r)).collect::<Vec<_>>().iter());
    integral("theta tree count", prod * reciprocal_sum(paths))
}

/// Trees through an edge of path `k` (0-based):
/// `prod r_i * (sum 1/r_i - (1/r_k) sum_{i != k} 1/r_i)`.
pub fn theta_tau_edge(paths: &[u64], k: usize) -> Result<TreeCount> {
    check_theta(paths)?;
    if k >= paths.len() {
        return Err(FormError::Domain(format!("path index {k} out of range")));
    }
    let prod = product(paths.iter().map(|&r| q(r)).collect::<Vec<_>>().iter());
    let all = reciprocal_sum(paths);
    let rk = BigRational::new(BigInt::one(), paths[k].into());
    let others = &all - &rk;
    integral("theta edge count", prod * (all - rk * others))
}

/// Closed forms for the gadget `H_r`: a key edge `uv` plus `r` disjoint
/// paths of length two from `u` to `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HGadgetForms {
    pub tau: TreeCount,
    pub key_density: BigRational,
    /// `None` for `H_0`, which is the bare key edge.
    pub nonkey_density: Option<BigRational>,
    /// Thickets separating `u`, `v` through a fixed non-key edge.
    pub thicket: Option<TreeCount>,
}

impl HGadgetForms {
    pub fn block(&self) -> BlockForm {
        BlockForm::new(self.tau.clone(), self.key_density.clone())
    }
}

/// `tau = 2^(r-1) (r+2)`, key density `2/(r+2)`, non-key density
/// `(r+3)/(2(r+2))`, thicket count `2^(r-1)`. `H_0` is taken as the single
/// edge with `tau = 1`, density 1.
pub fn h_gadget_forms(r: u64) -> HGadgetForms {
    if r == 0 {
        return HGadgetForms {
            tau: TreeCount::one(),
            key_density: BigRational::one(),
            nonkey_density: None,
            thicket: None,
        };
    }
    let half_power = TreeCount::one() << (r - 1);
    HGadgetForms {
        tau: &half_power * (r + 2),
        key_density: BigRational::new(2.into(), (r + 2).into()),
        nonkey_density: Some(BigRational::new((r + 3).into(), (2 * (r + 2)).into())),
        thicket: Some(half_power),
    }
}

fn h_terms(rs: &[u64]) -> (BigRational, BigRational) {
    let prod = rs
        .iter()
        .map(|&r| pow(&q(2), r as i64 - 1) * q(r + 2))
        .fold(BigRational::one(), |acc, x| acc * x);
    let shifted = rs
        .iter()
        .map(|&r| BigRational::new(2.into(), (r + 2).into()))
        .fold(BigRational::zero(), |acc, x| acc + x);
    (prod, shifted)
}

/// `prod 2^(r_i-1)(r_i+2) * sum 2/(r_i+2)` for `N(H_{r_1}, ..., H_{r_n})`.
pub fn h_necklace_tau(rs: &[u64]) -> Result<TreeCount> {
    if rs.len() < 2 {
        return Err(FormError::Domain("a necklace needs at least two blocks".into()));
    }
    let (prod, shifted) = h_terms(rs);
    integral("H necklace tree count", prod * shifted)
}

/// Trees through the key edge of block `k` (0-based).
pub fn h_necklace_key_tau(rs: &[u64], k: usize) -> Result<TreeCount> {
    if rs.len() < 2 || k >= rs.len() {
        return Err(FormError::Domain(format!("block {k} of {} blocks", rs.len())));
    }
    let (prod, shifted) = h_terms(rs);
    let own = BigRational::new(2.into(), (rs[k] + 2).into());
    integral("H necklace key count", prod * (shifted - &own) * own)
}

/// Trees through a non-key edge of block `k` (0-based, `r_k >= 1`):
/// `prod 2^(r_i-1)(r_i+2) * [(r_k+3)/(2(r_k+2)) sum 2/(r_i+2) - 1/(r_k+2)^2]`.
pub fn h_necklace_nonkey_tau(rs: &[u64], k: usize) -> Result<TreeCount> {
    if rs.len() < 2 || k >= rs.len() || rs[k] == 0 {
        return Err(FormError::Domain(format!(
            "block {k} has no non-key edge or does not exist"
        )));
    }
    let (prod, shifted) = h_terms(rs);
    let rk = rs[k];
    let bracket = BigRational::new((rk + 3).into(), (2 * (rk + 2)).into()) * shifted
        - BigRational::new(1.into(), ((rk + 2) * (rk + 2)).into());
    integral("H necklace non-key count", prod * bracket)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn count(n: u64) -> TreeCount {
        TreeCount::from(n)
    }

    #[test]
    fn complete_bipartite_counts() {
        assert_eq!(tau_complete_bipartite(1, 1), count(1));
        assert_eq!(tau_complete_bipartite(2, 3), count(12));
        assert_eq!(tau_complete_bipartite(4, 3), count(432));
    }

    #[test]
    fn edge_transitive_densities() {
        assert_eq!(density_edge_transitive(6, 9), ratio(5, 9));
        assert_eq!(density_edge_transitive(7, 7), ratio(6, 7));
        assert_eq!(density_edge_transitive(4, 6), ratio(1, 2));
    }

    #[test]
    fn subtree_counts() {
        let path = SubtreeProfile { m: 1, n: 2 };
        assert_eq!(gd_tree_count(4, 3, path).unwrap(), count(81));
        assert_eq!(gd_tree_count(2, 3, SubtreeProfile { m: 1, n: 1 }).unwrap(), count(8));
        // single edge agrees with edge-transitive density times tau
        for (r, s) in [(2, 2), (3, 4), (5, 2)] {
            let edge = gd_tree_count(r, s, SubtreeProfile { m: 1, n: 1 }).unwrap();
            let b = BipartiteBlockParams::new(r, s);
            let want = BigRational::from_integer(b.tau().into()) * b.edge_density();
            assert_eq!(BigRational::from_integer(edge.into()), want);
        }
        // whole K_{1,3} as its own spanning tree
        assert_eq!(gd_tree_count(1, 3, SubtreeProfile { m: 1, n: 3 }).unwrap(), count(1));
        assert!(gd_tree_count(2, 2, SubtreeProfile { m: 3, n: 1 }).is_err());
        assert!(gd_tree_count(2, 2, SubtreeProfile { m: 2, n: 0 }).is_err());
    }

    #[test]
    fn matching_counts() {
        assert_eq!(gd_matching_count(3, 3, 2).unwrap(), count(24));
        assert_eq!(gd_matching_count(4, 3, 2).unwrap(), count(105));
        assert_eq!(
            gd_matching_count(4, 3, 1).unwrap(),
            gd_tree_count(4, 3, SubtreeProfile { m: 1, n: 1 }).unwrap()
        );
        assert!(gd_matching_count(2, 3, 3).is_err());
        assert!(gd_matching_count(2, 3, 0).is_err());
    }

    fn k11_k43_k43() -> Vec<BipartiteBlockParams> {
        vec![
            BipartiteBlockParams::new(1, 1),
            BipartiteBlockParams::new(4, 3),
            BipartiteBlockParams::new(4, 3),
        ]
    }

    #[test]
    fn necklace_counts() {
        let blocks = k11_k43_k43();
        assert_eq!(bipartite_necklace_tau(&blocks).unwrap(), count(373_248));
        assert_eq!(bipartite_key_edge_tau(&blocks, 0).unwrap(), count(186_624));
        let h: Vec<_> = [0, 2, 2, 2, 2].iter().map(|&r| h_gadget_forms(r).block()).collect();
        assert_eq!(necklace_tau(&h).unwrap(), count(12_288));
        assert!(necklace_tau(&h[..1]).is_err());
    }

    #[test]
    fn necklace_edge_counts() {
        let blocks = k11_k43_k43();
        let forms = bipartite_forms(&blocks);
        let key = necklace_tau_edge(&forms, 0, &count(0), &ratio(1, 1)).unwrap();
        assert_eq!(key, count(186_624));
        // type-2 edge of block 1: thicket = 2-matching count of K_{4,3}
        let b = gd_matching_count(4, 3, 2).unwrap();
        let t2 = necklace_tau_edge(&forms, 1, &b, &ratio(1, 2)).unwrap();
        assert_eq!(t2, count(185_328));
        // non-key edge of an H_2 block
        let h: Vec<_> = [0, 2, 2, 2, 2].iter().map(|&r| h_gadget_forms(r).block()).collect();
        let nonkey = necklace_tau_edge(&h, 1, &count(2), &ratio(5, 8)).unwrap();
        assert_eq!(nonkey, count(7424));
        assert_eq!(h_necklace_nonkey_tau(&[0, 2, 2, 2, 2], 1).unwrap(), count(7424));
        // inconsistent inputs surface as non-integral
        assert!(matches!(
            necklace_tau_edge(&h, 1, &count(1), &ratio(1, 3)),
            Err(FormError::NonIntegral { .. })
        ));
    }

    #[test]
    fn type_edge_counts() {
        let blocks = k11_k43_k43();
        assert_eq!(bipartite_type_edge_tau(&blocks, 1, EdgeClass::Type2).unwrap(), count(185_328));
        assert_eq!(bipartite_type_edge_tau(&blocks, 1, EdgeClass::Type1AtU).unwrap(), count(174_960));
        assert!(bipartite_type_edge_tau(&blocks, 1, EdgeClass::Key).is_err());
        assert!(bipartite_type_edge_tau(&blocks, 0, EdgeClass::Type2).is_err());
        for (r, s) in [(2, 2), (4, 3), (6, 5), (3, 7)] {
            let bl = vec![BipartiteBlockParams::new(1, 1), BipartiteBlockParams::new(r, s)];
            let t2 = bipartite_type_edge_tau(&bl, 1, EdgeClass::Type2).unwrap();
            let tu = bipartite_type_edge_tau(&bl, 1, EdgeClass::Type1AtU).unwrap();
            let tv = bipartite_type_edge_tau(&bl, 1, EdgeClass::Type1AtV).unwrap();
            assert!(tu <= t2 && tv <= t2);
            if r > 2 {
                assert!(tu < t2);
            }
            if s > 2 {
                assert!(tv < t2);
            }
        }
    }

    #[test]
    fn theta_counts() {
        assert_eq!(theta_tau(&[1, 2, 3]).unwrap(), count(11));
        assert_eq!(theta_tau_edge(&[1, 2, 3], 0).unwrap(), count(6));
        assert_eq!(theta_tau(&[1, 3, 3]).unwrap(), count(15));
        assert_eq!(theta_tau_edge(&[1, 3, 3], 0).unwrap(), count(9));
        assert_eq!(theta_tau(&[1, 1]).unwrap(), count(2));
        assert_eq!(theta_tau_edge(&[1, 1], 1).unwrap(), count(1));
        assert!(theta_tau(&[4]).is_err());
        assert!(theta_tau(&[1, 0]).is_err());
    }

    #[test]
    fn theta_minimum_at_unit_path() {
        for paths in [vec![1, 2, 3], vec![1, 3, 3], vec![1, 2, 2, 5], vec![1, 2, 2]] {
            let key = theta_tau_edge(&paths, 0).unwrap();
            for k in 1..paths.len() {
                assert!(key < theta_tau_edge(&paths, k).unwrap(), "{paths:?} path {k}");
            }
        }
        // with only two paths the theta graph is a cycle and every edge ties
        assert_eq!(theta_tau_edge(&[1, 4], 0).unwrap(), theta_tau_edge(&[1, 4], 1).unwrap());
    }

    #[test]
    fn gadget_forms() {
        let h0 = h_gadget_forms(0);
        assert_eq!(h0.tau, count(1));
        assert_eq!(h0.key_density, ratio(1, 1));
        assert!(h0.nonkey_density.is_none());
        let h2 = h_gadget_forms(2);
        assert_eq!(h2.tau, count(8));
        assert_eq!(h2.key_density, ratio(1, 2));
        assert_eq!(h2.nonkey_density, Some(ratio(5, 8)));
        assert_eq!(h2.thicket, Some(count(2)));
        assert_eq!(h_gadget_forms(4).tau, count(48));
    }

    #[test]
    fn h_necklace_forms() {
        let rs = [0, 2, 2, 2, 2];
        assert_eq!(h_necklace_tau(&rs).unwrap(), count(12_288));
        assert_eq!(h_necklace_key_tau(&rs, 0).unwrap(), count(8192));
        // 8^4 * (1/2) * (3 - 1/2)
        assert_eq!(h_necklace_key_tau(&rs, 1).unwrap(), count(5120));
        assert!(h_necklace_nonkey_tau(&rs, 0).is_err());
    }

    #[test]
    fn key_counts_beyond_the_first_block_match_the_determinant() {
        use crate::constructions::{bipartite_necklace, h_necklace};
        use crate::kirchhoff::density_report;
        let n = h_necklace(&[1, 3]);
        let report = density_report(&n.graph).unwrap();
        for k in 0..3 {
            assert_eq!(&h_necklace_key_tau(&[0, 1, 3], k).unwrap(), report.tau_edge_of(n.key_edges[k]));
        }
        let n = bipartite_necklace(&[2, 3]);
        let blocks = [
            BipartiteBlockParams::new(1, 1),
            BipartiteBlockParams::new(4, 3),
            BipartiteBlockParams::new(6, 5),
        ];
        let report = density_report(&n.graph).unwrap();
        for k in 0..3 {
            assert_eq!(&bipartite_key_edge_tau(&blocks, k).unwrap(), report.tau_edge_of(n.key_edges[k]));
        }
    }
}
