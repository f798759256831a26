//! Seeded graph families used as experiment fixtures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::is_lower_regular;
use crate::graph::SimpleGraph;
use crate::rational::Rational;
use crate::realize::havel_hakimi;

/// Pairing-model attempts before falling back to edge switching.
const PAIRING_ATTEMPTS: usize = 200;
/// Blow-up retries before certification is declared failed.
const BLOWUP_ATTEMPTS: u64 = 32;
const BLOWUP_PARTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Gnp,
    RandomRegular,
    AlmostRegular,
    Dirac,
    QuasirandomBlowup,
    CounterexampleK3Gadget,
    CounterexampleThreeBlocks,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Gnp,
        Family::RandomRegular,
        Family::AlmostRegular,
        Family::Dirac,
        Family::QuasirandomBlowup,
        Family::CounterexampleK3Gadget,
        Family::CounterexampleThreeBlocks,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Gnp => "gnp",
            Family::RandomRegular => "random_regular",
            Family::AlmostRegular => "almost_regular",
            Family::Dirac => "dirac",
            Family::QuasirandomBlowup => "quasirandom_blowup",
            Family::CounterexampleK3Gadget => "counterexample_k3_gadget",
            Family::CounterexampleThreeBlocks => "counterexample_three_blocks",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::precondition(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    /// Edge probability (`gnp`, `dirac`) or target density (`quasirandom_blowup`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Rational>,
    /// Degree for the regular families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    /// Regularity slack (`quasirandom_blowup`) or block scale (`counterexample_three_blocks`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Rational>,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GeneratorSpec { family, n, p: None, r: None, eps: None, seed }
    }

    pub fn with_p(mut self, p: Rational) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_r(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_eps(mut self, eps: Rational) -> Self {
        self.eps = Some(eps);
        self
    }

    fn need_p(&self) -> Result<Rational> {
        let p = self.p.ok_or_else(|| Error::precondition(format!("{} needs p", self.family)))?;
        if p < Rational::from_integer(0) || p > Rational::from_integer(1) {
            return Err(Error::precondition(format!("p = {p} outside [0, 1]")));
        }
        Ok(p)
    }

    fn need_r(&self) -> Result<usize> {
        self.r.ok_or_else(|| Error::precondition(format!("{} needs r", self.family)))
    }

    fn need_eps(&self) -> Result<Rational> {
        let eps = self.eps.ok_or_else(|| Error::precondition(format!("{} needs eps", self.family)))?;
        if eps <= Rational::from_integer(0) || eps >= Rational::from_integer(1) {
            return Err(Error::precondition(format!("eps = {eps} outside (0, 1)")));
        }
        Ok(eps)
    }
}

/// Builds the graph for `spec`; identical specs give identical graphs.
pub fn generate(spec: &GeneratorSpec) -> Result<SimpleGraph> {
    let n = spec.n;
    let seed = spec.seed;
    match spec.family {
        Family::Gnp => Ok(gnp(n, spec.need_p()?, seed)),
        Family::RandomRegular => random_regular(n, spec.need_r()?, seed),
        Family::AlmostRegular => almost_regular(n, spec.need_r()?, seed),
        Family::Dirac => Ok(dirac(n, spec.p.unwrap_or(Rational::new(1, 2)), seed)),
        Family::QuasirandomBlowup => quasirandom_blowup(n, spec.need_p()?, spec.need_eps()?, seed),
        Family::CounterexampleK3Gadget => counterexample_k3_gadget(n),
        Family::CounterexampleThreeBlocks => counterexample_three_blocks(n, spec.need_eps()?),
    }
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn gnp(n: usize, p: Rational, seed: u64) -> SimpleGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = to_f64(p).clamp(0.0, 1.0);
    let mut g = SimpleGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(q) {
                g.insert_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

pub fn random_regular(n: usize, r: usize, seed: u64) -> Result<SimpleGraph> {
    if r >= n.max(1) || (n * r) % 2 == 1 {
        return Err(Error::precondition(format!("no {r}-regular graph on {n} vertices")));
    }
    random_with_degrees(&vec![r; n], seed)
}

/// One vertex of degree `r+1`, the others `r`.
pub fn almost_regular(n: usize, r: usize, seed: u64) -> Result<SimpleGraph> {
    if r + 2 > n || (n * r + 1) % 2 == 1 {
        return Err(Error::precondition(format!("no almost {r}-regular graph on {n} vertices; n and r must be odd with r + 2 <= n")));
    }
    let mut degrees = vec![r; n];
    degrees[0] = r + 1;
    random_with_degrees(&degrees, seed)
}

/// Pairing model with rejection; after too many rejections, a Havel-Hakimi
/// realization scrambled by degree-preserving switches.
fn random_with_degrees(degrees: &[usize], seed: u64) -> Result<SimpleGraph> {
    let n = degrees.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<usize> = degrees.iter().enumerate().flat_map(|(v, &d)| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..PAIRING_ATTEMPTS {
        let mut pts = points.clone();
        pts.shuffle(&mut rng);
        let mut g = SimpleGraph::empty(n);
        for pair in pts.chunks(2) {
            if g.insert_edge(pair[0], pair[1]).is_err() {
                continue 'attempt;
            }
        }
        return Ok(g);
    }
    let mut g = havel_hakimi(degrees)?;
    let mut edges = g.edges();
    for _ in 0..10 * edges.len() {
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        let ((a, b), (c, d)) = (edges[i], edges[j]);
        let (c, d) = if rng.gen_bool(0.5) { (c, d) } else { (d, c) };
        // a-b, c-d  ->  a-c, b-d
        if [a, b].contains(&c) || [a, b].contains(&d) || g.has_edge(a, c) || g.has_edge(b, d) {
            continue;
        }
        g.delete_edge(a, b)?;
        g.delete_edge(c, d)?;
        g.insert_edge(a, c)?;
        g.insert_edge(b, d)?;
        edges[i] = crate::graph::norm(a, c);
        edges[j] = crate::graph::norm(b, d);
    }
    Ok(g)
}

/// `G(n, p)` with extra random edges until every degree is at least `ceil(n/2)`.
pub fn dirac(n: usize, p: Rational, seed: u64) -> SimpleGraph {
    let mut g = gnp(n, p, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let target = n.div_ceil(2);
    for v in 0..n {
        let mut others: Vec<usize> = (0..n).filter(|&w| w != v && !g.has_edge(v, w)).collect();
        others.shuffle(&mut rng);
        for w in others {
            if g.degree(v) >= target {
                break;
            }
            g.insert_edge(v, w).expect("non-neighbour");
        }
    }
    g
}

/// Blow-up of a random template on a few parts: pairs of parts joined in the
/// template get density `(1+p)/2`, all other pairs (and parts themselves)
/// density `min(p+eps, 1)`, so small sets keep some slack. The result is
/// certified lower-`(p, eps)`-regular.
pub fn quasirandom_blowup(n: usize, p: Rational, eps: Rational, seed: u64) -> Result<SimpleGraph> {
    if n < BLOWUP_PARTS {
        return Err(Error::precondition(format!("need at least {BLOWUP_PARTS} vertices")));
    }
    let one = Rational::from_integer(1);
    let base = (p + eps).min(one);
    let high = ((p + one) / Rational::from_integer(2)).max(base);
    for attempt in 0..BLOWUP_ATTEMPTS {
        let s = seed.wrapping_add(attempt);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let template = gnp(BLOWUP_PARTS, Rational::new(1, 2), rng.gen());
        let part = |v: usize| v * BLOWUP_PARTS / n;
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                let dense = part(u) != part(v) && template.has_edge(part(u), part(v));
                if rng.gen_bool(to_f64(if dense { high } else { base })) {
                    g.insert_edge(u, v).expect("fresh pair");
                }
            }
        }
        if is_lower_regular(&g, p, eps, s)?.holds {
            return Ok(g);
        }
    }
    Err(Error::Infeasible(format!("no certified lower-({p}, {eps})-regular blow-up on {n} vertices in {BLOWUP_ATTEMPTS} attempts")))
}

/// `K_{n-3}` and a disjoint `K_3`, each triangle vertex joined to its own
/// third of the clique; maximum degree `n - 3`.
pub fn counterexample_k3_gadget(n: usize) -> Result<SimpleGraph> {
    if n < 6 {
        return Err(Error::precondition("the triangle gadget needs n >= 6"));
    }
    let k = n - 3;
    let mut g = SimpleGraph::empty(n);
    for u in 0..k {
        for v in u + 1..k {
            g.insert_edge(u, v)?;
        }
    }
    for (a, b) in [(k, k + 1), (k, k + 2), (k + 1, k + 2)] {
        g.insert_edge(a, b)?;
    }
    for v in 0..k {
        g.insert_edge(v, k + v % 3)?;
    }
    debug_assert_eq!(g.max_degree(), n - 3);
    Ok(g)
}

/// Circulant `d`-regular graph on `size` vertices, `d` even and below `size`.
fn circulant(size: usize, d: usize) -> Result<SimpleGraph> {
    if d % 2 == 1 || d >= size {
        return Err(Error::precondition(format!("no even circulant of degree {d} on {size} vertices")));
    }
    let mut g = SimpleGraph::empty(size);
    for v in 0..size {
        for j in 1..=d / 2 {
            let w = (v + j) % size;
            if !g.has_edge(v, w) {
                g.insert_edge(v, w)?;
            }
        }
    }
    Ok(g)
}

/// Three blocks: `G1` `3εn`-regular and `G2` `5εn`-regular, each on
/// `n/2 - εn` vertices, and `G3 = K_{2εn}`, with `G1` completely joined to
/// `G2` and to `G3`. Needs `n/2` integral, `εn` an even integer and
/// `ε < 1/12`.
pub fn counterexample_three_blocks(n: usize, eps: Rational) -> Result<SimpleGraph> {
    let en = eps * Rational::from_integer(n as i64);
    if !en.is_integer() || en.to_integer() <= 0 || en.to_integer() % 2 == 1 || n % 2 == 1 {
        return Err(Error::precondition(format!("need n/2 integral and eps*n a positive even integer, got n = {n}, eps = {eps}")));
    }
    let en = en.to_integer() as usize;
    // G2 is 5εn-regular on n/2 - εn vertices
    if 12 * en >= n {
        return Err(Error::precondition(format!("need eps < 1/12 so that the 5*eps*n-regular block fits, got eps = {eps}")));
    }
    let b = n / 2 - en;
    let g1 = circulant(b, 3 * en)?;
    let g2 = circulant(b, 5 * en)?;
    let mut g = g1.disjoint_union(&g2).disjoint_union(&SimpleGraph::complete(2 * en));
    for u in 0..b {
        for v in b..n {
            g.insert_edge(u, v)?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_full_is_complete() {
        assert_eq!(gnp(10, Rational::from_integer(1), 7), SimpleGraph::complete(10));
        assert_eq!(gnp(6, Rational::from_integer(0), 7).edge_count(), 0);
    }

    #[test]
    fn regular_families() {
        let g = random_regular(8, 3, 11).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        assert!(random_regular(7, 3, 0).is_err());
        let a = almost_regular(11, 5, 2).unwrap();
        assert_eq!(crate::matching::almost_regular_apex(&a), Some((0, 5)));
        assert!(almost_regular(10, 5, 0).is_err());
    }

    #[test]
    fn deterministic() {
        let spec = GeneratorSpec::new(Family::Gnp, 12, 99).with_p(Rational::new(1, 2));
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let spec = GeneratorSpec::new(Family::RandomRegular, 14, 5).with_r(4);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
    }

    #[test]
    fn dirac_degrees() {
        let g = dirac(11, Rational::new(1, 5), 3);
        assert!(g.min_degree() >= 6);
    }

    #[test]
    fn k3_gadget() {
        for n in 6..20 {
            let g = counterexample_k3_gadget(n).unwrap();
            assert_eq!(g.max_degree(), n - 3);
            assert!(g.degree(n - 1) <= 2 + (n - 3).div_ceil(3));
        }
    }

    #[test]
    fn three_blocks_degree_identities() {
        // n = 40, eps n = 2: δ = n/2 + εn - 1 = 21, Δ = n/2 + 4εn = 28
        let g = counterexample_three_blocks(40, Rational::new(1, 20)).unwrap();
        assert_eq!(g.min_degree(), 21);
        assert_eq!(g.max_degree(), 28);
        assert_eq!(g.max_degree() - g.min_degree(), 3 * 2 + 1);
        assert!(counterexample_three_blocks(40, Rational::new(1, 40)).is_err());
    }

    #[test]
    fn blowup_is_certified() {
        let p = Rational::new(1, 2);
        let eps = Rational::new(1, 4);
        let g = quasirandom_blowup(12, p, eps, 1).unwrap();
        assert!(is_lower_regular(&g, p, eps, 0).unwrap().holds);
    }
}
