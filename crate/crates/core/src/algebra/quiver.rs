//! Bound quiver algebras kQ/I and the Gabriel quiver of a basic algebra.
//!
//! Paths compose right to left: the relation string `b*a` is the path that
//! traverses `a` and then `b`, and an arrow i → j lies in e_j·A·e_i.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::fd::{FDAlgebra, Sparse};
use crate::error::{Error, Result};
use crate::kernel::matrix::Subspace;
use crate::kernel::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverPresentation {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<Arrow>,
    /// Linear combinations of parallel paths, e.g. `"b*a"` or `"a*b - 2*c*d"`.
    #[serde(default)]
    pub relations: Vec<String>,
    pub nilpotency_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Path {
    start: usize,
    end: usize,
    /// Arrow indices in traversal order.
    arrows: Vec<usize>,
}

impl Path {
    fn len(&self) -> usize {
        self.arrows.len()
    }
}

struct Quiver {
    n: usize,
    /// (source, target)
    arrows: Vec<(usize, usize)>,
    names: Vec<String>,
    vertex_names: Vec<String>,
}

impl Quiver {
    fn label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", self.vertex_names[p.start]);
        }
        p.arrows.iter().rev().map(|&a| self.names[a].as_str()).collect::<Vec<_>>().join("*")
    }

    /// All paths of length ≤ max, ordered by length then arrow sequence.
    fn paths_up_to(&self, max: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.n).map(|v| Path { start: v, end: v, arrows: vec![] }).collect();
        let mut layer = out.clone();
        for _ in 0..max {
            let mut next = Vec::new();
            for p in &layer {
                for (a, &(s, t)) in self.arrows.iter().enumerate() {
                    if s == p.end {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a);
                        next.push(Path { start: p.start, end: t, arrows });
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

type Combination = Vec<(i64, Vec<usize>)>;

fn parse_relation(s: &str, arrow_index: &HashMap<&str, usize>) -> Result<Combination> {
    let mut terms = Vec::new();
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::input("empty relation"));
    }
    let mut pieces = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 {
            pieces.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    pieces.push(cur);
    for piece in pieces {
        let (sign, body) = match piece.strip_prefix('-') {
            Some(b) => (-1i64, b),
            None => (1, piece.strip_prefix('+').unwrap_or(&piece)),
        };
        if body.is_empty() {
            return Err(Error::input(format!("malformed relation '{s}'")));
        }
        let mut coeff = sign;
        let mut factors: Vec<usize> = Vec::new();
        for (k, tok) in body.split('*').enumerate() {
            if tok.is_empty() {
                return Err(Error::input(format!("malformed relation '{s}'")));
            }
            if k == 0 && tok.chars().all(|c| c.is_ascii_digit()) {
                coeff *= tok.parse::<i64>().map_err(|_| Error::input(format!("bad coefficient in '{s}'")))?;
                continue;
            }
            let (name, pow) = match tok.split_once('^') {
                Some((n, e)) => {
                    (n, e.parse::<usize>().map_err(|_| Error::input(format!("bad exponent in '{s}'")))?)
                }
                None => (tok, 1),
            };
            let &a = arrow_index
                .get(name)
                .ok_or_else(|| Error::input(format!("unknown arrow '{name}' in relation '{s}'")))?;
            for _ in 0..pow {
                factors.push(a);
            }
        }
        // Written right to left; store in traversal order.
        factors.reverse();
        terms.push((coeff, factors));
    }
    Ok(terms)
}

/// Build kQ/I with a basis of reduced paths.
pub fn algebra_from_quiver(q: &QuiverPresentation, field: PrimeField) -> Result<Arc<FDAlgebra>> {
    let n = q.vertices.len();
    if n == 0 {
        return Err(Error::input("quiver has no vertices"));
    }
    let nb = q.nilpotency_bound;
    if nb == 0 {
        return Err(Error::input("nilpotency_bound must be positive"));
    }
    let vindex: HashMap<&str, usize> = q.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    if vindex.len() != n {
        return Err(Error::input("duplicate vertex label"));
    }
    let mut arrows = Vec::new();
    let mut aindex = HashMap::new();
    for (k, a) in q.arrows.iter().enumerate() {
        let s = *vindex.get(a.source.as_str()).ok_or_else(|| Error::input(format!("arrow '{}' has unknown source", a.name)))?;
        let t = *vindex.get(a.target.as_str()).ok_or_else(|| Error::input(format!("arrow '{}' has unknown target", a.name)))?;
        if a.name.is_empty() || a.name.contains(['*', '+', '-', '^', ' ']) {
            return Err(Error::input(format!("invalid arrow name '{}'", a.name)));
        }
        if aindex.insert(a.name.as_str(), k).is_some() {
            return Err(Error::input(format!("duplicate arrow name '{}'", a.name)));
        }
        arrows.push((s, t));
    }
    let quiver = Quiver {
        n,
        arrows,
        names: q.arrows.iter().map(|a| a.name.clone()).collect(),
        vertex_names: q.vertices.clone(),
    };
    // Relations: admissible and parallel.
    let mut rels: Vec<(usize, usize, Combination)> = Vec::new();
    for r in &q.relations {
        let comb = parse_relation(r, &aindex)?;
        let mut ends: Option<(usize, usize)> = None;
        for (_, t) in &comb {
            if t.len() < 2 {
                return Err(Error::input(format!("relation '{r}' has a term of length < 2 (not admissible)")));
            }
            for w in t.windows(2) {
                if quiver.arrows[w[0]].1 != quiver.arrows[w[1]].0 {
                    return Err(Error::input(format!("relation '{r}' contains a non-composable path")));
                }
            }
            let se = (quiver.arrows[t[0]].0, quiver.arrows[*t.last().expect("nonempty")].1);
            if ends.is_some_and(|e| e != se) {
                return Err(Error::input(format!("relation '{r}' is not a combination of parallel paths")));
            }
            ends = Some(se);
        }
        let (s, t) = ends.expect("relation has terms");
        rels.push((s, t, comb));
    }

    let paths = quiver.paths_up_to(nb);
    // Coordinates ordered longest first so that pivots are leading paths.
    let mut order: Vec<usize> = (0..paths.len()).collect();
    order.sort_by(|&a, &b| paths[b].len().cmp(&paths[a].len()).then(paths[a].cmp(&paths[b])));
    let mut coord_of = HashMap::new();
    for (c, &pi) in order.iter().enumerate() {
        coord_of.insert(paths[pi].clone(), c);
    }
    let dim_all = paths.len();
    let mut ideal = Subspace::new(field, dim_all);
    for (s, t, comb) in &rels {
        for pre in paths.iter().filter(|p| p.end == *s) {
            for post in paths.iter().filter(|p| p.start == *t) {
                let mut v = vec![0u32; dim_all];
                let mut any = false;
                for (c, term) in comb {
                    let len = pre.len() + term.len() + post.len();
                    if len > nb {
                        continue;
                    }
                    let mut arrows = pre.arrows.clone();
                    arrows.extend(term);
                    arrows.extend(&post.arrows);
                    let path = Path { start: pre.start, end: post.end, arrows };
                    let k = coord_of[&path];
                    v[k] = field.add(v[k], field.reduce(*c));
                    any = true;
                }
                if any {
                    ideal.insert(v);
                }
            }
        }
    }
    // J^N must vanish modulo the relations.
    for p in paths.iter().filter(|p| p.len() == nb) {
        let mut v = vec![0u32; dim_all];
        v[coord_of[p]] = 1;
        if !ideal.contains(&v) {
            return Err(Error::inconclusive(format!(
                "path {} of length {nb} survives; the path space does not stabilize below nilpotency_bound",
                quiver.label(p)
            )));
        }
    }
    let pivots: std::collections::HashSet<usize> = ideal.pivots().iter().copied().collect();
    let mut basis: Vec<&Path> = paths.iter().filter(|p| !pivots.contains(&coord_of[*p])).collect();
    basis.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let dim = basis.len();
    let basis_of_coord: HashMap<usize, usize> = basis.iter().enumerate().map(|(i, p)| (coord_of[*p], i)).collect();
    let normal_form = |path: Path| -> Sparse {
        if path.len() > nb {
            return Sparse::new();
        }
        let mut v = vec![0u32; dim_all];
        v[coord_of[&path]] = 1;
        let (rem, _) = ideal.reduce(&v);
        let mut s: Sparse =
            rem.iter().enumerate().filter(|&(_, &c)| c != 0).map(|(k, &c)| (basis_of_coord[&k], c)).collect();
        s.sort_unstable();
        s
    };
    let mut prod = vec![vec![Sparse::new(); dim]; dim];
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            // b_i · b_j traverses b_j and then b_i.
            if bj.end != bi.start {
                continue;
            }
            let mut arrows = bj.arrows.clone();
            arrows.extend(&bi.arrows);
            prod[i][j] = normal_form(Path { start: bj.start, end: bi.end, arrows });
        }
    }
    let unit_vec = |v: usize| {
        let mut u = vec![0u32; dim];
        u[v] = 1;
        u
    };
    // Trivial paths come first in the sorted basis.
    let idempotents: Vec<Vec<u32>> = (0..n).map(unit_vec).collect();
    let mut unit = vec![0u32; dim];
    for u in unit.iter_mut().take(n) {
        *u = 1;
    }
    let radical: Vec<Vec<u32>> = (n..dim).map(unit_vec).collect();
    let labels = basis.iter().map(|p| quiver.label(p)).collect();
    FDAlgebra::with_decomposition(field, labels, prod, unit, idempotents, radical)
}

/// Arrow multiplicities of the Gabriel quiver of a basic algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GabrielQuiver {
    pub vertices: usize,
    /// `(source, target, count)` with count = dim e_target (J/J²) e_source, for count > 0.
    pub arrows: Vec<(usize, usize, usize)>,
}

impl GabrielQuiver {
    pub fn loops(&self) -> usize {
        self.arrows.iter().filter(|(s, t, _)| s == t).map(|a| a.2).sum()
    }

    pub fn count(&self, source: usize, target: usize) -> usize {
        self.arrows.iter().find(|a| a.0 == source && a.1 == target).map_or(0, |a| a.2)
    }
}

pub fn quiver_of(a: &FDAlgebra) -> Result<GabrielQuiver> {
    if !a.is_basic() {
        return Err(Error::input("quiver of a non-basic algebra"));
    }
    let f = a.field();
    let j2 = a.product_span(a.radical(), a.radical());
    let es = a.idempotents();
    let mut arrows = Vec::new();
    for (i, ei) in es.iter().enumerate() {
        for (j, ej) in es.iter().enumerate() {
            let dj = Subspace::spanned_by(f, a.dim(), &a.radical().iter().map(|r| a.mul3(ej, r, ei)).collect::<Vec<_>>()).dim();
            let dj2 = Subspace::spanned_by(f, a.dim(), &j2.iter().map(|r| a.mul3(ej, r, ei)).collect::<Vec<_>>()).dim();
            if dj > dj2 {
                arrows.push((i, j, dj - dj2));
            }
        }
    }
    Ok(GabrielQuiver { vertices: es.len(), arrows })
}

/// Preprojective algebra of type A_n (vertices 1..n, arrows a_i: i → i+1 and
/// b_i: i+1 → i with the mesh relations).
pub fn preprojective_a(n: usize) -> QuiverPresentation {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    for i in 1..n {
        arrows.push(Arrow { name: format!("a{i}"), source: i.to_string(), target: (i + 1).to_string() });
        arrows.push(Arrow { name: format!("b{i}"), source: (i + 1).to_string(), target: i.to_string() });
    }
    let mut relations = Vec::new();
    for v in 1..=n {
        // Mesh relation at v: Σ ± (arrow into v) * (arrow out of v).
        let mut terms = Vec::new();
        if v < n {
            terms.push(format!("b{v}*a{v}"));
        }
        if v > 1 {
            terms.push(format!("a{}*b{}", v - 1, v - 1));
        }
        if !terms.is_empty() {
            relations.push(terms.join(" - "));
        }
    }
    QuiverPresentation { vertices, arrows, relations, nilpotency_bound: n.max(1) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn single_vertex() {
        let q = QuiverPresentation { vertices: vec!["1".into()], arrows: vec![], relations: vec![], nilpotency_bound: 1 };
        let a = algebra_from_quiver(&q, f5()).unwrap();
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn preprojective_a2() {
        let a = algebra_from_quiver(&preprojective_a(2), f5()).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.labels(), &["e1", "e2", "a1", "b1"]);
        let g = quiver_of(&a).unwrap();
        assert_eq!(g.arrows, vec![(0, 1, 1), (1, 0, 1)]);
    }

    #[test]
    fn preprojective_a3_dimension() {
        // dim Π(A_3) = 10
        let a = algebra_from_quiver(&preprojective_a(3), f5()).unwrap();
        assert_eq!(a.dim(), 10);
    }

    #[test]
    fn truncated_loop() {
        let q = QuiverPresentation {
            vertices: vec!["1".into()],
            arrows: vec![Arrow { name: "x".into(), source: "1".into(), target: "1".into() }],
            relations: vec!["x^3".into()],
            nilpotency_bound: 3,
        };
        let a = algebra_from_quiver(&q, f5()).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.is_commutative());
        assert_eq!(quiver_of(&a).unwrap().loops(), 1);
    }

    #[test]
    fn rejects_short_relation() {
        let q = QuiverPresentation {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![Arrow { name: "a".into(), source: "1".into(), target: "2".into() }],
            relations: vec!["a".into()],
            nilpotency_bound: 2,
        };
        assert!(matches!(algebra_from_quiver(&q, f5()), Err(Error::Input(_))));
    }

    #[test]
    fn bound_too_small_is_inconclusive() {
        let q = QuiverPresentation {
            vertices: vec!["1".into()],
            arrows: vec![Arrow { name: "x".into(), source: "1".into(), target: "1".into() }],
            relations: vec!["x*x*x".into()],
            nilpotency_bound: 2,
        };
        assert!(matches!(algebra_from_quiver(&q, f5()), Err(Error::Inconclusive(_))));
    }
}
