//! Root systems for the classical families a, b, c, d: simple roots,
//! positive roots with composition labels, and dimension data.
//!
//! A positive root is labelled by the multiset of simple-root indices whose
//! sum it is (the word "1223" stands for r_1 + 2r_2 + r_3). Positive roots
//! are ordered by height and then lexicographically by label, which freezes
//! every generator and tensor index used downstream.

use serde::Serialize;

use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(Family::A),
            "b" => Ok(Family::B),
            "c" => Ok(Family::C),
            "d" => Ok(Family::D),
            other => Err(Error::FamilyMismatch(format!("unknown family {other:?}"))),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
            Family::D => 'd',
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 3,
        }
    }

    pub fn check_rank(self, n: usize) -> Result<()> {
        if n < self.min_rank() {
            Err(Error::InvalidRank {
                family: self.letter(),
                rank: n,
            })
        } else {
            Ok(())
        }
    }

    /// Dimension of the defining representation.
    pub fn defining_dim(self, n: usize) -> usize {
        match self {
            Family::A => n + 1,
            Family::B => 2 * n + 1,
            Family::C | Family::D => 2 * n,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Dimension of the Lie algebra.
pub fn algebra_dim(family: Family, n: usize) -> Result<usize> {
    family.check_rank(n)?;
    Ok(match family {
        Family::A => n * (n + 2),
        Family::B | Family::C => n * (2 * n + 1),
        Family::D => n * (2 * n - 1),
    })
}

/// Multiset of simple-root indices (1-based), kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct RootLabel(Vec<usize>);

impl RootLabel {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        RootLabel(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Number of simple roots in the sum, counted with multiplicity.
    pub fn height(&self) -> usize {
        self.0.len()
    }

    /// The composition word, e.g. "1223". Indices above 9 are dot-separated.
    pub fn word(&self) -> String {
        if self.0.iter().all(|&i| i <= 9) {
            self.0.iter().map(|i| i.to_string()).collect()
        } else {
            self.0
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Multiset union of two labels.
    pub fn merge(&self, other: &RootLabel) -> RootLabel {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        RootLabel::new(v)
    }
}

impl std::fmt::Display for RootLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.word())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PositiveRoot {
    #[serde(serialize_with = "serialize_label")]
    pub label: RootLabel,
    pub vector: Vec<i64>,
}

fn serialize_label<S: serde::Serializer>(
    label: &RootLabel,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&label.word())
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub simple: Vec<Vec<i64>>,
    pub positive: Vec<PositiveRoot>,
}

/// Simple roots in the coordinate conventions of the construction:
/// C: `l_i − l_{i+1}` and `2l_n`; B: `l_i − l_{i+1}` and `l_n`;
/// D: `l_i − l_{i+1}` and `l_{n−1} + l_n`; A: `l_i − l_{i+1}` in `Z^{n+1}`.
pub fn simple_roots(family: Family, n: usize) -> Result<Vec<Vec<i64>>> {
    family.check_rank(n)?;
    let amb = if family == Family::A { n + 1 } else { n };
    let unit = |i: usize| -> Vec<i64> {
        let mut v = vec![0i64; amb];
        v[i] = 1;
        v
    };
    let diff = |i: usize, j: usize| -> Vec<i64> {
        let mut v = vec![0i64; amb];
        v[i] = 1;
        v[j] = -1;
        v
    };
    let mut out: Vec<Vec<i64>> = (0..n.saturating_sub(1)).map(|i| diff(i, i + 1)).collect();
    match family {
        Family::A => out = (0..n).map(|i| diff(i, i + 1)).collect(),
        Family::B => out.push(unit(n - 1)),
        Family::C => {
            let mut v = vec![0i64; n];
            v[n - 1] = 2;
            out.push(v);
        }
        Family::D => {
            let mut v = vec![0i64; n];
            v[n - 2] = 1;
            v[n - 1] = 1;
            out.push(v);
        }
    }
    Ok(out)
}

impl RootSystem {
    /// Builds the full positive system with composition labels.
    pub fn new(family: Family, n: usize) -> Result<RootSystem> {
        let simple = simple_roots(family, n)?;
        let mut positive: Vec<PositiveRoot> = Vec::new();
        let mut push = |indices: Vec<usize>| {
            let label = RootLabel::new(indices);
            let amb = simple[0].len();
            let mut vector = vec![0i64; amb];
            for &ix in label.indices() {
                for (k, c) in simple[ix - 1].iter().enumerate() {
                    vector[k] += c;
                }
            }
            positive.push(PositiveRoot { label, vector });
        };
        match family {
            Family::A => {
                for i in 1..=n {
                    for j in i..=n {
                        // l_i − l_{j+1} = r_i + … + r_j
                        push((i..=j).collect());
                    }
                }
            }
            Family::C => {
                for i in 1..=n {
                    for j in (i + 1)..=n {
                        push((i..j).collect()); // l_i − l_j
                        let mut w: Vec<usize> = (i..j).collect(); // l_i + l_j
                        for k in j..n {
                            w.push(k);
                            w.push(k);
                        }
                        w.push(n);
                        push(w);
                    }
                    let mut w: Vec<usize> = Vec::new(); // 2l_i
                    for k in i..n {
                        w.push(k);
                        w.push(k);
                    }
                    w.push(n);
                    push(w);
                }
            }
            Family::B => {
                for i in 1..=n {
                    for j in (i + 1)..=n {
                        push((i..j).collect()); // l_i − l_j
                        let mut w: Vec<usize> = (i..j).collect(); // l_i + l_j
                        for k in j..=n {
                            w.push(k);
                            w.push(k);
                        }
                        push(w);
                    }
                    push((i..=n).collect()); // l_i
                }
            }
            Family::D => {
                for i in 1..=n {
                    for j in (i + 1)..=n {
                        push((i..j).collect()); // l_i − l_j
                        // l_i + l_j
                        if j == n {
                            let mut w: Vec<usize> = (i..=n.saturating_sub(2)).collect();
                            w.push(n);
                            push(w);
                        } else {
                            let mut w: Vec<usize> = (i..j).collect();
                            for k in j..=(n - 2) {
                                w.push(k);
                                w.push(k);
                            }
                            w.push(n - 1);
                            w.push(n);
                            push(w);
                        }
                    }
                }
            }
        }
        positive.sort_by(|a, b| {
            a.label
                .height()
                .cmp(&b.label.height())
                .then_with(|| a.label.cmp(&b.label))
        });
        let sys = RootSystem {
            family,
            rank: n,
            simple,
            positive,
        };
        let expected = (algebra_dim(family, n)? - n) / 2;
        if sys.positive.len() != expected {
            return Err(Error::Construction(format!(
                "positive root count {} does not match (dim−rank)/2 = {expected}",
                sys.positive.len()
            )));
        }
        Ok(sys)
    }

    pub fn index_of_vector(&self, v: &[i64]) -> Option<usize> {
        self.positive.iter().position(|p| p.vector == v)
    }

    pub fn index_of_label(&self, word: &str) -> Option<usize> {
        self.positive.iter().position(|p| p.label.word() == word)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.letter().to_ascii_uppercase().to_string(),
            "rank": self.rank,
            "simple": self.simple,
            "positive": self.positive,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_roots_match_conventions() {
        assert_eq!(
            simple_roots(Family::C, 2).unwrap(),
            vec![vec![1, -1], vec![0, 2]]
        );
        assert_eq!(
            simple_roots(Family::B, 3).unwrap(),
            vec![vec![1, -1, 0], vec![0, 1, -1], vec![0, 0, 1]]
        );
        assert_eq!(
            simple_roots(Family::D, 4).unwrap(),
            vec![
                vec![1, -1, 0, 0],
                vec![0, 1, -1, 0],
                vec![0, 0, 1, -1],
                vec![0, 0, 1, 1]
            ]
        );
    }

    #[test]
    fn rank_validation() {
        assert!(matches!(
            RootSystem::new(Family::D, 2),
            Err(Error::InvalidRank { family: 'd', rank: 2 })
        ));
        assert!(simple_roots(Family::B, 1).is_err());
    }

    #[test]
    fn labelled_positive_roots() {
        let c3 = RootSystem::new(Family::C, 3).unwrap();
        let k = c3.index_of_label("11223").unwrap();
        assert_eq!(c3.positive[k].vector, vec![2, 0, 0]);

        let b3 = RootSystem::new(Family::B, 3).unwrap();
        let k = b3.index_of_label("12233").unwrap();
        assert_eq!(b3.positive[k].vector, vec![1, 1, 0]);

        let d4 = RootSystem::new(Family::D, 4).unwrap();
        let k = d4.index_of_label("12234").unwrap();
        assert_eq!(d4.positive[k].vector, vec![1, 1, 0, 0]);
    }

    #[test]
    fn algebra_dims() {
        assert_eq!(algebra_dim(Family::C, 2).unwrap(), 10);
        assert_eq!(algebra_dim(Family::D, 3).unwrap(), 15);
        assert_eq!(algebra_dim(Family::B, 2).unwrap(), 10);
        assert_eq!(algebra_dim(Family::A, 2).unwrap(), 8);
    }

    #[test]
    fn height_then_lex_order() {
        let c2 = RootSystem::new(Family::C, 2).unwrap();
        let words: Vec<String> = c2.positive.iter().map(|p| p.label.word()).collect();
        assert_eq!(words, vec!["1", "2", "12", "112"]);
    }

    #[test]
    fn vectors_are_label_sums() {
        for (fam, n) in [
            (Family::A, 3),
            (Family::B, 4),
            (Family::C, 4),
            (Family::D, 5),
        ] {
            let rs = RootSystem::new(fam, n).unwrap();
            for p in &rs.positive {
                let mut v = vec![0i64; rs.simple[0].len()];
                for &ix in p.label.indices() {
                    for (k, c) in rs.simple[ix - 1].iter().enumerate() {
                        v[k] += c;
                    }
                }
                assert_eq!(v, p.vector, "label sum mismatch for {}", p.label);
            }
        }
    }
}
