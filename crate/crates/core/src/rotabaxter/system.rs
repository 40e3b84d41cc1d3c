//! Polynomial systems for Rota-Baxter operators, obtained by expanding
//! `P(e_i) P(e_j) = P(e_i P(e_j) + P(e_i) e_j + lambda e_i e_j)` over the
//! natural basis with the operator entries as unknowns.

use crate::classify::Tag;
use crate::matrix::StructureMatrix;
use crate::rb::Weight;
use crate::scalar::Scalar;

use super::poly::{render_system, Poly};

/// Structure matrix whose entries are polynomials in symbolic parameters.
/// Polynomials live over the operator unknowns followed by the parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicAlgebra {
    n: usize,
    params: Vec<String>,
    entries: Vec<Poly>,
}

/// Unknown names: `a, b, c, d` in dimension two, `r11, r12, ...` otherwise.
pub fn unknown_names(n: usize) -> Vec<String> {
    if n == 2 {
        return ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    }
    (1..=n)
        .flat_map(|i| (1..=n).map(move |j| format!("r{i}{j}")))
        .collect()
}

impl SymbolicAlgebra {
    /// `entries[i][j]` in the parameter names; `"1"`, `"x"`, `"-1"` and `"0"`
    /// style strings are parsed by the polynomial reader.
    pub fn new(
        n: usize,
        params: &[&str],
        entries: &[&str],
    ) -> Result<Self, super::poly::PolyParseError> {
        assert_eq!(entries.len(), n * n, "need n^2 entries");
        let names: Vec<String> = unknown_names(n)
            .into_iter()
            .chain(params.iter().map(|p| p.to_string()))
            .collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let entries = entries
            .iter()
            .map(|e| super::poly::parse_equation(e, &refs))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            n,
            params: params.iter().map(|p| p.to_string()).collect(),
            entries,
        })
    }

    pub fn from_matrix(a: &StructureMatrix) -> Self {
        let n = a.dim();
        let nvars = n * n;
        let entries = a
            .matrix()
            .as_slice()
            .iter()
            .map(|&v| Poly::constant(nvars, v))
            .collect();
        Self {
            n,
            params: Vec::new(),
            entries,
        }
    }

    /// `[[1, x], [y, 1]]`
    pub fn e5() -> Self {
        Self::new(2, &["x", "y"], &["1", "x", "y", "1"]).expect("static entries")
    }

    /// `[[0, 1], [1, x]]`
    pub fn e6() -> Self {
        Self::new(2, &["x"], &["0", "1", "1", "x"]).expect("static entries")
    }

    /// Canonical complex algebra for a tag, with symbolic parameters for
    /// the parametric classes.
    pub fn canonical(tag: Tag) -> Self {
        let rows: [&str; 4] = match tag {
            Tag::E0 => ["0", "0", "0", "0"],
            Tag::E1 => ["1", "0", "0", "0"],
            Tag::E2 => ["1", "0", "1", "0"],
            Tag::E3 => ["1", "1", "-1", "-1"],
            Tag::E4 => ["0", "1", "0", "0"],
            Tag::E5 => return Self::e5(),
            Tag::E6 | Tag::E7 => return Self::e6(),
        };
        Self::new(2, &[], &rows).expect("static entries")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn names(&self) -> Vec<String> {
        unknown_names(self.n)
            .into_iter()
            .chain(self.params.iter().cloned())
            .collect()
    }

    fn nvars(&self) -> usize {
        self.n * self.n + self.params.len()
    }

    fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    fn unknown(&self, i: usize, j: usize) -> Poly {
        Poly::var(self.nvars(), i * self.n + j)
    }

    fn apply(&self, u: &[Poly]) -> Vec<Poly> {
        (0..self.n)
            .map(|k| {
                (0..self.n).fold(Poly::zero(self.nvars()), |acc, i| {
                    acc.add(&u[i].mul(&self.unknown(i, k)))
                })
            })
            .collect()
    }

    fn product(&self, u: &[Poly], v: &[Poly]) -> Vec<Poly> {
        (0..self.n)
            .map(|k| {
                (0..self.n).fold(Poly::zero(self.nvars()), |acc, i| {
                    acc.add(&u[i].mul(&v[i]).mul(self.entry(i, k)))
                })
            })
            .collect()
    }

    fn basis(&self, i: usize) -> Vec<Poly> {
        (0..self.n)
            .map(|k| {
                if k == i {
                    Poly::constant(self.nvars(), Scalar::new(1.0, 0.0))
                } else {
                    Poly::zero(self.nvars())
                }
            })
            .collect()
    }
}

/// One coordinate of the identity on a basis pair, before simplification.
#[derive(Clone, Debug, PartialEq)]
pub struct RawEquation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub lhs: Poly,
    pub rhs: Poly,
}

impl RawEquation {
    pub fn difference(&self) -> Poly {
        self.lhs.sub(&self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem {
    pub names: Vec<String>,
    /// Every coordinate, diagonal pairs first, then `i < j`.
    pub raw: Vec<RawEquation>,
    /// Nontrivial equations `p = 0`, sign-normalized, one per proportionality class.
    pub equations: Vec<Poly>,
    /// Identities like `ac=ac` that were dropped.
    pub tautologies: Vec<String>,
}

/// Expands the defining identity symbolically.
pub fn derive_system(alg: &SymbolicAlgebra, weight: Weight) -> PolySystem {
    let n = alg.dim();
    let names = alg.names();
    let lambda = Poly::constant(alg.nvars(), weight.value());
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    pairs.extend((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))));
    let mut raw = Vec::new();
    for (i, j) in pairs {
        let (ei, ej) = (alg.basis(i), alg.basis(j));
        let (pi, pj) = (alg.apply(&ei), alg.apply(&ej));
        let lhs = alg.product(&pi, &pj);
        let inner: Vec<Poly> = alg
            .product(&ei, &pj)
            .iter()
            .zip(alg.product(&pi, &ej))
            .zip(alg.product(&ei, &ej))
            .map(|((u, v), w)| u.add(&v).add(&w.mul(&lambda)))
            .collect();
        let rhs = alg.apply(&inner);
        for (k, (l, r)) in lhs.into_iter().zip(rhs).enumerate() {
            raw.push(RawEquation {
                i,
                j,
                k,
                lhs: l,
                rhs: r,
            });
        }
    }
    let mut equations: Vec<Poly> = Vec::new();
    let mut tautologies = Vec::new();
    for eq in &raw {
        let d = eq.difference().prune(1e-13);
        if d.is_zero() {
            if !(eq.lhs.is_zero() && eq.rhs.is_zero()) {
                let text = format!("{}={}", eq.lhs.render(&names), eq.rhs.render(&names));
                log::info!("dropping tautology {text}");
                tautologies.push(text);
            }
            continue;
        }
        let d = d.sign_normalized();
        if !equations.iter().any(|e| e.proportional(&d, 1e-12)) {
            equations.push(d);
        }
    }
    PolySystem {
        names,
        raw,
        equations,
        tautologies,
    }
}

impl PolySystem {
    /// `a²=0, 2ab=0, ...`
    pub fn render(&self, sep: &str) -> String {
        render_system(&self.equations, &self.names, sep)
    }

    /// Same set of equations as `other`, each matched up to a scalar factor.
    pub fn equivalent_to(&self, other: &[Poly], tol: f64) -> bool {
        let covers =
            |xs: &[Poly], ys: &[Poly]| xs.iter().all(|x| ys.iter().any(|y| x.proportional(y, tol)));
        let other: Vec<Poly> = other.iter().filter(|p| !p.is_zero()).cloned().collect();
        covers(&self.equations, &other) && covers(&other, &self.equations)
    }

    /// Raw equation values (`lhs - rhs`) at a point, in generation order.
    pub fn eval_raw(&self, point: &[Scalar]) -> Vec<Scalar> {
        self.raw
            .iter()
            .map(|e| e.difference().eval(point))
            .collect()
    }
}
