use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub(crate) fn add(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

pub(crate) fn mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn grid_add(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let rows = a.len().max(b.len());
    (0..rows)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => add(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

pub(crate) fn grid_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let cols = a.iter().map(Vec::len).max().unwrap_or(1) + b.iter().map(Vec::len).max().unwrap_or(1) - 1;
    let mut out = vec![vec![BigUint::zero(); cols]; a.len() + b.len() - 1];
    for (i, ra) in a.iter().enumerate() {
        for (j, x) in ra.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, rb) in b.iter().enumerate() {
                for (l, y) in rb.iter().enumerate() {
                    out[i + k][j + l] += x * y;
                }
            }
        }
    }
    out
}

fn horner(coeffs: &[BigUint], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * x + BigRational::from_integer(c.clone().into())
    })
}

/// `c[k]` = number of independent sets of size `k`; `c[0] = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PolynomialRepr", try_from = "PolynomialRepr")]
pub struct IndependencePolynomial {
    coeffs: Vec<BigUint>,
}

impl IndependencePolynomial {
    /// Trailing zeros are dropped; an empty input becomes the constant 1.
    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(1u32.into());
        }
        IndependencePolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Independence number: the largest `k` with `c[k] > 0`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `P_G(1) = i(G)`.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Exact Horner evaluation at a rational fugacity.
    pub fn evaluate(&self, lambda: &BigRational) -> BigRational {
        horner(&self.coeffs, lambda)
    }

    pub fn product(&self, other: &Self) -> Self {
        Self::from_coeffs(mul(&self.coeffs, &other.coeffs))
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    coeffs: Vec<String>,
}

impl From<IndependencePolynomial> for PolynomialRepr {
    fn from(p: IndependencePolynomial) -> Self {
        PolynomialRepr {
            coeffs: p.coeffs.iter().map(ToString::to_string).collect(),
        }
    }
}

impl TryFrom<PolynomialRepr> for IndependencePolynomial {
    type Error = String;

    fn try_from(r: PolynomialRepr) -> Result<Self, String> {
        let coeffs = parse_all(&r.coeffs)?;
        Ok(IndependencePolynomial::from_coeffs(coeffs))
    }
}

fn parse_all(items: &[String]) -> Result<Vec<BigUint>, String> {
    items
        .iter()
        .map(|s| s.parse::<BigUint>().map_err(|e| format!("bad coefficient '{s}': {e}")))
        .collect()
}

/// Entry `[a][b]` = number of independent sets with `|I∩A| = a`, `|I∩B| = b`.
///
/// The grid always has `size_a + 1` rows and `size_b + 1` columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GridRepr", try_from = "GridRepr")]
pub struct BigraphPolynomial {
    size_a: usize,
    size_b: usize,
    coeffs: Vec<Vec<BigUint>>,
}

impl BigraphPolynomial {
    pub(crate) fn from_grid(size_a: usize, size_b: usize, grid: Vec<Vec<BigUint>>) -> Self {
        let mut coeffs = vec![vec![BigUint::zero(); size_b + 1]; size_a + 1];
        for (a, row) in grid.into_iter().enumerate() {
            for (b, c) in row.into_iter().enumerate() {
                if !c.is_zero() {
                    coeffs[a][b] = c;
                }
            }
        }
        BigraphPolynomial {
            size_a,
            size_b,
            coeffs,
        }
    }

    pub fn size_a(&self) -> usize {
        self.size_a
    }

    pub fn size_b(&self) -> usize {
        self.size_b
    }

    pub fn coeff(&self, a: usize, b: usize) -> BigUint {
        self.coeffs
            .get(a)
            .and_then(|r| r.get(b))
            .cloned()
            .unwrap_or_default()
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.coeffs
    }

    pub fn total(&self) -> BigUint {
        self.coeffs.iter().flatten().sum()
    }

    /// `P_G(λ, μ)`, exactly.
    pub fn evaluate(&self, lambda: &BigRational, mu: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, row| acc * lambda + horner(row, mu))
    }

    /// Setting `μ = λ`: the one-variable polynomial of the whole graph.
    pub fn collapse(&self) -> IndependencePolynomial {
        let mut out = vec![BigUint::zero(); self.size_a + self.size_b + 1];
        for (a, row) in self.coeffs.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                out[a + b] += c;
            }
        }
        IndependencePolynomial::from_coeffs(out)
    }

    /// Row sums: the number of independent sets with `|I∩A| = a`.
    pub fn marginal_a(&self) -> Vec<BigUint> {
        self.coeffs.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn marginal_b(&self) -> Vec<BigUint> {
        (0..=self.size_b)
            .map(|b| self.coeffs.iter().map(|r| &r[b]).sum())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct GridRepr {
    size_a: usize,
    size_b: usize,
    coeffs: Vec<Vec<String>>,
}

impl From<BigraphPolynomial> for GridRepr {
    fn from(p: BigraphPolynomial) -> Self {
        GridRepr {
            size_a: p.size_a,
            size_b: p.size_b,
            coeffs: p
                .coeffs
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

impl TryFrom<GridRepr> for BigraphPolynomial {
    type Error = String;

    fn try_from(r: GridRepr) -> Result<Self, String> {
        if r.coeffs.len() != r.size_a + 1 || r.coeffs.iter().any(|row| row.len() != r.size_b + 1) {
            return Err("grid shape does not match part sizes".into());
        }
        let grid = r.coeffs.iter().map(|row| parse_all(row)).collect::<Result<_, _>>()?;
        Ok(BigraphPolynomial::from_grid(r.size_a, r.size_b, grid))
    }
}
