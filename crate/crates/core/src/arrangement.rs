//! Central line arrangements in the projective plane, their rank-2 flats
//! and the Poincaré polynomial of the complement.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactmath::field::{format_rational, parse_rational, primitive_integer_vector};
use crate::exactmath::{rank, MPoly, RatMatrix, Rational};

/// Projective point or linear form with three homogeneous coordinates.
pub type Triple = [Rational; 3];

/// Canonical representative: primitive integer vector, first nonzero entry
/// positive. `None` for the zero vector.
pub fn canonicalize(v: &[Rational]) -> Option<Triple> {
    let ints = primitive_integer_vector(v)?;
    Some([
        Rational::from_integer(ints[0].clone()),
        Rational::from_integer(ints[1].clone()),
        Rational::from_integer(ints[2].clone()),
    ])
}

fn cross(a: &Triple, b: &Triple) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Value of the linear form `f` at the point `p`.
pub fn pair(f: &Triple, p: &Triple) -> Rational {
    &f[0] * &p[0] + &f[1] * &p[1] + &f[2] * &p[2]
}

/// A rank-2 flat: an intersection point of at least two lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatPoint {
    pub point: Triple,
    /// Sorted indices of the incident lines.
    pub lines: Vec<usize>,
    /// Möbius value: number of incident lines minus one.
    pub mu: usize,
}

impl FlatPoint {
    pub fn contains(&self, line: usize) -> bool {
        self.lines.binary_search(&line).is_ok()
    }

    pub fn point_string(&self) -> String {
        let c: Vec<String> = self.point.iter().map(format_rational).collect();
        format!("({})", c.join(":"))
    }
}

/// A central arrangement of `d >= 3` distinct lines spanning the dual plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    name: Option<String>,
    forms: Vec<Triple>,
    flats: Vec<FlatPoint>,
}

impl Arrangement {
    /// Normalize and validate the forms, then compute the flats.
    pub fn new(name: Option<String>, forms: Vec<[Rational; 3]>) -> Result<Self> {
        if forms.len() < 3 {
            return Err(Error::TooFewLines(forms.len()));
        }
        let mut normalized = Vec::with_capacity(forms.len());
        for (i, f) in forms.iter().enumerate() {
            let c = canonicalize(f).ok_or_else(|| Error::Parse(format!("form {} is zero", i + 1)))?;
            if let Some(j) = normalized.iter().position(|g: &Triple| *g == c) {
                return Err(Error::DuplicateLine(j + 1, i + 1));
            }
            normalized.push(c);
        }
        let m = RatMatrix::from_rows(3, normalized.iter().map(|f| f.to_vec()).collect());
        let r = rank(&m);
        if r < 3 {
            return Err(Error::NonEssential(r));
        }
        let flats = compute_flats(&normalized);
        Ok(Arrangement { name, forms: normalized, flats })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Number of lines `d`.
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[Triple] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &Triple {
        &self.forms[i]
    }

    /// The rank-2 flats, sorted by incidence set.
    pub fn flats(&self) -> &[FlatPoint] {
        &self.flats
    }

    /// Defining form `alpha_i` as a polynomial in `x, y, z`.
    pub fn form_poly(&self, i: usize) -> MPoly {
        MPoly::linear(&self.forms[i])
    }

    /// `alpha = prod alpha_i`.
    pub fn defining_polynomial(&self) -> MPoly {
        let mut acc = MPoly::constant(3, Rational::one());
        for i in 0..self.len() {
            acc = &acc * &self.form_poly(i);
        }
        acc
    }

    /// `l_i = alpha / alpha_i`, the product of all forms except the `i`-th.
    pub fn l_form(&self, i: usize) -> MPoly {
        let mut acc = MPoly::constant(3, Rational::one());
        for j in (0..self.len()).filter(|&j| j != i) {
            acc = &acc * &self.form_poly(j);
        }
        acc
    }

    pub fn l_forms(&self) -> Vec<MPoly> {
        (0..self.len()).map(|i| self.l_form(i)).collect()
    }

    /// `sum_p mu(p)` over the rank-2 flats.
    pub fn mu_sum(&self) -> usize {
        self.flats.iter().map(|p| p.mu).sum()
    }

    /// Same arrangement with lines reordered: new line `k` is old line `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let forms = perm.iter().map(|&k| self.forms[k].clone()).collect();
        Arrangement::new(self.name.clone(), forms)
    }

    /// Add a line, re-validating the arrangement.
    pub fn with_line(&self, form: [Rational; 3]) -> Result<Self> {
        let mut forms = self.forms.clone();
        forms.push(form);
        Arrangement::new(self.name.clone(), forms)
    }

    /// Serialize as the JSON arrangement file format.
    pub fn to_json(&self) -> Value {
        let forms: Vec<Value> = self
            .forms
            .iter()
            .map(|f| Value::Array(f.iter().map(|q| Value::String(format_rational(q))).collect()))
            .collect();
        let mut obj = serde_json::Map::new();
        obj.insert("name".into(), Value::String(self.name.clone().unwrap_or_default()));
        obj.insert("forms".into(), Value::Array(forms));
        Value::Object(obj)
    }

    pub fn forms_display(&self) -> Vec<String> {
        self.forms.iter().map(format_form).collect()
    }
}

/// Render `a x + b y + c z` compactly, e.g. `x-2*y+z`.
pub fn format_form(f: &Triple) -> String {
    MPoly::linear(f).to_string()
}

/// All pairwise intersection points with full incidence sets.
pub fn compute_flats(forms: &[Triple]) -> Vec<FlatPoint> {
    let mut points: BTreeMap<Vec<usize>, Triple> = BTreeMap::new();
    let mut seen: Vec<Triple> = Vec::new();
    for i in 0..forms.len() {
        for j in (i + 1)..forms.len() {
            let p = canonicalize(&cross(&forms[i], &forms[j])).expect("distinct lines meet in a point");
            if seen.contains(&p) {
                continue;
            }
            let lines: Vec<usize> = (0..forms.len()).filter(|&k| pair(&forms[k], &p).is_zero()).collect();
            seen.push(p.clone());
            points.insert(lines, p);
        }
    }
    points
        .into_iter()
        .map(|(lines, point)| FlatPoint { mu: lines.len() - 1, point, lines })
        .collect()
}

/// Poincaré polynomial `P(M,t)` of the complement of the central cone in C^3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincarePoly {
    /// Coefficients of `1, t, t^2, t^3`.
    pub coeffs: [i64; 4],
}

impl PoincarePoly {
    /// Quotient by `(1 + t)`: the projective Poincaré polynomial.
    pub fn projective(&self) -> [i64; 3] {
        let c = &self.coeffs;
        let q0 = c[0];
        let q1 = c[1] - q0;
        let q2 = c[2] - q1;
        debug_assert_eq!(c[3], q2, "P(M,t) is divisible by 1+t");
        [q0, q1, q2]
    }

    /// Exact divisibility by `1 + t`, i.e. `P(-1) = 0`.
    pub fn divisible_by_one_plus_t(&self) -> bool {
        let c = &self.coeffs;
        c[0] - c[1] + c[2] - c[3] == 0
    }

    /// Value at a rational point, for substitution checks.
    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut pw = Rational::one();
        for &c in &self.coeffs {
            acc += &pw * Rational::from_integer(c.into());
            pw *= t;
        }
        acc
    }
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let body = match k {
                0 => c.to_string(),
                1 if c == 1 => "t".to_string(),
                1 => format!("{c}t"),
                _ if c == 1 => format!("t^{k}"),
                _ => format!("{c}t^{k}"),
            };
            parts.push(body);
        }
        f.write_str(&parts.join("+"))
    }
}

/// Möbius values over the whole lattice `{0, lines, points, origin}`, summed
/// by rank with the sign `(-1)^rank`.
pub fn poincare_polynomial(a: &Arrangement) -> PoincarePoly {
    // rank 0: mu(0) = 1; rank 1: mu(H) = -1
    let mu_bottom: i64 = 1;
    let mu_lines: Vec<i64> = vec![-mu_bottom; a.len()];
    // rank 2: mu(p) = -(mu(0) + sum over lines through p)
    let mu_points: Vec<i64> = a
        .flats()
        .iter()
        .map(|p| -(mu_bottom + p.lines.iter().map(|&l| mu_lines[l]).sum::<i64>()))
        .collect();
    // rank 3: the origin lies above everything
    let mu_top = -(mu_bottom + mu_lines.iter().sum::<i64>() + mu_points.iter().sum::<i64>());
    let c1 = -mu_lines.iter().sum::<i64>();
    let c2 = mu_points.iter().sum::<i64>();
    let c3 = -mu_top;
    PoincarePoly { coeffs: [mu_bottom, c1, c2, c3] }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn forms_from_i64(rows: &[[i64; 3]]) -> Vec<[Rational; 3]> {
    rows.iter().map(|r| [q(r[0]), q(r[1]), q(r[2])]).collect()
}

/// Names of the built-in arrangements.
pub const BUILTIN_NAMES: [&str; 5] = ["braid-a3", "9_3_1", "9_3_2", "b3", "ex-2-4"];

/// Built-in corpus of worked examples.
pub fn builtin(name: &str) -> Result<Arrangement> {
    let rows: Vec<[i64; 3]> = match name {
        // x, y, z, x-y, x-z, y-z
        "braid-a3" => vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]],
        // xyz(x-y)(y-z)(x-y-z)(2x+y+z)(2x+y-z)(2x-5y+z)
        "9_3_1" => vec![
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, -1, 0],
            [0, 1, -1],
            [1, -1, -1],
            [2, 1, 1],
            [2, 1, -1],
            [2, -5, 1],
        ],
        // xyz(x+y)(y+z)(x+3z)(x+2y+z)(x+2y+3z)(2x+3y+3z)
        "9_3_2" => vec![
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [0, 1, 1],
            [1, 0, 3],
            [1, 2, 1],
            [1, 2, 3],
            [2, 3, 3],
        ],
        // xyz(x-y)(x+y)(x-z)(x+z)(y-z)(y+z)
        "b3" => vec![
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, -1, 0],
            [1, 1, 0],
            [1, 0, -1],
            [1, 0, 1],
            [0, 1, -1],
            [0, 1, 1],
        ],
        "ex-2-4" => vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]],
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    };
    Arrangement::new(Some(name.to_string()), forms_from_i64(&rows))
}

fn parse_entry(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(q(i))
            } else {
                parse_rational(&n.to_string())
                    .ok_or_else(|| Error::Parse(format!("malformed rational {n}")))
            }
        }
        Value::String(s) => parse_rational(s).ok_or_else(|| Error::Parse(format!("malformed rational '{s}'"))),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

/// Parse a builtin name or the JSON arrangement format
/// `{"name": str, "forms": [[q,q,q], ...]}`.
pub fn parse_arrangement(source: &str) -> Result<Arrangement> {
    let trimmed = source.trim();
    if BUILTIN_NAMES.contains(&trimmed) {
        return builtin(trimmed);
    }
    let value: Value = serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(other) => return Err(Error::Parse(format!("name must be a string, found {other}"))),
    };
    let forms_v = obj
        .get("forms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing 'forms' array".into()))?;
    let mut forms = Vec::with_capacity(forms_v.len());
    for (i, f) in forms_v.iter().enumerate() {
        let arr = f
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::Parse(format!("form {} must have exactly 3 coefficients", i + 1)))?;
        forms.push([parse_entry(&arr[0])?, parse_entry(&arr[1])?, parse_entry(&arr[2])?]);
    }
    Arrangement::new(name, forms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(a: i64, b: i64, c: i64) -> Triple {
        [q(a), q(b), q(c)]
    }

    #[test]
    fn braid_has_four_triple_and_three_double_points() {
        let a = builtin("braid-a3").unwrap();
        let triples: Vec<&FlatPoint> = a.flats().iter().filter(|p| p.mu == 2).collect();
        let doubles = a.flats().iter().filter(|p| p.mu == 1).count();
        assert_eq!(triples.len(), 4);
        assert_eq!(doubles, 3);
        let mut pts: Vec<Triple> = triples.iter().map(|p| p.point.clone()).collect();
        pts.sort();
        let mut expected = vec![point(0, 0, 1), point(0, 1, 0), point(1, 0, 0), point(1, 1, 1)];
        expected.sort();
        assert_eq!(pts, expected);
    }

    #[test]
    fn nine_three_configurations() {
        for name in ["9_3_1", "9_3_2"] {
            let a = builtin(name).unwrap();
            assert_eq!(a.flats().iter().filter(|p| p.mu == 2).count(), 9, "{name}");
            assert_eq!(a.flats().iter().filter(|p| p.mu == 1).count(), 9, "{name}");
            assert_eq!(a.flats().len(), 18);
        }
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare_polynomial(&builtin("braid-a3").unwrap()).coeffs, [1, 6, 11, 6]);
        let p = poincare_polynomial(&builtin("9_3_2").unwrap());
        assert_eq!(p.coeffs, [1, 9, 27, 19]);
        assert_eq!(p.projective(), [1, 8, 19]);
        assert_eq!(p.to_string(), "1+9t+27t^2+19t^3");
        let generic = Arrangement::new(None, forms_from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]])).unwrap();
        assert_eq!(poincare_polynomial(&generic).coeffs, [1, 3, 3, 1]);
        assert_eq!(poincare_polynomial(&builtin("b3").unwrap()).coeffs, [1, 9, 23, 15]);
    }

    #[test]
    fn duplicate_and_degenerate_inputs() {
        let dup = Arrangement::new(None, forms_from_i64(&[[1, 0, 0], [2, 0, 0], [0, 1, 0], [0, 0, 1]]));
        assert_eq!(dup, Err(Error::DuplicateLine(1, 2)));
        let pencil = Arrangement::new(None, forms_from_i64(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]));
        assert_eq!(pencil, Err(Error::NonEssential(2)));
        assert!(matches!(
            parse_arrangement(r#"{"forms": [[1,0,0],[0,1,0],[0,0,"1/x"]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_arrangement(r#"{"forms": [[1,0,0],[0,1,0],[0,0,1],["2",0,0]]}"#),
            Err(Error::DuplicateLine(1, 4))
        ));
    }

    #[test]
    fn json_round_trip_normalizes() {
        let a = parse_arrangement(r#"{"name":"t","forms":[["-1/2",0,0],[0,3,0],[0,0,1],[1,1,1]]}"#).unwrap();
        assert_eq!(a.form(0), &point(1, 0, 0));
        assert_eq!(a.form(1), &point(0, 1, 0));
        let again = parse_arrangement(&a.to_json().to_string()).unwrap();
        assert_eq!(again, a);
        assert_eq!(parse_arrangement("braid-a3").unwrap(), builtin("braid-a3").unwrap());
    }

    #[test]
    fn adding_generic_lines_creates_only_double_points() {
        let a = builtin("braid-a3").unwrap();
        let b = a.with_line(point(1, 3, 7)).unwrap().with_line(point(2, -5, 11)).unwrap();
        let new_lines = [6usize, 7];
        for p in b.flats() {
            if new_lines.iter().any(|&l| p.contains(l)) {
                assert_eq!(p.mu, 1, "new line through {}", p.point_string());
            }
        }
    }
}
