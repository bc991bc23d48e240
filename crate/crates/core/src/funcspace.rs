//! (n,n)-functions over `F_{p^n}`: expressions, value tables, the named
//! families, and compositional inverses.

use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::difftables;
use crate::error::{Error, Result};
use crate::ffield::{literal, Elem, Field};

/// One `coeff * x^exponent` term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Elem,
    pub exponent: u64,
}

/// A univariate polynomial with distinct exponents below `p^n`, highest first.
#[derive(Clone)]
pub struct FunctionExpr {
    field: Arc<Field>,
    terms: Vec<Term>,
}

impl fmt::Debug for FunctionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FunctionExpr({self})")
    }
}

impl FunctionExpr {
    /// Parses a sum of `coef*x^e` terms; `inv` stands for `x^{p^n - 2}`.
    pub fn parse(text: &str, field: &Arc<Field>) -> Result<FunctionExpr> {
        let poly = literal::parse_x_poly(field, text)?;
        let terms = poly
            .into_iter()
            .rev()
            .map(|(exponent, coeff)| Term { coeff, exponent })
            .collect();
        Ok(FunctionExpr { field: field.clone(), terms })
    }

    pub fn from_terms(field: &Arc<Field>, terms: &[(Elem, u64)]) -> Result<FunctionExpr> {
        let q = field.order() as u64;
        let mut merged = std::collections::BTreeMap::new();
        for &(coeff, exponent) in terms {
            if exponent >= q {
                return Err(Error::ExponentOutOfRange { exponent, size: q });
            }
            let cur = merged.get(&exponent).copied().unwrap_or(Elem::ZERO);
            let sum = field.add(cur, coeff);
            if sum.is_zero() {
                merged.remove(&exponent);
            } else {
                merged.insert(exponent, sum);
            }
        }
        let terms = merged.into_iter().rev().map(|(exponent, coeff)| Term { coeff, exponent }).collect();
        Ok(FunctionExpr { field: field.clone(), terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn eval(&self, x: Elem) -> Elem {
        self.terms.iter().fold(Elem::ZERO, |acc, t| {
            let xp = self.field.pow_u128(x, t.exponent as u128);
            self.field.add(acc, self.field.mul(t.coeff, xp))
        })
    }

    pub fn tabulate(&self) -> FunctionTable {
        let values = self.field.elements().map(|x| self.eval(x)).collect();
        FunctionTable::from_values(&self.field, values, self.to_string()).expect("values lie in the field")
    }
}

impl fmt::Display for FunctionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let p = self.field.p();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let xpart = match t.exponent {
                    0 => String::new(),
                    1 => "x".to_string(),
                    e => format!("x^{e}"),
                };
                let coeff = if t.coeff.0 < p {
                    t.coeff.0.to_string()
                } else {
                    format!("({})", self.field.format(t.coeff))
                };
                match (t.coeff == Elem::ONE, xpart.is_empty()) {
                    (_, true) => coeff,
                    (true, false) => xpart,
                    (false, false) => format!("{coeff}*{xpart}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An (n,n)-function stored as its full value table.
#[derive(Clone)]
pub struct FunctionTable {
    field: Arc<Field>,
    values: Vec<Elem>,
    label: String,
    is_perm: bool,
}

impl fmt::Debug for FunctionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionTable")
            .field("label", &self.label)
            .field("field", &self.field)
            .field("is_perm", &self.is_perm)
            .finish()
    }
}

impl PartialEq for FunctionTable {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.values == other.values
    }
}

impl FunctionTable {
    pub fn from_values(field: &Arc<Field>, values: Vec<Elem>, label: impl Into<String>) -> Result<FunctionTable> {
        let q = field.size();
        if values.len() != q {
            return Err(Error::InvalidParameter(format!("table has {} values, field has {q}", values.len())));
        }
        let mut seen = vec![false; q];
        let mut is_perm = true;
        for &v in &values {
            if v.index() >= q {
                return Err(Error::ElementOutOfRange { index: v.0 as u64, size: q as u64 });
            }
            if std::mem::replace(&mut seen[v.index()], true) {
                is_perm = false;
            }
        }
        Ok(FunctionTable { field: field.clone(), values, label: label.into(), is_perm })
    }

    pub fn from_fn(field: &Arc<Field>, label: impl Into<String>, f: impl Fn(Elem) -> Elem) -> FunctionTable {
        let values = field.elements().map(f).collect();
        FunctionTable::from_values(field, values, label).expect("closure maps into the field")
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    #[inline]
    pub fn eval(&self, x: Elem) -> Elem {
        self.values[x.index()]
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_perm(&self) -> bool {
        self.is_perm
    }

    pub fn with_label(mut self, label: impl Into<String>) -> FunctionTable {
        self.label = label.into();
        self
    }

    /// The table of `G` with `G(F(x)) = x`.
    pub fn comp_inverse(&self) -> Result<FunctionTable> {
        if !self.is_perm {
            return Err(Error::NotPermutation);
        }
        let mut inv = vec![Elem::ZERO; self.values.len()];
        for (x, &y) in self.values.iter().enumerate() {
            inv[y.index()] = Elem(x as u32);
        }
        Ok(FunctionTable { field: self.field.clone(), values: inv, label: format!("({})^-1", self.label), is_perm: true })
    }

    /// Classical differential uniformity 1.
    pub fn is_pn(&self) -> bool {
        difftables::c_diff_uniformity(self, Elem::ONE) == 1
    }

    /// Classical differential uniformity 2.
    pub fn is_apn(&self) -> bool {
        difftables::c_diff_uniformity(self, Elem::ONE) == 2
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "field": self.field.spec(),
            "label": self.label,
            "values": self.values.iter().map(|v| v.0).collect::<Vec<_>>(),
        })
    }
}

/// The named function families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `x^2`
    Square,
    /// `x^{p^k+1}`
    Gold { k: u32 },
    /// `x^{(3^k+1)/2}`, characteristic 3 only
    HalfGold { k: u32 },
    /// `x^10 - u x^6 - u^2 x^2`, characteristic 3 only
    Dob { u: Elem },
    /// `x^{p^n-2}`
    Inverse,
}

impl Family {
    /// Looks up a family by name; `k` and `u` are taken from the arguments as needed.
    pub fn from_name(name: &str, k: Option<u32>, u: Option<Elem>) -> Result<Family> {
        let need_k = || k.ok_or_else(|| Error::InvalidParameter(format!("family `{name}` needs k")));
        match name {
            "square" => Ok(Family::Square),
            "gold" => Ok(Family::Gold { k: need_k()? }),
            "half_gold" | "half-gold" => Ok(Family::HalfGold { k: need_k()? }),
            "dob" => Ok(Family::Dob { u: u.unwrap_or(Elem::ONE) }),
            "inverse" | "inv" => Ok(Family::Inverse),
            other => Err(Error::InvalidParameter(format!("unknown family `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Square => "square",
            Family::Gold { .. } => "gold",
            Family::HalfGold { .. } => "half_gold",
            Family::Dob { .. } => "dob",
            Family::Inverse => "inverse",
        }
    }

    pub fn k(&self) -> Option<u32> {
        match *self {
            Family::Gold { k } | Family::HalfGold { k } => Some(k),
            _ => None,
        }
    }

    pub fn exponent(&self, field: &Field) -> Option<u128> {
        let p = field.p() as u128;
        match *self {
            Family::Square => Some(2),
            Family::Gold { k } => Some(p.pow(k) + 1),
            Family::HalfGold { k } => Some((3u128.pow(k) + 1) / 2),
            Family::Inverse => Some(field.order() as u128 - 2),
            Family::Dob { .. } => None,
        }
    }

    pub fn label(&self, field: &Field) -> String {
        match *self {
            Family::Dob { u } => {
                let minus_one = field.neg(Elem::ONE);
                if u == Elem::ONE {
                    "x^10 - x^6 - x^2".to_string()
                } else if u == minus_one {
                    "x^10 + x^6 - x^2".to_string()
                } else {
                    let u2 = field.mul(u, u);
                    format!("x^10 - ({})*x^6 - ({})*x^2", field.format(u), field.format(u2))
                }
            }
            _ => format!("x^{}", self.exponent(field).unwrap()),
        }
    }

    pub fn build(&self, field: &Arc<Field>) -> Result<FunctionTable> {
        let label = self.label(field);
        match *self {
            Family::HalfGold { k } | Family::Gold { k } if k == 0 => {
                Err(Error::InvalidParameter("k must be at least 1".into()))
            }
            Family::HalfGold { .. } if field.p() != 3 => {
                Err(Error::InvalidParameter("half_gold requires p = 3".into()))
            }
            Family::Dob { .. } if field.p() != 3 => Err(Error::InvalidParameter("dob requires p = 3".into())),
            Family::Dob { u } => {
                if u.index() >= field.size() {
                    return Err(Error::ElementOutOfRange { index: u.0 as u64, size: field.order() as u64 });
                }
                let u2 = field.mul(u, u);
                Ok(FunctionTable::from_fn(field, label, |x| {
                    let t10 = field.pow_u128(x, 10);
                    let t6 = field.mul(u, field.pow_u128(x, 6));
                    let t2 = field.mul(u2, field.pow_u128(x, 2));
                    field.sub(field.sub(t10, t6), t2)
                }))
            }
            _ => {
                let d = self.exponent(field).unwrap();
                Ok(FunctionTable::from_fn(field, label, |x| field.pow_u128(x, d)))
            }
        }
    }
}

/// Value table of the monomial `x^d`.
pub fn monomial(field: &Arc<Field>, d: u128) -> FunctionTable {
    FunctionTable::from_fn(field, format!("x^{d}"), |x| field.pow_u128(x, d))
}

/// Compositional inverse (free-function form).
pub fn comp_inverse(f: &FunctionTable) -> Result<FunctionTable> {
    f.comp_inverse()
}
