use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial variables. The declaration order is the canonical variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "t")]
    T,
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "u")]
    U,
    #[serde(rename = "A")]
    A,
    #[serde(rename = "B")]
    B,
    /// Leg winding variable ℓ (written `l` in text output).
    #[serde(rename = "l")]
    L,
    /// Head winding variable.
    #[serde(rename = "h")]
    H,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::Q => "q",
            Var::U => "u",
            Var::A => "A",
            Var::B => "B",
            Var::L => "l",
            Var::H => "h",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Some(match s {
            "t" => Var::T,
            "q" => Var::Q,
            "u" => Var::U,
            "A" => Var::A,
            "B" => Var::B,
            "l" | "ℓ" => Var::L,
            "h" => Var::H,
            _ => return None,
        })
    }
}

/// Substitutions that connect the invariants to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// `t := -1`
    TToMinusOne,
    /// `u := 1`
    UToOne,
    /// `u² := -q⁻³`, i.e. `u = -i q^{-3/2}`; requires even u-exponents.
    USquaredToMinusQInvCubed,
    /// `u² := -q³`, i.e. `u = i q^{3/2}`; requires even u-exponents.
    USquaredToMinusQCubed,
    /// `ℓ^a h^b := u^{a-b}`
    LegHeadToU,
    /// `q := -A⁻²`
    QToMinusAInvSquared,
}

/// Multivariate Laurent polynomial.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vectors (one entry per
/// declared variable, in canonical [`Var`] order), so iteration is sorted
/// lexicographically and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    vars: Vec<Var>,
    terms: BTreeMap<Vec<i64>, C>,
}

pub trait Coeff: Clone + PartialEq + Zero + One + Neg<Output = Self> + Signed + fmt::Display {}
impl<C> Coeff for C where C: Clone + PartialEq + Zero + One + Neg<Output = Self> + Signed + fmt::Display {}

fn canonical_vars(vars: &[Var]) -> Vec<Var> {
    let mut v = vars.to_vec();
    v.sort();
    v.dedup();
    v
}

impl<C: Coeff> Poly<C> {
    pub fn zero(vars: &[Var]) -> Self {
        Poly { vars: canonical_vars(vars), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[Var], c: C) -> Self {
        let vars = canonical_vars(vars);
        let exp = vec![0; vars.len()];
        Poly::monomial_raw(vars, exp, c)
    }

    pub fn one(vars: &[Var]) -> Self {
        Self::constant(vars, C::one())
    }

    /// The monomial `c · Π v^e` for the listed `(variable, exponent)` pairs.
    pub fn monomial(vars: &[Var], powers: &[(Var, i64)], c: C) -> Self {
        let vars = canonical_vars(vars);
        let mut exp = vec![0; vars.len()];
        for &(v, e) in powers {
            let idx = vars
                .iter()
                .position(|&w| w == v)
                .unwrap_or_else(|| panic!("variable {} not declared", v.name()));
            exp[idx] += e;
        }
        Poly::monomial_raw(vars, exp, c)
    }

    pub fn var(vars: &[Var], v: Var) -> Self {
        Self::monomial(vars, &[(v, 1)], C::one())
    }

    fn monomial_raw(vars: Vec<Var>, exp: Vec<i64>, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { vars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(vars: &[Var], terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
    {
        let mut p = Poly::zero(vars);
        assert!(vars.windows(2).all(|w| w[0] < w[1]), "from_terms expects canonically ordered variables");
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len());
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, powers: &[(Var, i64)]) -> C {
        let mut exp = vec![0; self.vars.len()];
        for &(v, e) in powers {
            match self.var_index(v) {
                Some(i) => exp[i] += e,
                None if e == 0 => {}
                None => return C::zero(),
            }
        }
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    fn var_index(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|&w| w == v)
    }

    pub(crate) fn add_term(&mut self, exp: Vec<i64>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(format!("{:?} vs {:?}", self.vars, other.vars)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Poly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// Non-negative power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Re-expresses the polynomial over a larger variable list.
    pub fn extend_vars(&self, vars: &[Var]) -> Result<Self> {
        let target = canonical_vars(vars);
        let mut map = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            match target.iter().position(|w| w == v) {
                Some(i) => map.push(i),
                None => {
                    return Err(Error::VariableMismatch(format!(
                        "cannot drop variable {} when extending",
                        v.name()
                    )))
                }
            }
        }
        let mut out = Poly::zero(&target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (k, &i) in map.iter().enumerate() {
                ne[i] = e[k];
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Applies `f` to every exponent vector (indexed like [`Poly::vars`]).
    pub fn map_exponents<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&[i64]) -> Vec<i64>,
    {
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Replaces `v` by `v⁻¹`.
    pub fn invert_var(&self, v: Var) -> Self {
        match self.var_index(v) {
            None => self.clone(),
            Some(i) => self.map_exponents(|e| {
                let mut e = e.to_vec();
                e[i] = -e[i];
                e
            }),
        }
    }

    /// Substitutes `v := sign · Π w^k` for a monomial in the remaining variables.
    ///
    /// `v` is removed from the variable list; target variables are added if
    /// they were not present. `per_unit` gives, for a unit exponent of `v`,
    /// the resulting exponents; `step` divides the exponent first (used for
    /// `u² := …` rules) and must divide every exponent of `v`.
    fn substitute_monomial(&self, v: Var, step: i64, negate: bool, per_unit: &[(Var, i64)]) -> Result<Self> {
        let Some(vi) = self.var_index(v) else {
            return Ok(self.clone());
        };
        let mut out_vars: Vec<Var> = self.vars.iter().copied().filter(|&w| w != v).collect();
        out_vars.extend(per_unit.iter().map(|&(w, _)| w));
        let out_vars = canonical_vars(&out_vars);
        let mut out = Poly::zero(&out_vars);
        for (e, c) in &self.terms {
            let k = e[vi];
            if k % step != 0 {
                return Err(Error::Substitution(format!(
                    "exponent {k} of {} is not divisible by {step}",
                    v.name()
                )));
            }
            let k = k / step;
            let mut ne = vec![0; out_vars.len()];
            for (j, w) in self.vars.iter().enumerate() {
                if *w != v {
                    let idx = out_vars.iter().position(|x| x == w).unwrap();
                    ne[idx] += e[j];
                }
            }
            for &(w, m) in per_unit {
                let idx = out_vars.iter().position(|&x| x == w).unwrap();
                ne[idx] += m * k;
            }
            let c = if negate && k.is_odd() { -c.clone() } else { c.clone() };
            out.add_term(ne, c);
        }
        Ok(out)
    }

    pub fn substitute(&self, rule: Substitution) -> Result<Self> {
        match rule {
            Substitution::TToMinusOne => self.substitute_monomial(Var::T, 1, true, &[]),
            Substitution::UToOne => self.substitute_monomial(Var::U, 1, false, &[]),
            Substitution::USquaredToMinusQInvCubed => {
                self.substitute_monomial(Var::U, 2, true, &[(Var::Q, -3)])
            }
            Substitution::USquaredToMinusQCubed => self.substitute_monomial(Var::U, 2, true, &[(Var::Q, 3)]),
            Substitution::QToMinusAInvSquared => self.substitute_monomial(Var::Q, 1, true, &[(Var::A, -2)]),
            Substitution::LegHeadToU => {
                let with_u = if self.var_index(Var::U).is_some() {
                    self.clone()
                } else {
                    let mut vs = self.vars.clone();
                    vs.push(Var::U);
                    self.extend_vars(&vs)?
                };
                let step1 = with_u.substitute_monomial(Var::L, 1, false, &[(Var::U, 1)])?;
                step1.substitute_monomial(Var::H, 1, false, &[(Var::U, -1)])
            }
        }
    }

    /// Parses the text form produced by `Display`, e.g. `3 - q^-2*t + 2*A^4*u^2`.
    pub fn parse(vars: &[Var], text: &str) -> Result<Self>
    where
        C: std::str::FromStr,
    {
        let vars = canonical_vars(vars);
        let mut out = Poly::zero(&vars);
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Syntax("empty polynomial".into()));
        }
        if s == "0" {
            return Ok(out);
        }
        // Split into signed terms.
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !matches!(prev, None | Some('^')) {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && prev.is_none() {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        terms.push((neg, cur));
        for (neg, body) in terms {
            if body.is_empty() {
                return Err(Error::Syntax(format!("dangling sign in {text:?}")));
            }
            let mut coef = C::one();
            let mut exp = vec![0i64; vars.len()];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Syntax(format!("empty factor in {text:?}")));
                }
                if factor.chars().next().unwrap().is_ascii_digit() {
                    coef = coef
                        * factor
                            .parse::<C>()
                            .map_err(|_| Error::Syntax(format!("bad coefficient {factor:?}")))?;
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((n, p)) => (
                        n,
                        p.parse::<i64>().map_err(|_| Error::Syntax(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let v = Var::from_name(name)
                    .ok_or_else(|| Error::Syntax(format!("unknown variable {name:?}")))?;
                let idx = vars
                    .iter()
                    .position(|&w| w == v)
                    .ok_or_else(|| Error::VariableMismatch(format!("variable {name} not declared")))?;
                exp[idx] += power;
            }
            out.add_term(exp, if neg { -coef } else { coef });
        }
        Ok(out)
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let constant = e.iter().all(|&x| x == 0);
            if !mag.is_one() || constant {
                factors.push(mag.to_string());
            }
            for (v, &x) in self.vars.iter().zip(e) {
                match x {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    _ => factors.push(format!("{}^{}", v.name(), x)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.iter().map(|v| v.name()).collect::<Vec<_>>().join(","), self)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm<C> {
    exp: Vec<i64>,
    coef: C,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly<C> {
    vars: Vec<Var>,
    terms: Vec<JsonTerm<C>>,
}

impl<C: Coeff + Serialize> Serialize for Poly<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| JsonTerm { exp: e.clone(), coef: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff + Deserialize<'de>> Deserialize<'de> for Poly<C> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = JsonPoly::<C>::deserialize(d)?;
        let vars = canonical_vars(&raw.vars);
        if vars != raw.vars {
            return Err(D::Error::custom("variables must be listed once, in canonical order"));
        }
        let mut p = Poly::zero(&vars);
        for t in raw.terms {
            if t.exp.len() != vars.len() {
                return Err(D::Error::custom("exponent vector length differs from variable count"));
            }
            p.add_term(t.exp, t.coef);
        }
        Ok(p)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<C: Coeff> $tr<&Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                self.$try(rhs).expect("polynomial variable lists differ")
            }
        }
        impl<C: Coeff> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}
