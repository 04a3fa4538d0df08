use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};
use crate::poly::{Var, VarTable};

/// A point `(M, N, ω)` of the ambient space; `omega` is `None` in the
/// ω-less ambient space of `Cr(2,4,2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConfigurationPoint {
    m: RatMatrix,
    n: RatMatrix,
    omega: Option<Rational>,
}

impl ConfigurationPoint {
    pub fn new(m: RatMatrix, n: RatMatrix, omega: Option<Rational>) -> Result<Self> {
        let (r, t) = (m.rows(), m.cols());
        if n.rows() != t || t != r + n.cols() {
            return Err(Error::Dimension(format!(
                "M is {}x{} and N is {}x{}; need r x (r+s) and (r+s) x s",
                m.rows(),
                m.cols(),
                n.rows(),
                n.cols()
            )));
        }
        Ok(ConfigurationPoint { m, n, omega })
    }

    pub fn r(&self) -> usize {
        self.m.rows()
    }

    pub fn s(&self) -> usize {
        self.n.cols()
    }

    pub fn t(&self) -> usize {
        self.m.cols()
    }

    pub fn m(&self) -> &RatMatrix {
        &self.m
    }

    pub fn n(&self) -> &RatMatrix {
        &self.n
    }

    pub fn omega(&self) -> Option<&Rational> {
        self.omega.as_ref()
    }

    pub fn without_omega(&self) -> ConfigurationPoint {
        ConfigurationPoint { m: self.m.clone(), n: self.n.clone(), omega: None }
    }

    pub fn value(&self, var: Var) -> Result<Rational> {
        let missing = || Error::Dimension(format!("point has no coordinate {var}"));
        match var {
            Var::M(i, j) if (1..=self.r()).contains(&i) && (1..=self.t()).contains(&j) => {
                Ok(self.m.get(i - 1, j - 1).clone())
            }
            Var::N(i, j) if (1..=self.t()).contains(&i) && (1..=self.s()).contains(&j) => {
                Ok(self.n.get(i - 1, j - 1).clone())
            }
            Var::Omega => self.omega.clone().ok_or_else(missing),
            _ => Err(missing()),
        }
    }

    /// Coordinates in table order.
    pub fn coordinates(&self, table: &VarTable) -> Result<Vec<Rational>> {
        table.vars().iter().map(|&v| self.value(v)).collect()
    }

    /// Rebuilds a point from coordinates over a Cramer table.
    pub fn from_coordinates(table: &VarTable, r: usize, s: usize, values: &[Rational]) -> Result<Self> {
        if values.len() != table.len() {
            return Err(Error::Dimension(format!("{} values for {} variables", values.len(), table.len())));
        }
        let t = r + s;
        let mut m = RatMatrix::zeros(r, t);
        let mut n = RatMatrix::zeros(t, s);
        let mut omega = None;
        for (&v, x) in table.vars().iter().zip(values) {
            match v {
                Var::M(i, j) if i <= r && j <= t => m.set(i - 1, j - 1, x.clone()),
                Var::N(i, j) if i <= t && j <= s => n.set(i - 1, j - 1, x.clone()),
                Var::Omega => omega = Some(x.clone()),
                other => return Err(Error::UnknownVariable(other.to_string())),
            }
        }
        Self::new(m, n, omega)
    }
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

impl Serialize for ConfigurationPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ConfigurationPoint", 3)?;
        st.serialize_field("M", &matrix_strings(&self.m))?;
        st.serialize_field("N", &matrix_strings(&self.n))?;
        st.serialize_field("omega", &self.omega.as_ref().map(ToString::to_string))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn shape_is_checked() {
        let m = RatMatrix::zeros(1, 2);
        assert!(ConfigurationPoint::new(m.clone(), RatMatrix::zeros(2, 1), None).is_ok());
        assert!(ConfigurationPoint::new(m, RatMatrix::zeros(2, 2), None).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let table = VarTable::cramer(1, 1, true, false);
        let vals = vec![rat(1), rat(2), rat(3), rat(4), rat(5)];
        let p = ConfigurationPoint::from_coordinates(&table, 1, 1, &vals).unwrap();
        assert_eq!(p.coordinates(&table).unwrap(), vals);
        assert_eq!(p.value(Var::N(2, 1)).unwrap(), rat(4));
        assert!(p.without_omega().coordinates(&table).is_err());
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"M":[["1","2"]],"N":[["3"],["4"]],"omega":"5"}"#);
    }
}
