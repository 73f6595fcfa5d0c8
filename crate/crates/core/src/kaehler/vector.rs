use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::exact::{ParamPoly, Rational};

/// Coordinates on `omega_0, omega_1, ..., omega_n`, where
/// `omega_0 = t^-1 dt` and `omega_k = t^-k u dt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralVector {
    coords: Vec<ParamPoly>,
}

impl CentralVector {
    pub fn zero(n: usize) -> Self {
        CentralVector {
            coords: vec![ParamPoly::zero(); n + 1],
        }
    }

    pub fn from_coords(coords: Vec<ParamPoly>) -> Self {
        assert!(
            !coords.is_empty(),
            "a central vector has at least the omega_0 slot"
        );
        CentralVector { coords }
    }

    /// `c * omega_k` in a space with basis `omega_0..omega_n`.
    pub fn basis(n: usize, k: usize, c: ParamPoly) -> Self {
        let mut v = Self::zero(n);
        v.coords[k] = c;
        v
    }

    /// The `n` of the underlying curve.
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coord(&self, k: usize) -> &ParamPoly {
        &self.coords[k]
    }

    pub fn coords(&self) -> &[ParamPoly] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(ParamPoly::is_zero)
    }

    pub fn scale(&self, c: &ParamPoly) -> CentralVector {
        CentralVector {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_rat(&self, c: &Rational) -> CentralVector {
        CentralVector {
            coords: self.coords.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn eval_partial(&self, point: &BTreeMap<String, Rational>) -> CentralVector {
        CentralVector {
            coords: self.coords.iter().map(|x| x.eval_partial(point)).collect(),
        }
    }

    /// Fully evaluated coordinates.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Vec<Rational>> {
        self.coords.iter().map(|x| x.eval(point)).collect()
    }

    /// Coordinates as rationals, when none of them involves a parameter.
    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.coords.iter().map(ParamPoly::as_constant).collect()
    }
}

impl fmt::Display for CentralVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let compound = c.num_terms() > 1;
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, s),
            };
            let body = if compound { format!("({body})") } else { body };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            if body == "1" {
                write!(f, "omega{k}")?;
            } else {
                write!(f, "{body}*omega{k}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CentralVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CentralVector", 2)?;
        st.serialize_field("omega0", &self.coords[0].to_string())?;
        let rest: Vec<String> = self.coords[1..].iter().map(ToString::to_string).collect();
        st.serialize_field("omega", &rest)?;
        st.end()
    }
}

impl<'a> Add<&'a CentralVector> for &CentralVector {
    type Output = CentralVector;
    fn add(self, rhs: &'a CentralVector) -> CentralVector {
        assert_eq!(
            self.coords.len(),
            rhs.coords.len(),
            "central vectors of different curves"
        );
        CentralVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CentralVector> for &CentralVector {
    type Output = CentralVector;
    fn sub(self, rhs: &'a CentralVector) -> CentralVector {
        assert_eq!(
            self.coords.len(),
            rhs.coords.len(),
            "central vectors of different curves"
        );
        CentralVector {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CentralVector {
    type Output = CentralVector;
    fn neg(self) -> CentralVector {
        CentralVector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl<'a> AddAssign<&'a CentralVector> for CentralVector {
    fn add_assign(&mut self, rhs: &'a CentralVector) {
        assert_eq!(
            self.coords.len(),
            rhs.coords.len(),
            "central vectors of different curves"
        );
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}
