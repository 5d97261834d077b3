//! Serde adapters representing complex numbers as `[re, im]` pairs.

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub(crate) struct PairRef<'a, T>(pub &'a Complex<T>);

impl<T: Serialize> Serialize for PairRef<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (&self.0.re, &self.0.im).serialize(s)
    }
}

pub(crate) struct PairOwned<T>(pub Complex<T>);

impl<'de, T: Deserialize<'de>> Deserialize<'de> for PairOwned<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [re, im] = <[T; 2]>::deserialize(d)?;
        Ok(PairOwned(Complex::new(re, im)))
    }
}

pub(crate) mod pair {
    use super::*;

    pub fn serialize<T: Serialize, S: Serializer>(c: &Complex<T>, s: S) -> Result<S::Ok, S::Error> {
        PairRef(c).serialize(s)
    }

    pub fn deserialize<'de, T: Deserialize<'de>, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Complex<T>, D::Error> {
        PairOwned::deserialize(d).map(|p| p.0)
    }
}

pub(crate) mod pair_opt {
    use super::*;

    pub fn serialize<T: Serialize, S: Serializer>(
        c: &Option<Complex<T>>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        match c {
            Some(z) => s.serialize_some(&PairRef(z)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T: Deserialize<'de>, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<Complex<T>>, D::Error> {
        Ok(Option::<PairOwned<T>>::deserialize(d)?.map(|p| p.0))
    }
}

pub(crate) mod point_vec {
    use super::*;

    pub fn serialize<T: Serialize, S: Serializer>(
        v: &[Option<Complex<T>>],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|p| p.as_ref().map(PairRef)))
    }

    pub fn deserialize<'de, T: Deserialize<'de>, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<Option<Complex<T>>>, D::Error> {
        let v = Vec::<Option<PairOwned<T>>>::deserialize(d)?;
        Ok(v.into_iter().map(|p| p.map(|q| q.0)).collect())
    }
}
