use crate::Rational;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn z(n: i64) -> Rational {
    q(n, 1)
}

pub fn vecq(xs: &[(i64, i64)]) -> Vec<Rational> {
    xs.iter().map(|&(n, d)| q(n, d)).collect()
}
