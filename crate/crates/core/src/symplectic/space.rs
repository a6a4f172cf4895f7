use super::field::Field;
use super::linalg::{axpy, dot, kernel, rank, rref, vec_mat, Row};
use crate::error::{Error, Result};

/// Subspace of `F^n` stored as its reduced row echelon basis, so equal
/// subspaces are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace<E> {
    ambient: usize,
    rows: Vec<Row<E>>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn span<F: Field<Elem = E>>(field: &F, ambient: usize, vectors: Vec<Row<E>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: v.len(),
            });
        }
        let (rows, _) = rref(field, vectors, ambient);
        Ok(Self { ambient, rows })
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Row<E>] {
        &self.rows
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        rank(field, rows, self.ambient) == self.dim()
    }

    pub fn sum<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self::span(field, self.ambient, rows)
    }

    /// `U1 ∩ U2` from the left kernel of the stacked bases: `a·B1 = b·B2`.
    pub fn intersection<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let (k1, k2) = (self.dim(), other.dim());
        if k1 == 0 || k2 == 0 {
            return Ok(Self::zero(self.ambient));
        }
        // columns of the transposed system are the stacked basis vectors
        let transposed: Vec<Row<E>> = (0..self.ambient)
            .map(|j| {
                self.rows
                    .iter()
                    .map(|r| r[j].clone())
                    .chain(other.rows.iter().map(|r| field.neg(&r[j])))
                    .collect()
            })
            .collect();
        let coefficients = kernel(field, transposed, k1 + k2);
        let vectors = coefficients
            .iter()
            .map(|c| vec_mat(field, &c[..k1], &self.rows))
            .collect();
        Self::span(field, self.ambient, vectors)
    }
}

/// `dim(U1 ∩ U2)`.
pub fn intersection_dim<F: Field>(field: &F, u1: &Subspace<F::Elem>, u2: &Subspace<F::Elem>) -> Result<usize> {
    Ok(u1.intersection(field, u2)?.dim())
}

/// Space `F^{2d}` with a nondegenerate alternating form given by its Gram
/// matrix.
#[derive(Debug, Clone)]
pub struct SymplecticSpace<F: Field> {
    field: F,
    gram: Vec<Row<F::Elem>>,
    half_dim: usize,
}

impl<F: Field> SymplecticSpace<F> {
    /// Basis `(e_1..e_d, f_1..f_d)` with `ω(e_α, f_β) = δ_αβ`.
    pub fn standard(field: F, d: usize) -> Self {
        let n = 2 * d;
        let mut gram = vec![vec![field.zero(); n]; n];
        for i in 0..d {
            gram[i][d + i] = field.one();
            gram[d + i][i] = field.neg(&field.one());
        }
        Self {
            field,
            gram,
            half_dim: d,
        }
    }

    pub fn new(field: F, gram: Vec<Row<F::Elem>>) -> Result<Self> {
        let n = gram.len();
        if let Some(row) = gram.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        for i in 0..n {
            if !field.is_zero(&gram[i][i]) {
                return Err(Error::NotAlternating { row: i, col: i });
            }
            for j in i + 1..n {
                if gram[i][j] != field.neg(&gram[j][i]) {
                    return Err(Error::NotAlternating { row: i, col: j });
                }
            }
        }
        let r = rank(&field, gram.clone(), n);
        if r < n || n == 0 {
            return Err(Error::DegenerateForm { rank: r, dim: n });
        }
        Ok(Self {
            field,
            gram,
            half_dim: n / 2,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn gram(&self) -> &[Row<F::Elem>] {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        2 * self.half_dim
    }

    pub fn half_dim(&self) -> usize {
        self.half_dim
    }

    /// `ω(u, v) = uᵀ G v`
    pub fn form(&self, u: &[F::Elem], v: &[F::Elem]) -> F::Elem {
        dot(&self.field, &vec_mat(&self.field, u, &self.gram), v)
    }

    pub fn span(&self, vectors: Vec<Row<F::Elem>>) -> Result<Subspace<F::Elem>> {
        Subspace::span(&self.field, self.dim(), vectors)
    }

    pub fn unit_vector(&self, i: usize) -> Row<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    fn check(&self, u: &Subspace<F::Elem>) -> Result<()> {
        if u.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.ambient_dim(),
            });
        }
        Ok(())
    }

    pub fn is_isotropic(&self, u: &Subspace<F::Elem>) -> Result<bool> {
        self.check(u)?;
        let b = u.basis();
        Ok((0..b.len()).all(|i| (i + 1..b.len()).all(|j| self.field.is_zero(&self.form(&b[i], &b[j])))))
    }

    pub fn is_lagrangian(&self, u: &Subspace<F::Elem>) -> Result<bool> {
        Ok(self.is_isotropic(u)? && u.dim() == self.half_dim)
    }

    /// `U^⊥ = {v : ω(u, v) = 0 for all u ∈ U}`
    pub fn orthogonal(&self, u: &Subspace<F::Elem>) -> Result<Subspace<F::Elem>> {
        self.check(u)?;
        let rows: Vec<Row<F::Elem>> = u
            .basis()
            .iter()
            .map(|b| vec_mat(&self.field, b, &self.gram))
            .collect();
        if rows.is_empty() {
            let all = (0..self.dim()).map(|i| self.unit_vector(i)).collect();
            return self.span(all);
        }
        self.span(kernel(&self.field, rows, self.dim()))
    }

    /// Symplectic Gram–Schmidt: vectors `e_α, f_α` with `ω(e_α, f_β) = δ_αβ`
    /// and `ω(e_α, e_β) = ω(f_α, f_β) = 0`.
    pub fn symplectic_basis(&self) -> (Vec<Row<F::Elem>>, Vec<Row<F::Elem>>) {
        let field = &self.field;
        let mut pool: Vec<Row<F::Elem>> = (0..self.dim()).map(|i| self.unit_vector(i)).collect();
        let (mut es, mut fs) = (Vec::new(), Vec::new());
        while let Some(e) = pool.first().cloned() {
            pool.remove(0);
            if e.iter().all(|x| field.is_zero(x)) {
                continue;
            }
            let Some(idx) = pool.iter().position(|w| !field.is_zero(&self.form(&e, w))) else {
                // pool spans a complement of the processed planes, so e must pair
                // with something unless it is zero in the quotient
                continue;
            };
            let w = pool.remove(idx);
            let scale = field.inv(&self.form(&e, &w)).expect("nonzero pairing");
            let f: Row<F::Elem> = w.iter().map(|x| field.mul(x, &scale)).collect();
            pool = pool
                .into_iter()
                .map(|v| {
                    // v − ω(v,f)e + ω(v,e)f
                    let a = field.neg(&self.form(&v, &f));
                    let b = self.form(&v, &e);
                    axpy(field, &b, &f, &axpy(field, &a, &e, &v))
                })
                .collect();
            es.push(e);
            fs.push(f);
        }
        (es, fs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    #[test]
    fn isotropy_examples() {
        let s = SymplecticSpace::standard(f3(), 2);
        let e1 = s.unit_vector(0);
        let e2 = s.unit_vector(1);
        let f1 = s.unit_vector(2);
        let line = s.span(vec![vec![1, 2, 0, 1]]).unwrap();
        assert!(s.is_isotropic(&line).unwrap());
        assert!(!s.is_isotropic(&s.span(vec![e1.clone(), f1.clone()]).unwrap()).unwrap());
        let lag = s.span(vec![e1.clone(), e2]).unwrap();
        assert!(s.is_lagrangian(&lag).unwrap());
        let half = s.span(vec![e1.clone()]).unwrap();
        assert!(s.is_isotropic(&half).unwrap());
        assert!(!s.is_lagrangian(&half).unwrap());

        let other = SymplecticSpace::standard(f3(), 1);
        assert!(other.is_isotropic(&half).is_err());
    }

    #[test]
    fn intersection_examples() {
        let fld = f3();
        let s = SymplecticSpace::standard(fld, 2);
        let u = s.span(vec![vec![1, 1, 0, 2], vec![0, 1, 1, 0]]).unwrap();
        assert_eq!(intersection_dim(&fld, &u, &u).unwrap(), 2);
        let e1 = s.span(vec![s.unit_vector(0)]).unwrap();
        let f1 = s.span(vec![s.unit_vector(2)]).unwrap();
        assert_eq!(intersection_dim(&fld, &e1, &f1).unwrap(), 0);
        let w = s.span(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let x = s.span(vec![vec![1, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        let i = w.intersection(&fld, &x).unwrap();
        assert_eq!(i, s.span(vec![vec![1, 1, 0, 0]]).unwrap());
    }

    #[test]
    fn rejects_bad_gram() {
        let fld = f3();
        assert!(matches!(
            SymplecticSpace::new(fld, vec![vec![1, 1], vec![2, 0]]),
            Err(Error::NotAlternating { .. })
        ));
        assert!(matches!(
            SymplecticSpace::new(fld, vec![vec![0, 0], vec![0, 0]]),
            Err(Error::DegenerateForm { .. })
        ));
        assert!(matches!(
            SymplecticSpace::new(fld, vec![vec![0, 1, 0], vec![2, 0, 0], vec![0, 0, 0]]),
            Err(Error::DegenerateForm { .. })
        ));
    }

    #[test]
    fn gram_schmidt_on_skewed_form() {
        let fld = PrimeField::new(5).unwrap();
        // a nonstandard alternating form on F_5^4
        let g = vec![
            vec![0, 2, 1, 3],
            vec![3, 0, 4, 1],
            vec![4, 1, 0, 1],
            vec![2, 4, 4, 0],
        ];
        let s = SymplecticSpace::new(fld, g).unwrap();
        let (es, fs) = s.symplectic_basis();
        assert_eq!(es.len(), 2);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(s.form(&es[a], &fs[b]), u32::from(a == b));
                assert_eq!(s.form(&es[a], &es[b]), 0);
                assert_eq!(s.form(&fs[a], &fs[b]), 0);
            }
        }
    }

    #[test]
    fn over_rationals() {
        let q = Rationals;
        let r = |n: i64| BigRational::from_integer(n.into());
        let g = vec![
            vec![r(0), r(3)],
            vec![r(-3), r(0)],
        ];
        let s = SymplecticSpace::new(q, g).unwrap();
        let (es, fs) = s.symplectic_basis();
        assert_eq!(s.form(&es[0], &fs[0]), r(1));
        let line = s.span(vec![vec![r(2), r(7)]]).unwrap();
        assert!(s.is_lagrangian(&line).unwrap());
    }
}
