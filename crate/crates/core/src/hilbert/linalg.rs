use alloc::vec::Vec;

use nalgebra::ComplexField;

use super::{CMat, CVec, Complex64};

pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Orthonormal basis for the column span of `cols`, by column-pivoted modified
/// Gram–Schmidt with one re-orthogonalization pass per accepted vector.
///
/// A column is accepted while its residual norm exceeds `threshold`; at most `limit`
/// vectors are returned.
pub(crate) fn orthonormalize(cols: &CMat, threshold: f64, limit: usize) -> CMat {
    let d = cols.nrows();
    let mut work: Vec<CVec> = cols.column_iter().map(|c| c.into_owned()).collect();
    let mut basis: Vec<CVec> = Vec::new();
    let limit = limit.min(d);

    while basis.len() < limit && !work.is_empty() {
        let (pivot, norm) = work
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.norm()))
            .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if norm <= threshold {
            break;
        }
        let mut q = work.swap_remove(pivot);
        for b in &basis {
            let coef = b.dotc(&q);
            q.axpy(-coef, b, ONE);
        }
        let renorm = q.norm();
        if renorm <= threshold {
            break;
        }
        q.unscale_mut(renorm);
        for c in &mut work {
            let coef = q.dotc(c);
            c.axpy(-coef, &q, ONE);
        }
        basis.push(q);
    }

    if basis.is_empty() {
        CMat::zeros(d, 0)
    } else {
        CMat::from_columns(&basis)
    }
}

pub(crate) fn max_column_norm(m: &CMat) -> f64 {
    m.column_iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// `‖Bᴴ B − I‖_F`.
pub(crate) fn orthonormality_residual(b: &CMat) -> f64 {
    let r = b.ncols();
    (b.adjoint() * b - CMat::identity(r, r)).norm()
}

pub(crate) fn unit(d: usize, i: usize) -> CVec {
    let mut v = CVec::zeros(d);
    v[i] = ONE;
    v
}

pub(crate) fn sqrt(x: f64) -> f64 {
    ComplexField::sqrt(x)
}
