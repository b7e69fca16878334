//! Binary64 re-run of the matrix-level checks. Every quantity is rebuilt
//! from `T` in floating point, not converted from the exact result, and the
//! float verdict (tolerance `1e-9`) is compared with the exact one.

use nalgebra::{Complex, DMatrix};
use torus_gcs::bundles::ComplexSideObject;
use torus_gcs::gcs::{b_transform, build_it, closed_form_parts, factorization_holds, mirror, BField};
use torus_gcs::linalg::{CMatrix, PeriodMatrix};

use crate::{CliError, Record};

pub const TOLERANCE: f64 = 1e-9;
const ANCHOR: &str = "float-crosscheck";

type M = DMatrix<Complex<f64>>;

fn to_float(m: &CMatrix) -> M {
    M::from_fn(m.rows(), m.cols(), |i, j| {
        let (re, im) = m[(i, j)].to_f64_pair();
        Complex::new(re, im)
    })
}

fn real(m: &M) -> M {
    m.map(|z| Complex::new(z.re, 0.0))
}

fn imag(m: &M) -> M {
    m.map(|z| Complex::new(z.im, 0.0))
}

fn blocks(rows: &[Vec<&M>]) -> M {
    let b = rows[0][0].nrows();
    let size = b * rows.len();
    let mut out = M::zeros(size, size);
    for (r, row) in rows.iter().enumerate() {
        for (c, m) in row.iter().enumerate() {
            out.view_mut((r * b, c * b), (b, b)).copy_from(*m);
        }
    }
    out
}

fn residual(a: &M, b: &M) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn inverse(m: &M) -> Option<M> {
    m.clone().try_inverse()
}

struct FloatTorus {
    n: usize,
    t: M,
    x: M,
    y: M,
    y_inv: M,
}

impl FloatTorus {
    fn new(p: &PeriodMatrix) -> Option<Self> {
        let t = to_float(p.t());
        let (x, y) = (real(&t), imag(&t));
        let y_inv = inverse(&y)?;
        Some(Self { n: p.n(), t, x, y, y_inv })
    }

    fn id(&self) -> M {
        M::identity(self.n, self.n)
    }

    fn zero(&self) -> M {
        M::zeros(self.n, self.n)
    }

    fn j(&self) -> M {
        let xyi = &self.x * &self.y_inv;
        let s = &self.y + &xyi * &self.x;
        let it = blocks(&[vec![&-&xyi, &-&s], vec![&self.y_inv, &(&self.y_inv * &self.x)]]);
        let z = M::zeros(2 * self.n, 2 * self.n);
        blocks(&[vec![&it, &z], vec![&z, &-it.transpose()]])
    }

    fn pairing(&self) -> M {
        let z = M::zeros(2 * self.n, 2 * self.n);
        let i = M::identity(2 * self.n, 2 * self.n);
        blocks(&[vec![&z, &i], vec![&i, &z]])
    }

    fn swap(&self) -> M {
        let (i, z) = (self.id(), self.zero());
        blocks(&[
            vec![&i, &z, &z, &z],
            vec![&z, &z, &z, &i],
            vec![&z, &z, &i, &z],
            vec![&z, &i, &z, &z],
        ])
    }

    fn shear(&self, b: &M) -> M {
        let m = 2 * self.n;
        let bb = blocks(&[vec![b, &self.zero()], vec![&self.zero(), &self.zero()]]);
        let z = M::zeros(m, m);
        let i = M::identity(m, m);
        blocks(&[vec![&i, &z], vec![&bb, &i]])
    }
}

fn compare(name: String, exact: bool, float: bool, res: f64) -> Record {
    if exact == float {
        Record::pass(name, ANCHOR)
    } else {
        Record::fail(name, ANCHOR, format!("exact verdict {exact}, float verdict {float} (residual {res:.3e})"))
    }
}

/// Float re-runs of the axioms, mirror identities, rigidity and the
/// integrability matrix test.
pub fn float_checks(p: &PeriodMatrix, tau: &CMatrix, objects: &[ComplexSideObject]) -> Result<Vec<Record>, CliError> {
    let Some(f) = FloatTorus::new(p) else {
        return Ok(vec![Record::fail("float.setup", ANCHOR, "Y is numerically singular")]);
    };
    let mut out = Vec::new();
    let j = f.j();
    let id4 = M::identity(4 * f.n, 4 * f.n);
    let pr = f.pairing();
    let exact_j = build_it(p);

    let r1 = residual(&(&j * &j), &-&id4);
    let r2 = residual(&(j.transpose() * &pr * &j), &pr);
    out.push(compare("float.gcs-axioms".into(), exact_j.satisfies_axioms(), r1.max(r2) <= TOLERANCE, r1.max(r2)));

    let sw = f.swap();
    let mj = &sw * &j * &sw;
    let r = residual(&(&sw * &mj * &sw), &j);
    out.push(compare("float.mirror-involution".into(), mirror(&mirror(&exact_j)) == exact_j, r <= TOLERANCE, r));

    // −(T⁻¹)ᵗ directly and through (Y + XY⁻¹X)⁻¹.
    let w = match inverse(&f.t) {
        Some(ti) => -ti.transpose(),
        None => return Ok(vec![Record::fail("float.setup", ANCHOR, "T is numerically singular")]),
    };
    let s = &f.y + &f.x * &f.y_inv * &f.x;
    let (re_f, im_f) = match inverse(&s) {
        Some(si) => {
            let sit = si.transpose();
            (-(&sit * f.x.transpose() * f.y_inv.transpose()), sit)
        }
        None => return Ok(vec![Record::fail("float.setup", ANCHOR, "Y + XY^-1X is numerically singular")]),
    };
    let r = residual(&real(&w), &re_f).max(residual(&imag(&w), &im_f));
    let (re_e, im_e) = closed_form_parts(p)?;
    let exact = CMatrix::from_parts(&re_e, &im_e)? == -p.t_inv().transpose();
    out.push(compare("float.mirror-closed-forms".into(), exact, r <= TOLERANCE, r));

    // A₁·C·A₂ against the swapped structure.
    let (bm, om) = (real(&w), imag(&w));
    let r = match inverse(&om) {
        Some(oi) => {
            let (i, z) = (f.id(), f.zero());
            let sh = |b: &M| blocks(&[vec![&i, &z, &z, &z], vec![&z, &i, &z, &z], vec![&z, &-b, &i, &z], vec![&b.transpose(), &z, &z, &i]]);
            let c = blocks(&[
                vec![&z, &z, &z, &-oi.transpose()],
                vec![&z, &z, &oi, &z],
                vec![&z, &-&om, &z, &z],
                vec![&om.transpose(), &z, &z, &z],
            ]);
            residual(&(sh(&bm) * c * sh(&-&bm)), &mj)
        }
        None => f64::INFINITY,
    };
    out.push(compare("float.mirror-factorization".into(), factorization_holds(p), r <= TOLERANCE, r));

    let tf = to_float(tau);
    let shear = f.shear(&tf);
    let unshear = f.shear(&-&tf);
    let moved = &unshear * &j * &shear;
    let r = residual(&moved, &j);
    let exact_moved = b_transform(&exact_j, &BField::tau(tau)?)? != exact_j;
    out.push(compare("float.b-field-rigidity".into(), exact_moved, r > TOLERANCE, r));

    for (k, o) in objects.iter().enumerate() {
        let at = to_float(o.section().a()) * &f.t;
        let r = residual(&at, &at.transpose());
        out.push(compare(format!("float.object{k:02}.integrable"), o.integrable_matrix_test(), r <= TOLERANCE, r));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use torus_gcs::linalg::validate_period;

    #[test]
    fn float_agrees_on_a_simple_torus() {
        let t = CMatrix::from_parts(&CMatrix::from_ints(&[&[1, 0], &[1, 2]]), &CMatrix::from_ints(&[&[2, 1], &[1, 3]])).unwrap();
        let p = validate_period(t).unwrap();
        let tau = CMatrix::from_ints(&[&[0, 1], &[-1, 0]]);
        let recs = float_checks(&p, &tau, &[]).unwrap();
        assert_eq!(recs.len(), 5);
        assert!(recs.iter().all(|r| r.pass), "{recs:?}");
    }
}
