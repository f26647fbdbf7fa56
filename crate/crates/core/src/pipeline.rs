//! End-to-end assembly: skew algebra + quadric -> quadratic duals -> w ->
//! normalizing automorphism -> both Clifford models -> cross-certification
//! and shape certificates.

use std::fmt;

use crate::clifford::{
    clifford_localization, clifford_presentation, cross_certify, CliffordError, CrossReport,
    LocalizedClifford, PresentedClifford,
};
use crate::dual::{
    find_w, normalizing_automorphism, quadratic_dual, DualError, GradedAutomorphism, QuadraticData,
};
use crate::freealg::{NCPoly, Presentation, PresentationMode};
use crate::rewrite::complete;
use crate::scalar::Ring;
use crate::skew::{
    build_f, closed_form_normality, normality, FKind, NormalityCertificate, SkewAlgebra, SkewError,
};
use crate::structure::{wedderburn_certificate, StructError, WedderburnCertificate};

#[derive(Debug)]
pub enum PipelineError {
    NotNormal { failures: Vec<String> },
    Skew(SkewError),
    Dual(DualError),
    Clifford(CliffordError),
    Struct(StructError),
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::NotNormal { failures } => {
                write!(f, "f is not normal; failing conditions: {}", failures.join("; "))
            }
            PipelineError::Skew(e) => write!(f, "{e}"),
            PipelineError::Dual(e) => write!(f, "{e}"),
            PipelineError::Clifford(e) => write!(f, "{e}"),
            PipelineError::Struct(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PipelineError {}

impl From<SkewError> for PipelineError {
    fn from(e: SkewError) -> Self {
        PipelineError::Skew(e)
    }
}

impl From<DualError> for PipelineError {
    fn from(e: DualError) -> Self {
        PipelineError::Dual(e)
    }
}

impl From<CliffordError> for PipelineError {
    fn from(e: CliffordError) -> Self {
        PipelineError::Clifford(e)
    }
}

impl From<StructError> for PipelineError {
    fn from(e: StructError) -> Self {
        PipelineError::Struct(e)
    }
}

/// A validated quadric with its dual-side data.
pub struct Quadric<K: Ring> {
    pub skew: SkewAlgebra<K>,
    pub kind: FKind,
    pub f: NCPoly<K>,
    pub cert: NormalityCertificate<K>,
    pub sdual: Presentation<K>,
    pub adual: Presentation<K>,
    pub w: NCPoly<K>,
}

impl<K: Ring> Quadric<K> {
    /// Checks normality (general solver, cross-checked against the closed
    /// form), builds both duals and the element w.
    pub fn prepare(skew: SkewAlgebra<K>, kind: FKind) -> Result<Self, PipelineError> {
        let n = skew.n();
        let f = build_f(n, kind);
        let (closed_ok, failures) = closed_form_normality(skew.alpha_grid(), kind);
        let cert = normality(&skew, &f)?;
        let cert = match (closed_ok, cert) {
            (true, Some(c)) => c,
            (false, None) => return Err(PipelineError::NotNormal { failures }),
            (ok, cert) => {
                // The two normality routes must agree.
                return Err(PipelineError::NotNormal {
                    failures: vec![format!(
                        "solver and closed form disagree: closed={ok}, solver={}",
                        cert.is_some()
                    )],
                });
            }
        };
        let sq = QuadraticData::from_presentation(skew.presentation())?;
        let sdual = quadratic_dual(&sq)?;
        let adual = {
            let mut relations = skew.presentation().relations.clone();
            relations.push(f.clone());
            let p = Presentation::new(skew.gens().clone(), relations, PresentationMode::Quadratic)
                .expect("quadric relations are quadratic");
            quadratic_dual(&QuadraticData::from_presentation(&p)?)?
        };
        let w = find_w(&sdual, &adual)?;
        Ok(Quadric {
            skew,
            kind,
            f,
            cert,
            sdual,
            adual,
            w,
        })
    }

    pub fn n(&self) -> usize {
        self.skew.n()
    }

    /// The normalizing automorphism of w in the quotient dual.
    pub fn nu(&self) -> Result<GradedAutomorphism<K>, PipelineError> {
        let rs = complete(&self.adual, self.n() + 4).map_err(DualError::Rewrite)?;
        Ok(normalizing_automorphism(&rs, &self.w)?)
    }

    pub fn localization(&self) -> Result<LocalizedClifford<K>, PipelineError> {
        let nu = self.nu()?;
        Ok(clifford_localization(&self.adual, &self.w, &nu)?)
    }

    pub fn presentation(&self) -> Result<PresentedClifford<K>, PipelineError> {
        Ok(clifford_presentation(&self.skew, &self.cert)?)
    }

    pub fn cross_certify(
        &self,
        pres: &PresentedClifford<K>,
        loc: &LocalizedClifford<K>,
    ) -> Result<CrossReport, PipelineError> {
        Ok(cross_certify(pres, loc, &self.skew)?)
    }

    /// Wedderburn certificate of the localization model (the route that
    /// exists for every n); requires a field.
    pub fn certificate(&self) -> Result<(WedderburnCertificate, usize), PipelineError> {
        let loc = self.localization()?;
        let cert = wedderburn_certificate(&loc.cliff.algebra)?;
        Ok((cert, loc.i0))
    }
}

/// Coefficients of (1+t)^(n-1)/(1-t): partial sums of binomials. This is the
/// dimension oracle for the quotient dual.
pub fn hilbert_oracle(n: usize, dmax: usize) -> Vec<usize> {
    let binom = |k: usize| -> usize {
        let mut c = 1usize;
        for i in 0..k {
            c = c * (n - 1 - i) / (i + 1);
        }
        c
    };
    (0..=dmax)
        .map(|d| (0..=d.min(n - 1)).map(binom).sum())
        .collect()
}

/// Least i0 >= 1 with series coefficients 2^(n-1) at both 2 i0 and 2 i0 + 2.
pub fn stabilization_oracle(n: usize) -> usize {
    let target = 1usize << (n - 1);
    let dims = hilbert_oracle(n, 4 * n + 6);
    let mut i0 = 1;
    loop {
        if dims[2 * i0] == target && dims[2 * i0 + 2] == target {
            return i0;
        }
        i0 += 1;
    }
}

/// The expected Wedderburn shape (q, s) of the hyperbolic quadric.
pub fn expected_shape(n: usize) -> (u64, u64) {
    if n % 2 == 1 {
        (1, 1 << ((n - 1) / 2))
    } else {
        (2, 1 << ((n - 2) / 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    #[test]
    fn oracle_values() {
        assert_eq!(hilbert_oracle(3, 4), vec![1, 3, 4, 4, 4]);
        assert_eq!(hilbert_oracle(4, 5), vec![1, 4, 7, 8, 8, 8]);
        assert_eq!(stabilization_oracle(2), 1);
        assert_eq!(stabilization_oracle(3), 1);
        assert_eq!(stabilization_oracle(4), 2);
        assert_eq!(stabilization_oracle(5), 2);
        assert_eq!(stabilization_oracle(6), 3);
        assert_eq!(stabilization_oracle(7), 3);
    }

    #[test]
    fn expected_shapes() {
        assert_eq!(expected_shape(2), (2, 1));
        assert_eq!(expected_shape(3), (1, 2));
        assert_eq!(expected_shape(4), (2, 2));
        assert_eq!(expected_shape(5), (1, 4));
        assert_eq!(expected_shape(6), (2, 4));
        assert_eq!(expected_shape(7), (1, 8));
    }

    #[test]
    fn full_pipeline_n3_commutative() {
        let s: SkewAlgebra<Rat> = SkewAlgebra::commutative(3);
        let q = Quadric::prepare(s, FKind::Hyperbolic).unwrap();
        let (cert, i0) = q.certificate().unwrap();
        assert!(cert.semisimple);
        assert_eq!(cert.block_count, 1);
        assert_eq!(cert.block_sizes, Some(vec![2]));
        assert_eq!(i0, stabilization_oracle(3));
    }

    #[test]
    fn non_normal_grid_is_rejected() {
        let one = Rat::one;
        use num_traits::One;
        let alpha = vec![
            vec![one(), Rat::from_i64(4), Rat::from_i64(3)],
            vec![Rat::new(1.into(), 4.into()), one(), Rat::new(1.into(), 2.into())],
            vec![Rat::new(1.into(), 3.into()), Rat::from_i64(2), one()],
        ];
        let s = SkewAlgebra::new(alpha).unwrap();
        assert!(matches!(
            Quadric::prepare(s, FKind::Hyperbolic),
            Err(PipelineError::NotNormal { .. })
        ));
    }
}
