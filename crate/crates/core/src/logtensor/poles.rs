//! Pole systems and the polynomial expansion of logarithmic forms.

use super::tensor::{radial_contraction, radial_kernel, ResidueTensor};
use crate::error::{Error, Result};
use crate::forms::PolyForm;
use crate::polyring::{MultiPoly, PolyRng};

/// Homogeneous, pairwise non-proportional polynomials `f_1, ..., f_r` on C^{n+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleSystem {
    n: usize,
    polys: Vec<MultiPoly>,
    degrees: Vec<u32>,
}

impl PoleSystem {
    pub fn new(n: usize, polys: Vec<MultiPoly>) -> Result<Self> {
        let mut degrees = Vec::with_capacity(polys.len());
        for f in &polys {
            if f.nvars() != n + 1 {
                return Err(Error::NvarsMismatch(f.nvars(), n + 1));
            }
            let d = f.homogeneous_degree()?;
            if d == 0 {
                return Err(Error::Degenerate("constant pole polynomial".into()));
            }
            degrees.push(d);
        }
        for i in 0..polys.len() {
            for j in i + 1..polys.len() {
                if polys[i].is_proportional(&polys[j]) {
                    return Err(Error::Degenerate(format!(
                        "poles {} and {} are proportional",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(PoleSystem { n, polys, degrees })
    }

    /// Ambient projective dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn r(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn total_degree(&self) -> u32 {
        self.degrees.iter().sum()
    }

    /// `f_1 ⋯ f_r`.
    pub fn product(&self) -> MultiPoly {
        self.product_except(&[])
    }

    pub fn product_except(&self, skip: &[usize]) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars());
        for (j, f) in self.polys.iter().enumerate() {
            if !skip.contains(&j) {
                acc = &acc * f;
            }
        }
        acc
    }

    /// `Σ_I λ_I (∏_{j∉I} f_j) df_{i_1} ∧ ... ∧ df_{i_p}` for a tensor of any
    /// degree (degree 0 gives `λ · f_1⋯f_r`).
    pub fn expand_tensor(&self, a: &ResidueTensor) -> Result<PolyForm> {
        if a.r() != self.r() {
            return Err(Error::PoleCountMismatch(a.r(), self.r()));
        }
        let nv = self.nvars();
        let dfs: Vec<PolyForm> = self.polys.iter().map(PolyForm::differential).collect();
        let mut out = PolyForm::zero(nv, a.p());
        for (idx, lam) in a.entries() {
            let mut w = PolyForm::function(self.product_except(idx).scale(lam));
            for &i in idx {
                w = w.wedge(&dfs[i])?;
            }
            out = out.add(&w)?;
        }
        Ok(out)
    }
}

/// Complete data of a logarithmic form: poles plus residue tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct LogFoliationSpec {
    pub poles: PoleSystem,
    pub tensor: ResidueTensor,
}

impl LogFoliationSpec {
    pub fn new(poles: PoleSystem, tensor: ResidueTensor) -> Result<Self> {
        if poles.r() != tensor.r() {
            return Err(Error::PoleCountMismatch(tensor.r(), poles.r()));
        }
        if tensor.is_zero() {
            return Err(Error::ZeroTensor);
        }
        Ok(LogFoliationSpec { poles, tensor })
    }

    pub fn n(&self) -> usize {
        self.poles.n()
    }

    pub fn p(&self) -> usize {
        self.tensor.p()
    }

    /// Seeded generic poles of the given degrees and a tensor drawn as a
    /// random combination of the radial-kernel basis.
    pub fn random_projective(rng: &mut PolyRng, n: usize, degrees: &[u32], p: usize) -> Result<Self> {
        let poles = PoleSystem::new(n, degrees.iter().map(|&d| rng.homogeneous(n + 1, d)).collect())?;
        let mut t = ResidueTensor::zero(degrees.len(), p);
        for b in radial_kernel(degrees, p)? {
            t = t.add(&b.scale(&rng.nonzero_scalar()))?;
        }
        LogFoliationSpec::new(poles, t)
    }

    /// `i_R η = 0`, i.e. the form descends to projective space.
    pub fn is_projective(&self) -> Result<bool> {
        Ok(radial_contraction(&self.tensor, self.poles.degrees())?.is_zero())
    }
}

/// The denominator-cleared form `ω̃ = (f_1⋯f_r) η`; coefficient degrees are
/// checked to equal `Σ d_j - p`.
pub fn expand(spec: &LogFoliationSpec) -> Result<PolyForm> {
    let w = spec.poles.expand_tensor(&spec.tensor)?;
    let want = spec.poles.total_degree() as i64 - spec.p() as i64;
    for (_, c) in w.terms() {
        if c.homogeneous_degree().map(|d| d as i64) != Ok(want) {
            return Err(Error::Inconsistent(format!(
                "expanded coefficient is not homogeneous of degree {want}"
            )));
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational;
    use crate::forms::PolyVectorField;
    use crate::logtensor::tensor::{radial_kernel, random_tensor, tensor_wedge};
    use crate::polyring::PolyRng;

    fn z(n: usize, j: usize) -> MultiPoly {
        MultiPoly::var(n, j)
    }

    fn random_poles(rng: &mut PolyRng, n: usize, degrees: &[u32]) -> PoleSystem {
        PoleSystem::new(n, degrees.iter().map(|&d| rng.homogeneous(n + 1, d)).collect()).unwrap()
    }

    #[test]
    fn expand_examples() {
        let poles = PoleSystem::new(0, vec![z(1, 0)]).unwrap();
        let t = ResidueTensor::from_int_entries(1, 1, &[(&[0], 1)]);
        let w = expand(&LogFoliationSpec::new(poles, t).unwrap()).unwrap();
        assert_eq!(w, PolyForm::dz(1, 0));

        let poles = PoleSystem::new(1, vec![z(2, 0), z(2, 1)]).unwrap();
        let t = ResidueTensor::from_int_entries(2, 1, &[(&[0], 1), (&[1], -1)]);
        let w = expand(&LogFoliationSpec::new(poles, t).unwrap()).unwrap();
        let want = PolyForm::dz(2, 0)
            .mul_poly(&z(2, 1))
            .sub(&PolyForm::dz(2, 1).mul_poly(&z(2, 0)))
            .unwrap();
        assert_eq!(w, want);
    }

    #[test]
    fn pole_validation() {
        assert!(PoleSystem::new(1, vec![z(2, 0), z(2, 0).scale(&GaussianRational::from_int(3))]).is_err());
        assert_eq!(
            PoleSystem::new(1, vec![&z(2, 0) + &(&z(2, 1) * &z(2, 1))]).unwrap_err(),
            Error::Inhomogeneous
        );
        assert!(PoleSystem::new(2, vec![z(2, 0)]).is_err());
    }

    #[test]
    fn phi_is_multiplicative() {
        let mut rng = PolyRng::new(41);
        for k in 0..10 {
            let poles = random_poles(&mut rng, 3, &[1, 1, 2, 1][..3 + k % 2]);
            let r = poles.r();
            let a = random_tensor(&mut rng, r, 1);
            let b = random_tensor(&mut rng, r, 1 + k % 2);
            let lhs = poles
                .expand_tensor(&tensor_wedge(&a, &b).unwrap())
                .unwrap()
                .mul_poly(&poles.product());
            let rhs = poles
                .expand_tensor(&a)
                .unwrap()
                .wedge(&poles.expand_tensor(&b).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn radial_compatibility() {
        let mut rng = PolyRng::new(42);
        for k in 0..10 {
            let poles = random_poles(&mut rng, 3, &[1, 2, 1, 3]);
            let a = random_tensor(&mut rng, 4, 1 + k % 3);
            let lhs = poles
                .expand_tensor(&a)
                .unwrap()
                .contract(&PolyVectorField::radial(4))
                .unwrap();
            let rhs = poles
                .expand_tensor(&radial_contraction(&a, poles.degrees()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn projective_kernel_elements_expand_to_nonzero_forms() {
        let mut rng = PolyRng::new(43);
        let poles = random_poles(&mut rng, 3, &[1; 6]);
        let basis = radial_kernel(poles.degrees(), 2).unwrap();
        let r = PolyVectorField::radial(4);
        for b in &basis {
            let w = poles.expand_tensor(b).unwrap();
            assert!(!w.is_zero());
            assert!(w.contract(&r).unwrap().is_zero());
        }
        let mut combo = basis[0].clone();
        for b in &basis[1..] {
            combo = combo.add(&b.scale(&rng.nonzero_scalar())).unwrap();
        }
        assert!(!poles.expand_tensor(&combo).unwrap().is_zero());
    }

    #[test]
    fn expanded_degree() {
        let mut rng = PolyRng::new(44);
        let poles = random_poles(&mut rng, 2, &[1, 2, 2]);
        let t = radial_kernel(poles.degrees(), 1).unwrap().remove(0);
        let spec = LogFoliationSpec::new(poles, t).unwrap();
        assert!(spec.is_projective().unwrap());
        let w = expand(&spec).unwrap();
        for (_, c) in w.terms() {
            assert_eq!(c.homogeneous_degree().unwrap(), 4);
        }
    }
}
