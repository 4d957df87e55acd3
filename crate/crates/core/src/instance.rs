use crate::error::{expect_dim, Error, Result};
use crate::geometry::{AffineFunctional, AffineMap, Polytope};
use crate::hull::check_surjective;

/// A validated problem: `φ: C → D` onto, and `f` affine on `C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    domain: Polytope,
    map: AffineMap,
    target: Polytope,
    functional: AffineFunctional,
    explicit_target: bool,
}

impl Instance {
    /// Checks dimensions and, when `target` is given, that `φ(C) = D`.
    /// Without a target, `D` is defined as `φ(C)`.
    pub fn new(
        domain: Polytope,
        map: AffineMap,
        target: Option<Polytope>,
        functional: AffineFunctional,
    ) -> Result<Self> {
        expect_dim("map domain", domain.dim(), map.domain_dim())?;
        expect_dim("functional", domain.dim(), functional.dim())?;
        let explicit_target = target.is_some();
        let target = match target {
            Some(target) => {
                expect_dim("target polytope", map.codomain_dim(), target.dim())?;
                check_surjective(&map, &domain, &target)?.map_err(Error::NotSurjective)?;
                target
            }
            None => map.image(&domain)?,
        };
        Ok(Instance {
            domain,
            map,
            target,
            functional,
            explicit_target,
        })
    }

    pub fn domain(&self) -> &Polytope {
        &self.domain
    }

    pub fn map(&self) -> &AffineMap {
        &self.map
    }

    pub fn target(&self) -> &Polytope {
        &self.target
    }

    pub fn functional(&self) -> &AffineFunctional {
        &self.functional
    }

    /// Whether `D` was supplied rather than derived as `φ(C)`.
    pub fn has_explicit_target(&self) -> bool {
        self.explicit_target
    }

    /// Same geometry, different functional. No re-validation of the
    /// surjectivity is needed.
    pub fn with_functional(&self, functional: AffineFunctional) -> Result<Self> {
        expect_dim("functional", self.domain.dim(), functional.dim())?;
        Ok(Instance {
            functional,
            ..self.clone()
        })
    }
}
