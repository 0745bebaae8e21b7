//! One-stop construction of the whole pipeline: canonical forms, group,
//! special orbits, residual, census, the two special maps and their cycles.

use crate::config::RunConfig;
use crate::dynamics::{two_cycles, TwoCycle};
use crate::equivariants::Equivariants;
use crate::error::Result;
use crate::forms::CanonicalInvariants;
use crate::group::{IcosaGroup, Orbit};
use crate::search::{
    basins::{FundamentalTriangle, NewtonTargets},
    build_special_maps, new_root_slices, real_restriction_census, ResidualPolynomial,
    RootCensus, SearchContext, SpecialMapSolution,
};

/// Everything the subcommands and the acceptance suite need, built eagerly
/// in dependency order. Construction is deterministic.
pub struct Context {
    pub config: RunConfig,
    pub inv: CanonicalInvariants,
    pub eq: Equivariants,
    pub group: IcosaGroup,
    pub vertices: Orbit,
    pub faces: Orbit,
    pub edges: Orbit,
    pub search: SearchContext,
    pub residual: ResidualPolynomial,
    pub census: RootCensus,
    pub soccer: SpecialMapSolution,
    pub dual_soccer: SpecialMapSolution,
    pub soccer_cycles: Vec<TwoCycle>,
    pub dual_cycles: Vec<TwoCycle>,
}

impl Context {
    pub fn build(config: RunConfig) -> Result<Self> {
        let config = config.sanitized();
        let inv = CanonicalInvariants::build()?;
        let eq = Equivariants::build(&inv);
        let group = IcosaGroup::build(config.tol)?;
        let (vertices, faces, edges) = group.special_orbits(&inv)?;
        let search = SearchContext::build(&inv, &eq);
        let residual = ResidualPolynomial::build(&inv, &eq)?;
        let census = real_restriction_census(
            &residual.restriction(),
            &vertices,
            &faces,
            &edges,
            config.digits,
        )?;
        let slices = new_root_slices(&group, &census)?;
        let (soccer, dual_soccer) =
            build_special_maps(&search, &eq, &group, &vertices, &faces, &slices)?;
        let soccer_cycles = two_cycles(&soccer.map, &soccer.orbit)?;
        let dual_cycles = two_cycles(&dual_soccer.map, &dual_soccer.orbit)?;
        Ok(Context {
            config,
            inv,
            eq,
            group,
            vertices,
            faces,
            edges,
            search,
            residual,
            census,
            soccer,
            dual_soccer,
            soccer_cycles,
            dual_cycles,
        })
    }

    /// Targets for the Newton-basin classification.
    pub fn newton_targets(&self) -> NewtonTargets {
        NewtonTargets::new(
            self.vertices.clone(),
            self.faces.clone(),
            self.edges.clone(),
            self.soccer.orbit.clone(),
            self.dual_soccer.orbit.clone(),
        )
    }

    pub fn fundamental_triangle(&self) -> Result<FundamentalTriangle> {
        FundamentalTriangle::standard(&self.vertices, &self.faces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_builds() {
        let ctx = Context::build(RunConfig::default()).unwrap();
        assert_eq!(ctx.soccer_cycles.len(), 30);
        assert_eq!(ctx.dual_cycles.len(), 30);
        assert_eq!(ctx.census.total, 61);
    }
}
