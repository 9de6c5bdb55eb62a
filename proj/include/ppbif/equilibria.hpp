#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ppbif/model.hpp"
#include "ppbif/nullcline.hpp"

namespace ppbif {

struct Equilibrium {
  PlanarState state;
  double residual_norm = 0.0;   // ||vector_field||_inf
  double residual_scale = 0.0;  // largest additive term at the state
  Branch branch = Branch::Ascending;
  std::size_t cell = 0;  // index into NullclineProfile::cells()
};

/// Positive predator density on the predator nullcline above x, if any.
/// For Crowley-Martin with c = 0 the predator nullcline is the vertical
/// line gamma a x / (1 + b x) = d and this returns nullopt.
std::optional<double> predator_nullcline_y(const ModelInstance& m, double x);

/// All interior equilibria, ordered by x. Sign-change scan of
/// g(x) - p(x) on 512 panels (4096 when roots crowd), bisection and a
/// Newton polish on the full field.
std::vector<Equilibrium> find_coexistence_equilibria(const ModelInstance& m);
std::vector<Equilibrium> find_coexistence_equilibria(const ModelInstance& m, const NullclineProfile& profile);

/// (0,0) and the prey-only state, where defined.
std::vector<PlanarState> boundary_equilibria(const ModelInstance& m);

/// Copy of m with the conditioning parameter (e, delta or gamma) solved
/// from the predator equation so that (x, g(x)) is a coexistence
/// equilibrium. Throws NullclineNonpositive when g(x) <= 0 or undefined.
ModelInstance condition_on_cep(const ModelInstance& m, double x);

/// Newton iteration on the vector field from `guess`. Returns nullopt if
/// it leaves the open quadrant or does not converge.
std::optional<PlanarState> refine_equilibrium(const ModelInstance& m, PlanarState guess, int max_iter = 50);

}  // namespace ppbif
