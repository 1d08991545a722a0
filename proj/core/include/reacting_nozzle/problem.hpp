#pragma once

#include "reacting_nozzle/gas_model.hpp"
#include "reacting_nozzle/nozzle_geometry.hpp"

namespace reacting_nozzle {

/// Everything that defines the physical problem: gas, walls and inlet data.
struct Problem {
  GasConstants gas;
  WallSpec walls;
  InflowSpec inflow;

  void validate() const {
    gas.validate();
    walls.validate();
    inflow.validate();
  }
};

/// Same problem with every wall and inflow perturbation scaled by epsilon.
inline Problem with_epsilon(Problem problem, double epsilon) {
  problem.walls.amplitude_scale = epsilon;
  problem.inflow.epsilon = epsilon;
  return problem;
}

}  // namespace reacting_nozzle
