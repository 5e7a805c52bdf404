#pragma once

#include "coverfollow/drl/mlp.hpp"

namespace coverfollow::drl {

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First and second moment accumulators shaped like one network.
struct OptState {
  AdamConfig config;
  MlpGradients first_moment;
  MlpGradients second_moment;
  long step = 0;

  static OptState for_network(const Mlp& net, AdamConfig config = {});
};

/// One bias-corrected adaptive-moment step that descends along `grads`.
void opt_step(Mlp& net, const MlpGradients& grads, OptState& opt);

}  // namespace coverfollow::drl
