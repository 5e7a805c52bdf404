#include "coverfollow/drl/adam.hpp"

#include <cmath>

#include "coverfollow/errors.hpp"

namespace coverfollow::drl {
namespace {

template <typename Param, typename Grad>
void update(Param& p, const Grad& g, Grad& m, Grad& v, const AdamConfig& c, double bc1,
            double bc2) {
  if (p.size() != g.size() || m.size() != g.size() || v.size() != g.size())
    throw DimensionMismatch("optimizer state shape does not match parameters");
  m = c.beta1 * m + (1.0 - c.beta1) * g;
  v = c.beta2 * v + (1.0 - c.beta2) * g.cwiseProduct(g);
  p.array() -= c.learning_rate * (m.array() / bc1) / ((v.array() / bc2).sqrt() + c.epsilon);
}

}  // namespace

OptState OptState::for_network(const Mlp& net, AdamConfig config) {
  return {config, MlpGradients::zeros_like(net), MlpGradients::zeros_like(net), 0};
}

void opt_step(Mlp& net, const MlpGradients& grads, OptState& opt) {
  auto& layers = net.layers();
  if (grads.weight.size() != layers.size() || opt.first_moment.weight.size() != layers.size())
    throw DimensionMismatch("gradients do not match the network");
  ++opt.step;
  const auto t = static_cast<double>(opt.step);
  const double bc1 = 1.0 - std::pow(opt.config.beta1, t);
  const double bc2 = 1.0 - std::pow(opt.config.beta2, t);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    update(layers[l].weight, grads.weight[l], opt.first_moment.weight[l],
           opt.second_moment.weight[l], opt.config, bc1, bc2);
    update(layers[l].bias, grads.bias[l], opt.first_moment.bias[l], opt.second_moment.bias[l],
           opt.config, bc1, bc2);
  }
}

}  // namespace coverfollow::drl
