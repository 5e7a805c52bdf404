#include "coverfollow/drl/mlp.hpp"

#include <cmath>
#include <string>

#include "coverfollow/errors.hpp"

namespace coverfollow::drl {
namespace {

void check_sizes(const std::vector<int>& sizes) {
  if (sizes.size() < 2) throw DimensionMismatch("an Mlp needs at least input and output sizes");
  for (int s : sizes)
    if (s <= 0) throw DimensionMismatch("layer sizes must be positive");
}

void require_rows(Eigen::Index got, int want, const char* what) {
  if (got != want)
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(want) +
                            " rows, got " + std::to_string(got));
}

}  // namespace

Mlp::Mlp(std::vector<int> sizes, OutputActivation output, Rng& rng, double final_init)
    : sizes_(std::move(sizes)), output_(output) {
  check_sizes(sizes_);
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const int in = sizes_[l];
    const int out = sizes_[l + 1];
    const bool last = l + 2 == sizes_.size();
    const double bound = last ? final_init : 1.0 / std::sqrt(static_cast<double>(in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    DenseLayer layer{Eigen::MatrixXd(out, in), Eigen::VectorXd(out)};
    for (Eigen::Index c = 0; c < layer.weight.cols(); ++c)
      for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) layer.weight(r, c) = dist(rng);
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = dist(rng);
    layers_.push_back(std::move(layer));
  }
}

Mlp Mlp::zeros(std::vector<int> sizes, OutputActivation output) {
  check_sizes(sizes);
  Mlp net;
  net.sizes_ = std::move(sizes);
  net.output_ = output;
  for (std::size_t l = 0; l + 1 < net.sizes_.size(); ++l) {
    net.layers_.push_back({Eigen::MatrixXd::Zero(net.sizes_[l + 1], net.sizes_[l]),
                           Eigen::VectorXd::Zero(net.sizes_[l + 1])});
  }
  return net;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

std::vector<double> Mlp::flatten() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  for (const auto& l : layers_) {
    out.insert(out.end(), l.weight.data(), l.weight.data() + l.weight.size());
    out.insert(out.end(), l.bias.data(), l.bias.data() + l.bias.size());
  }
  return out;
}

void Mlp::unflatten(std::span<const double> params) {
  if (params.size() != parameter_count())
    throw DimensionMismatch("parameter vector length does not match the network");
  std::size_t k = 0;
  for (auto& l : layers_) {
    std::copy_n(params.data() + k, l.weight.size(), l.weight.data());
    k += static_cast<std::size_t>(l.weight.size());
    std::copy_n(params.data() + k, l.bias.size(), l.bias.data());
    k += static_cast<std::size_t>(l.bias.size());
  }
}

MlpGradients MlpGradients::zeros_like(const Mlp& net) {
  MlpGradients g;
  for (const auto& l : net.layers()) {
    g.weight.push_back(Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()));
    g.bias.push_back(Eigen::VectorXd::Zero(l.bias.size()));
  }
  return g;
}

MlpGradients& MlpGradients::operator+=(const MlpGradients& other) {
  if (other.weight.size() != weight.size()) throw DimensionMismatch("gradient layer count");
  for (std::size_t l = 0; l < weight.size(); ++l) {
    weight[l] += other.weight[l];
    bias[l] += other.bias[l];
  }
  return *this;
}

std::vector<double> MlpGradients::flatten() const {
  std::vector<double> out;
  for (std::size_t l = 0; l < weight.size(); ++l) {
    out.insert(out.end(), weight[l].data(), weight[l].data() + weight[l].size());
    out.insert(out.end(), bias[l].data(), bias[l].data() + bias[l].size());
  }
  return out;
}

Eigen::MatrixXd forward_batch(const Mlp& net, const Eigen::MatrixXd& inputs, ForwardCache* cache) {
  require_rows(inputs.rows(), net.input_size(), "forward input");
  const auto& layers = net.layers();
  if (cache != nullptr) {
    cache->activations.clear();
    cache->activations.push_back(inputs);
  }
  Eigen::MatrixXd a = inputs;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    Eigen::MatrixXd z = layers[l].weight * a;
    z.colwise() += layers[l].bias;
    if (l + 1 < layers.size()) {
      a = z.cwiseMax(0.0);
    } else if (net.output_activation() == OutputActivation::Tanh) {
      a = z.array().tanh().matrix();
    } else {
      a = std::move(z);
    }
    if (cache != nullptr) cache->activations.push_back(a);
  }
  return a;
}

Eigen::MatrixXd backward_batch(const Mlp& net, const ForwardCache& cache,
                               const Eigen::MatrixXd& upstream, MlpGradients* grads,
                               bool want_input_gradient) {
  const auto& layers = net.layers();
  if (cache.activations.size() != layers.size() + 1)
    throw DimensionMismatch("forward cache does not match the network");
  require_rows(upstream.rows(), net.output_size(), "upstream gradient");
  if (upstream.cols() != cache.activations.back().cols())
    throw DimensionMismatch("upstream batch size does not match the forward pass");
  if (grads != nullptr && grads->weight.size() != layers.size())
    throw DimensionMismatch("gradient buffer does not match the network");

  // delta = dL/dz for the current layer.
  Eigen::MatrixXd delta = upstream;
  if (net.output_activation() == OutputActivation::Tanh) {
    const auto& y = cache.activations.back();
    delta.array() *= (1.0 - y.array().square());
  }
  for (std::size_t l = layers.size(); l-- > 0;) {
    const Eigen::MatrixXd& a_in = cache.activations[l];
    if (grads != nullptr) {
      grads->weight[l].noalias() += delta * a_in.transpose();
      grads->bias[l] += delta.rowwise().sum();
    }
    if (l == 0 && !want_input_gradient) return {};
    Eigen::MatrixXd back = layers[l].weight.transpose() * delta;
    if (l == 0) return back;
    // Rectifier derivative from the stored (post-activation) values.
    delta = (a_in.array() > 0.0).select(back, 0.0);
  }
  return {};
}

Eigen::VectorXd mlp_forward(const Mlp& net, const Eigen::VectorXd& input) {
  return forward_batch(net, input);
}

BackwardResult mlp_backward(const Mlp& net, const Eigen::VectorXd& input,
                            const Eigen::VectorXd& upstream) {
  ForwardCache cache;
  forward_batch(net, input, &cache);
  BackwardResult r;
  r.params = MlpGradients::zeros_like(net);
  r.input_gradient = backward_batch(net, cache, upstream, &r.params, true);
  return r;
}

}  // namespace coverfollow::drl
