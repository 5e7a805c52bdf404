#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "coverfollow/rng.hpp"

namespace coverfollow::drl {

enum class OutputActivation { Identity, Tanh };

struct DenseLayer {
  Eigen::MatrixXd weight;  ///< out x in
  Eigen::VectorXd bias;    ///< out
};

/// Fully connected network: rectifier on hidden layers, identity or tanh on
/// the output layer.
class Mlp {
 public:
  Mlp() = default;
  /// Hidden layers use U(-1/sqrt(fan_in), 1/sqrt(fan_in)); the output layer
  /// uses U(-final_init, final_init).
  Mlp(std::vector<int> sizes, OutputActivation output, Rng& rng, double final_init = 3e-3);
  /// All-zero parameters.
  static Mlp zeros(std::vector<int> sizes, OutputActivation output);

  const std::vector<int>& sizes() const { return sizes_; }
  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  OutputActivation output_activation() const { return output_; }

  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  std::size_t parameter_count() const;
  /// Weights (column-major) then bias, layer by layer.
  std::vector<double> flatten() const;
  void unflatten(std::span<const double> params);

 private:
  std::vector<int> sizes_;
  OutputActivation output_ = OutputActivation::Identity;
  std::vector<DenseLayer> layers_;
};

/// Gradients with the same shapes as an Mlp's parameters.
struct MlpGradients {
  std::vector<Eigen::MatrixXd> weight;
  std::vector<Eigen::VectorXd> bias;

  static MlpGradients zeros_like(const Mlp& net);
  MlpGradients& operator+=(const MlpGradients& other);
  std::vector<double> flatten() const;
};

/// Activations of a batched forward pass (columns are samples).
struct ForwardCache {
  std::vector<Eigen::MatrixXd> activations;  ///< [0] = input, back() = output
};

Eigen::VectorXd mlp_forward(const Mlp& net, const Eigen::VectorXd& input);

struct BackwardResult {
  MlpGradients params;
  Eigen::VectorXd input_gradient;
};

/// Reverse-mode gradients of <upstream, net(input)>.
BackwardResult mlp_backward(const Mlp& net, const Eigen::VectorXd& input,
                            const Eigen::VectorXd& upstream);

Eigen::MatrixXd forward_batch(const Mlp& net, const Eigen::MatrixXd& inputs,
                              ForwardCache* cache = nullptr);

/// Backpropagates `upstream` (output_size x batch). Parameter gradients summed
/// over the batch are accumulated into *grads when non-null; the input
/// gradient is returned when want_input_gradient is set (else an empty matrix).
Eigen::MatrixXd backward_batch(const Mlp& net, const ForwardCache& cache,
                               const Eigen::MatrixXd& upstream, MlpGradients* grads,
                               bool want_input_gradient);

}  // namespace coverfollow::drl
