#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "coverfollow/rng.hpp"

namespace coverfollow::drl {

inline constexpr int kActionDim = 2;
using Action = std::array<double, kActionDim>;

struct Transition {
  std::vector<double> obs;
  Action action{};
  double reward = 0.0;
  std::vector<double> next_obs;
  bool done = false;

  friend bool operator==(const Transition&, const Transition&) = default;
};

inline constexpr std::size_t kDefaultReplayCapacity = 100'000;

/// Fixed-capacity FIFO ring of transitions.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity = kDefaultReplayCapacity);

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }

  /// Evicts the oldest transition once full.
  void push(Transition t);
  /// i-th oldest transition still stored.
  const Transition& operator[](std::size_t i) const;
  /// k uniform draws with replacement. Throws InsufficientSamples if size() < k.
  std::vector<const Transition*> sample(std::size_t k, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // slot of the oldest item once full
  std::vector<Transition> items_;
};

inline void buffer_push(ReplayBuffer& buf, Transition t) { buf.push(std::move(t)); }
inline std::vector<const Transition*> buffer_sample(const ReplayBuffer& buf, std::size_t k,
                                                    Rng& rng) {
  return buf.sample(k, rng);
}

}  // namespace coverfollow::drl
