#include "coverfollow/drl/replay_buffer.hpp"

#include <stdexcept>
#include <string>

#include "coverfollow/errors.hpp"

namespace coverfollow::drl {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("replay capacity must be positive");
}

void ReplayBuffer::push(Transition t) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
    return;
  }
  items_[head_] = std::move(t);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::operator[](std::size_t i) const {
  if (i >= items_.size()) throw std::out_of_range("replay index");
  return items_[(head_ + i) % items_.size()];
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t k, Rng& rng) const {
  if (items_.size() < k || items_.empty())
    throw InsufficientSamples("requested " + std::to_string(k) + " samples from " +
                              std::to_string(items_.size()));
  std::uniform_int_distribution<std::size_t> pick(0, items_.size() - 1);
  std::vector<const Transition*> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(&items_[pick(rng)]);
  return out;
}

}  // namespace coverfollow::drl
