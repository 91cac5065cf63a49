#include "sfnav/replay.hpp"

namespace sfnav {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw ConfigError("replay buffer capacity must be positive");
    items_.reserve(capacity_);
}

void ReplayBuffer::push(Transition t) {
    if (items_.size() < capacity_) {
        items_.push_back(std::move(t));
    } else {
        items_[next_] = std::move(t);
        next_ = (next_ + 1) % capacity_;
    }
}

void ReplayBuffer::clear() {
    items_.clear();
    next_ = 0;
}

const Transition& ReplayBuffer::sample(Rng& rng) const {
    if (items_.empty()) throw ConfigError("cannot sample from an empty replay buffer");
    return items_[rng.uniform_index(items_.size())];
}

} // namespace sfnav
