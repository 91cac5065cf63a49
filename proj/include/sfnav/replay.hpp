#pragma once

#include <cstddef>
#include <vector>

#include "sfnav/common.hpp"

namespace sfnav {

// One experience record; states are flattened frame stacks. Stored as float to
// halve buffer memory (observations are exact grid-derived values).
struct Transition {
    std::vector<float> state;
    std::vector<float> next_state;
    int action = 0;
    float reward = 0.0f;
    bool terminal = false;
};

// Fixed-capacity ring with FIFO eviction; sampling is uniform with
// replacement over current contents.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(Transition t);
    std::size_t size() const { return items_.size(); }
    std::size_t capacity() const { return capacity_; }
    bool empty() const { return items_.empty(); }
    void clear();

    const Transition& sample(Rng& rng) const;
    const Transition& at(std::size_t i) const { return items_[i]; }

private:
    std::size_t capacity_;
    std::size_t next_ = 0; // overwrite cursor once full
    std::vector<Transition> items_;
};

} // namespace sfnav
