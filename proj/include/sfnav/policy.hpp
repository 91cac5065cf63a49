#pragma once

#include "sfnav/dqn.hpp"
#include "sfnav/env.hpp"
#include "sfnav/imitation.hpp"
#include "sfnav/planner.hpp"
#include "sfnav/sf_model.hpp"

namespace sfnav {

// Action source for evaluation rollouts. Learned policies read only the
// stacked observation; the planner oracle reads the ground-truth pose, which
// is never available to learned agents.
struct Policy {
    virtual ~Policy() = default;
    virtual Action act(const StackedState& state, const Pose& pose, Rng& rng) = 0;
};

class SfPolicy : public Policy {
public:
    SfPolicy(const SfModel& model, int task) : model_(&model), task_(task) {}
    Action act(const StackedState& state, const Pose&, Rng&) override {
        const std::vector<double> q = model_->q_values(task_, state.flat());
        return static_cast<Action>(argmax_lowest(q));
    }

private:
    const SfModel* model_;
    int task_;
};

class DqnPolicy : public Policy {
public:
    explicit DqnPolicy(const DqnModel& model) : model_(&model) {}
    Action act(const StackedState& state, const Pose&, Rng&) override {
        const std::vector<double> q = model_->q_values(state.flat());
        return static_cast<Action>(argmax_lowest(q));
    }

private:
    const DqnModel* model_;
};

class ImitationPolicy : public Policy {
public:
    explicit ImitationPolicy(const ImitationModel& model) : model_(&model) {}
    Action act(const StackedState& state, const Pose&, Rng&) override {
        return model_->select_action(state.flat());
    }

private:
    const ImitationModel* model_;
};

class AStarPolicy : public Policy {
public:
    explicit AStarPolicy(const MazeMap& map) : map_(&map) {}
    Action act(const StackedState&, const Pose& pose, Rng&) override {
        return optimal_action(*map_, pose);
    }

private:
    const MazeMap* map_;
};

class RandomPolicy : public Policy {
public:
    Action act(const StackedState&, const Pose&, Rng& rng) override {
        return static_cast<Action>(rng.uniform_int(kNumActions));
    }
};

} // namespace sfnav
