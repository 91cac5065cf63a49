#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sfnav/nn/dense.hpp"

namespace sfnav {

// Container layout: "SFRL" magic, format version u32, six u32 metadata fields,
// then per-parameter records of (length-prefixed name, rank u32, dims u32 each,
// float32 data, all little-endian, row-major). Values are stored as float32;
// a save/load/save round trip is bit-exact at the file level.
struct CheckpointMeta {
    std::uint32_t phi_dim = 0;
    std::uint32_t history = 0;
    std::uint32_t rays = 0;
    std::uint32_t num_actions = 0;
    std::uint32_t task_count = 0;
    std::uint32_t current_task = 0;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct NamedTensorConst {
    std::string name;
    const nn::Tensor* tensor;
};

struct LoadedCheckpoint {
    CheckpointMeta meta;
    std::vector<std::string> order; // record order as stored
    std::map<std::string, nn::Tensor> params;

    bool has(const std::string& name) const { return params.count(name) > 0; }
    const nn::Tensor& at(const std::string& name) const;
};

void save_checkpoint(const std::string& path, const CheckpointMeta& meta,
                     const std::vector<NamedTensorConst>& params);
void save_checkpoint(const std::string& path, const CheckpointMeta& meta,
                     const std::vector<nn::NamedParam>& params);

LoadedCheckpoint load_checkpoint(const std::string& path);

} // namespace sfnav
