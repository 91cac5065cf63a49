#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfnav/common.hpp"

namespace sfnav {

// One evaluation-phase record. Loss columns are left empty when the agent has
// no such loss; wall_ms is emitted only when wall-clock logging is enabled so
// that re-runs stay bit-identical.
struct MetricsRow {
    long step = 0;
    int task_id = 0;
    double mean_reward = 0.0;
    double std_reward = 0.0;
    double success_ratio = 0.0;
    double mean_steps = 0.0;
    std::optional<double> loss_sf;
    std::optional<double> loss_phi;
    std::optional<double> loss_q;
    double epsilon = 0.0;
    std::optional<double> wall_ms;
};

std::string metrics_header();
std::string format_metric(double v);
std::string metrics_row_line(const MetricsRow& row);

void write_metrics_csv(const std::string& path, const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> read_metrics_csv(const std::string& path);

// Table-I-style cross-task evaluation record.
struct MatrixRow {
    int pretrain_task = 0;
    int eval_task = 0;
    int success_num = 0;
    int success_den = 0;
    double mean_reward = 0.0;
    double std_reward = 0.0;
    double mean_steps = 0.0;
    double std_steps = 0.0;
};

std::string matrix_header();
void write_matrix_csv(const std::string& path, const std::vector<MatrixRow>& rows);

// First step (relative to the task segment's start) whose evaluation opens a
// run of `consecutive` rows with success_ratio >= threshold; nullopt if never.
std::optional<long> steps_to_convergence(const std::vector<MetricsRow>& rows,
                                         int task_id, double threshold,
                                         int consecutive);

} // namespace sfnav
