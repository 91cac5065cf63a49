#include "sfnav/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sfnav {

std::string metrics_header() {
    return "step,task_id,mean_reward,std_reward,success_ratio,mean_steps,"
           "loss_sf,loss_phi,loss_q,epsilon,wall_ms";
}

std::string format_metric(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string opt_field(const std::optional<double>& v) {
    return v.has_value() ? format_metric(*v) : std::string();
}

} // namespace

std::string metrics_row_line(const MetricsRow& r) {
    std::ostringstream out;
    out << r.step << ',' << r.task_id << ',' << format_metric(r.mean_reward) << ','
        << format_metric(r.std_reward) << ',' << format_metric(r.success_ratio) << ','
        << format_metric(r.mean_steps) << ',' << opt_field(r.loss_sf) << ','
        << opt_field(r.loss_phi) << ',' << opt_field(r.loss_q) << ','
        << format_metric(r.epsilon) << ',' << opt_field(r.wall_ms);
    return out.str();
}

void write_metrics_csv(const std::string& path, const std::vector<MetricsRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("cannot write metrics file: " + path);
    out << metrics_header() << '\n';
    for (const MetricsRow& r : rows) out << metrics_row_line(r) << '\n';
}

std::vector<MetricsRow> read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open metrics file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty metrics file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != metrics_header()) {
        throw ConfigError("inconsistent metrics header in " + path);
    }

    std::vector<MetricsRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        while (fields.size() < 11) fields.emplace_back();
        MetricsRow r;
        r.step = std::stol(fields[0]);
        r.task_id = std::stoi(fields[1]);
        r.mean_reward = std::stod(fields[2]);
        r.std_reward = std::stod(fields[3]);
        r.success_ratio = std::stod(fields[4]);
        r.mean_steps = std::stod(fields[5]);
        if (!fields[6].empty()) r.loss_sf = std::stod(fields[6]);
        if (!fields[7].empty()) r.loss_phi = std::stod(fields[7]);
        if (!fields[8].empty()) r.loss_q = std::stod(fields[8]);
        r.epsilon = std::stod(fields[9]);
        if (!fields[10].empty()) r.wall_ms = std::stod(fields[10]);
        rows.push_back(r);
    }
    return rows;
}

std::string matrix_header() {
    return "pretrain_task,eval_task,success_num,success_den,mean_reward,std_reward,"
           "mean_steps,std_steps";
}

void write_matrix_csv(const std::string& path, const std::vector<MatrixRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigError("cannot write matrix file: " + path);
    out << matrix_header() << '\n';
    for (const MatrixRow& r : rows) {
        out << r.pretrain_task << ',' << r.eval_task << ',' << r.success_num << ','
            << r.success_den << ',' << format_metric(r.mean_reward) << ','
            << format_metric(r.std_reward) << ',' << format_metric(r.mean_steps) << ','
            << format_metric(r.std_steps) << '\n';
    }
}

std::optional<long> steps_to_convergence(const std::vector<MetricsRow>& rows,
                                         int task_id, double threshold,
                                         int consecutive) {
    // Segment base: last global step seen before this task's rows begin.
    long segment_base = 0;
    std::vector<long> streak_steps;
    for (const MetricsRow& r : rows) {
        if (r.task_id < task_id) {
            segment_base = std::max(segment_base, r.step);
            continue;
        }
        if (r.task_id != task_id) continue;
        if (r.success_ratio >= threshold) {
            streak_steps.push_back(r.step);
            if (static_cast<int>(streak_steps.size()) >= consecutive) {
                return streak_steps[streak_steps.size() - consecutive] - segment_base;
            }
        } else {
            streak_steps.clear();
        }
    }
    return std::nullopt;
}

} // namespace sfnav
