#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qswitch/holevo.hpp"

// Command implementations behind the qswitch CLI: single-configuration Holevo
// evaluation, combination sweeps, the chi-vs-m summary table, and the
// local/global classification listing, plus CSV/JSON/plain-table export.

namespace qswitch {

enum class OutputFormat { Table, Csv, Json };

struct RunConfig {
    int n = 3;
    int d = 2;
    std::vector<double> q;        // empty = all zeros
    std::vector<int> orders;      // explicit labels (empty when all_orders/m drive selection)
    bool all_orders = false;
    bool all_m = false;
    int m = 0;                    // 0 = unset
    std::vector<double> weights;  // empty = uniform
    double tol = 1e-9;
    int starts = 32;
    std::uint64_t seed = 7;
    OutputFormat format = OutputFormat::Table;
    int threads = 0;              // 0 = QSWITCH_THREADS or hardware concurrency
    bool with_chi = false;
    bool plot_data = false;
};

struct ResultRow {
    int n = 0;
    int d = 0;
    int m = 0;
    std::string combination;  // ascending labels, comma-joined
    std::string q;            // comma-joined strengths
    double chi_bits = 0.0;
    double h_control_bits = 0.0;
    double h_min_bits = 0.0;
    int global_pairs = 0;
    int total_pairs = 0;
    std::string predicted_class;  // Max / Min / Single / n/a
    bool converged = false;
};

struct ClassifyRow {
    std::string combination;
    int global_pairs = 0;
    int total_pairs = 0;
    std::string predicted_class;
    std::optional<double> chi_bits;
};

ResultRow cmd_holevo(const RunConfig& cfg);
std::vector<ResultRow> cmd_sweep(const RunConfig& cfg);
std::string cmd_table1(const RunConfig& cfg);
std::vector<ClassifyRow> cmd_classify(const RunConfig& cfg);

extern const char* const csv_header;

std::string to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(const std::string& text);
std::string to_json(const std::vector<ResultRow>& rows);
std::string to_table(const std::vector<ResultRow>& rows);
std::string to_plot_data(const std::vector<ResultRow>& rows);
std::string format_rows(const std::vector<ResultRow>& rows, OutputFormat format);

std::string classify_to_csv(const std::vector<ClassifyRow>& rows);
std::string classify_to_json(const std::vector<ClassifyRow>& rows);
std::string classify_to_table(const std::vector<ClassifyRow>& rows);
std::string format_classify(const std::vector<ClassifyRow>& rows, OutputFormat format);

/// Worker count: cfg.threads, else QSWITCH_THREADS, else hardware concurrency.
int resolve_threads(const RunConfig& cfg);

}  // namespace qswitch
