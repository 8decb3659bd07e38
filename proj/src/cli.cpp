#include "qswitch/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qswitch {

const char* const csv_header =
    "N,d,m,combination,q,chi_bits,h_control_bits,h_min_bits,global_pairs,total_pairs,"
    "predicted_class,converged";

namespace {

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string fmtg(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string join_labels(const std::vector<int>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(labels[i]);
    }
    return out;
}

std::string join_q(const std::vector<double>& q) {
    std::string out;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (i) out += ',';
        out += fmtg(q[i]);
    }
    return out;
}

std::vector<double> effective_q(const RunConfig& cfg) {
    if (cfg.q.empty()) return std::vector<double>(cfg.n, 0.0);
    if (static_cast<int>(cfg.q.size()) != cfg.n)
        throw std::invalid_argument("q must have one entry per channel");
    return cfg.q;
}

template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

ResultRow evaluate_row(const RunConfig& cfg, const std::vector<int>& labels,
                       const std::vector<double>& weights) {
    const auto q = effective_q(cfg);
    OrderCombination comb = weights.empty() ? uniform_combination(cfg.n, labels)
                                            : make_combination(cfg.n, labels, weights);
    const SwitchSpec spec = depolarizing_switch(cfg.n, cfg.d, q, comb);
    const OptimizerOptions opts{cfg.starts, cfg.seed, cfg.tol, 0};
    const HolevoResult hr = holevo_chi(spec, opts);
    if (hr.control_drift > control_drift_warn_threshold)
        std::fprintf(stderr,
                     "warning: control output varies with the target input "
                     "(drift %.3e) for combination %s\n",
                     hr.control_drift, join_labels(spec.combination.labels()).c_str());

    ResultRow row;
    row.n = cfg.n;
    row.d = cfg.d;
    row.m = spec.combination.m();
    row.combination = join_labels(spec.combination.labels());
    row.q = join_q(q);
    row.chi_bits = hr.chi;
    row.h_control_bits = hr.h_control;
    row.h_min_bits = hr.h_min;
    if (row.m >= 2) {
        const PairCount pc = global_pair_count(spec.combination);
        row.global_pairs = pc.global;
        row.total_pairs = pc.total;
    }
    row.predicted_class = (cfg.n == 3 && spec.combination.uniform())
                              ? to_string(predict_class(spec.combination))
                              : "n/a";
    row.converged = hr.converged;
    return row;
}

std::vector<int> sweep_m_values(const RunConfig& cfg) {
    const auto nfact = static_cast<int>(factorial(cfg.n));
    if (cfg.all_m || (cfg.m == 0 && cfg.all_orders)) {
        std::vector<int> ms(nfact);
        for (int m = 1; m <= nfact; ++m) ms[m - 1] = m;
        return ms;
    }
    if (cfg.m < 1 || cfg.m > nfact) throw std::invalid_argument("m out of range");
    return {cfg.m};
}

}  // namespace

int resolve_threads(const RunConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("QSWITCH_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

ResultRow cmd_holevo(const RunConfig& cfg) {
    if (cfg.orders.empty())
        throw std::invalid_argument("holevo requires an explicit --orders label list");
    return evaluate_row(cfg, cfg.orders, cfg.weights);
}

std::vector<ResultRow> cmd_sweep(const RunConfig& cfg) {
    if (!cfg.orders.empty())
        throw std::invalid_argument("sweep enumerates combinations; use holevo for explicit orders");
    if (!cfg.weights.empty())
        throw std::invalid_argument("sweep uses uniform weights");
    if (!cfg.all_orders && !cfg.all_m && cfg.m == 0)
        throw std::invalid_argument("sweep requires --m <value|all> or --orders all");

    std::vector<std::vector<int>> jobs;
    for (int m : sweep_m_values(cfg))
        for (const auto& comb : enumerate_combinations(cfg.n, m)) jobs.push_back(comb.labels());

    std::vector<ResultRow> rows(jobs.size());
    parallel_for(static_cast<int>(jobs.size()), resolve_threads(cfg),
                 [&](int i) { rows[i] = evaluate_row(cfg, jobs[i], {}); });
    return rows;
}

std::string cmd_table1(const RunConfig& cfg) {
    if (cfg.n != 3) throw std::invalid_argument("table1 is defined for 3 channels");
    for (double q : cfg.q)
        if (q != 0.0)
            throw std::invalid_argument("table1 is defined for completely depolarizing channels");

    struct Job {
        int d;
        std::vector<int> labels;
    };
    std::vector<Job> jobs;
    for (int d : {2, 3})
        for (int m = 1; m <= 6; ++m)
            for (const auto& comb : enumerate_combinations(3, m))
                jobs.push_back({d, comb.labels()});

    std::vector<double> chi(jobs.size());
    parallel_for(static_cast<int>(jobs.size()), resolve_threads(cfg), [&](int i) {
        RunConfig c = cfg;
        c.d = jobs[i].d;
        c.q.assign(3, 0.0);
        chi[i] = evaluate_row(c, jobs[i].labels, {}).chi_bits;
    });

    // chi_max / chi_min per (d, m)
    double cmax[2][7], cmin[2][7];
    for (int di = 0; di < 2; ++di)
        for (int m = 1; m <= 6; ++m) {
            cmax[di][m] = -1.0;
            cmin[di][m] = 2.0;
        }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const int di = jobs[i].d == 2 ? 0 : 1;
        const int m = static_cast<int>(jobs[i].labels.size());
        cmax[di][m] = std::max(cmax[di][m], chi[i]);
        cmin[di][m] = std::min(cmin[di][m], chi[i]);
    }

    auto fmt4 = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", v);
        return std::string(buf);
    };
    std::ostringstream out;
    out << " m   chi_max(d=2)  chi_max(d=3)  chi_min(d=2)  chi_min(d=3)\n";
    for (int m = 1; m <= 6; ++m) {
        char line[160];
        if (m >= 5)
            std::snprintf(line, sizeof line, " %d   %12s  %12s  %12s  %12s\n", m,
                          fmt4(cmax[0][m]).c_str(), fmt4(cmax[1][m]).c_str(), "-", "-");
        else
            std::snprintf(line, sizeof line, " %d   %12s  %12s  %12s  %12s\n", m,
                          fmt4(cmax[0][m]).c_str(), fmt4(cmax[1][m]).c_str(),
                          fmt4(cmin[0][m]).c_str(), fmt4(cmin[1][m]).c_str());
        out << line;
    }
    return out.str();
}

std::vector<ClassifyRow> cmd_classify(const RunConfig& cfg) {
    if (cfg.n != 3) throw std::invalid_argument("classify is defined for 3 channels");

    std::vector<std::vector<int>> jobs;
    if (!cfg.orders.empty()) {
        jobs.push_back(cfg.orders);
    } else {
        RunConfig selection = cfg;
        if (!cfg.all_m && cfg.m == 0) selection.all_m = true;  // bare classify lists everything
        for (int m : sweep_m_values(selection))
            for (const auto& comb : enumerate_combinations(cfg.n, m)) jobs.push_back(comb.labels());
    }

    std::vector<ClassifyRow> rows(jobs.size());
    parallel_for(static_cast<int>(jobs.size()), resolve_threads(cfg), [&](int i) {
        const OrderCombination comb = uniform_combination(cfg.n, jobs[i]);
        ClassifyRow& row = rows[i];
        row.combination = join_labels(comb.labels());
        if (comb.m() >= 2) {
            const PairCount pc = global_pair_count(comb);
            row.global_pairs = pc.global;
            row.total_pairs = pc.total;
        }
        row.predicted_class = to_string(predict_class(comb));
        if (cfg.with_chi) row.chi_bits = evaluate_row(cfg, jobs[i], {}).chi_bits;
    });
    return rows;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::string out = csv_header;
    out += '\n';
    for (const auto& r : rows) {
        out += std::to_string(r.n) + ',' + std::to_string(r.d) + ',' + std::to_string(r.m) + ',';
        out += '"' + r.combination + "\",";
        out += '"' + r.q + "\",";
        out += fmt6(r.chi_bits) + ',' + fmt6(r.h_control_bits) + ',' + fmt6(r.h_min_bits) + ',';
        out += std::to_string(r.global_pairs) + ',' + std::to_string(r.total_pairs) + ',';
        out += r.predicted_class + ',';
        out += r.converged ? "true" : "false";
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
        if (quoted) {
            if (ch == '"')
                quoted = false;
            else
                cur += ch;
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

std::vector<ResultRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != csv_header)
        throw std::invalid_argument("parse_csv: unexpected header");

    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 12) throw std::invalid_argument("parse_csv: wrong field count");
        ResultRow r;
        r.n = std::stoi(f[0]);
        r.d = std::stoi(f[1]);
        r.m = std::stoi(f[2]);
        r.combination = f[3];
        r.q = f[4];
        r.chi_bits = std::stod(f[5]);
        r.h_control_bits = std::stod(f[6]);
        r.h_min_bits = std::stod(f[7]);
        r.global_pairs = std::stoi(f[8]);
        r.total_pairs = std::stoi(f[9]);
        r.predicted_class = f[10];
        if (f[11] != "true" && f[11] != "false")
            throw std::invalid_argument("parse_csv: bad converged flag");
        r.converged = f[11] == "true";
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string to_json(const std::vector<ResultRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json obj;
        obj["N"] = r.n;
        obj["d"] = r.d;
        obj["m"] = r.m;
        obj["combination"] = r.combination;
        obj["q"] = r.q;
        obj["chi_bits"] = r.chi_bits;
        obj["h_control_bits"] = r.h_control_bits;
        obj["h_min_bits"] = r.h_min_bits;
        obj["global_pairs"] = r.global_pairs;
        obj["total_pairs"] = r.total_pairs;
        obj["predicted_class"] = r.predicted_class;
        obj["converged"] = r.converged;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::string to_table(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%2s %2s %2s  %-13s %-10s %10s %12s %10s %6s %6s %-7s %s\n",
                  "N", "d", "m", "combination", "q", "chi_bits", "h_control", "h_min", "glob",
                  "pairs", "class", "conv");
    out << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%2d %2d %2d  %-13s %-10s %10s %12s %10s %6d %6d %-7s %s\n",
                      r.n, r.d, r.m, r.combination.c_str(), r.q.c_str(), fmt6(r.chi_bits).c_str(),
                      fmt6(r.h_control_bits).c_str(), fmt6(r.h_min_bits).c_str(), r.global_pairs,
                      r.total_pairs, r.predicted_class.c_str(), r.converged ? "true" : "false");
        out << line;
    }
    return out.str();
}

std::string to_plot_data(const std::vector<ResultRow>& rows) {
    std::string out = "m,chi_bits\n";
    for (const auto& r : rows) out += std::to_string(r.m) + ',' + fmt6(r.chi_bits) + '\n';
    return out;
}

std::string format_rows(const std::vector<ResultRow>& rows, OutputFormat format) {
    switch (format) {
        case OutputFormat::Csv: return to_csv(rows);
        case OutputFormat::Json: return to_json(rows);
        case OutputFormat::Table: return to_table(rows);
    }
    throw std::logic_error("format_rows: unknown format");
}

std::string classify_to_csv(const std::vector<ClassifyRow>& rows) {
    const bool with_chi = !rows.empty() && rows.front().chi_bits.has_value();
    std::string out = "combination,global_pairs,total_pairs,predicted_class";
    if (with_chi) out += ",chi_bits";
    out += '\n';
    for (const auto& r : rows) {
        out += '"' + r.combination + "\"," + std::to_string(r.global_pairs) + ',' +
               std::to_string(r.total_pairs) + ',' + r.predicted_class;
        if (with_chi) out += ',' + fmt6(*r.chi_bits);
        out += '\n';
    }
    return out;
}

std::string classify_to_json(const std::vector<ClassifyRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json obj;
        obj["combination"] = r.combination;
        obj["global_pairs"] = r.global_pairs;
        obj["total_pairs"] = r.total_pairs;
        obj["predicted_class"] = r.predicted_class;
        if (r.chi_bits) obj["chi_bits"] = *r.chi_bits;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::string classify_to_table(const std::vector<ClassifyRow>& rows) {
    std::ostringstream out;
    char line[160];
    const bool with_chi = !rows.empty() && rows.front().chi_bits.has_value();
    std::snprintf(line, sizeof line, "%-13s %6s %6s %-7s%s\n", "combination", "glob", "pairs",
                  "class", with_chi ? "   chi_bits" : "");
    out << line;
    for (const auto& r : rows) {
        if (with_chi)
            std::snprintf(line, sizeof line, "%-13s %6d %6d %-7s %10s\n", r.combination.c_str(),
                          r.global_pairs, r.total_pairs, r.predicted_class.c_str(),
                          fmt6(*r.chi_bits).c_str());
        else
            std::snprintf(line, sizeof line, "%-13s %6d %6d %-7s\n", r.combination.c_str(),
                          r.global_pairs, r.total_pairs, r.predicted_class.c_str());
        out << line;
    }
    return out.str();
}

std::string format_classify(const std::vector<ClassifyRow>& rows, OutputFormat format) {
    switch (format) {
        case OutputFormat::Csv: return classify_to_csv(rows);
        case OutputFormat::Json: return classify_to_json(rows);
        case OutputFormat::Table: return classify_to_table(rows);
    }
    throw std::logic_error("format_classify: unknown format");
}

}  // namespace qswitch
