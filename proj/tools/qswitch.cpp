#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qswitch/cli.hpp"

namespace {

using qswitch::OutputFormat;
using qswitch::RunConfig;

// Raw option values; config-file values fill in anything not set on the
// command line, then everything is converted into a RunConfig.
struct RawArgs {
    std::string channels = "3";
    std::string dim = "2";
    std::string q;
    std::string orders;
    std::string m;
    std::string weights = "uniform";
    std::string tol = "1e-9";
    std::string starts = "32";
    std::string seed = "7";
    std::string format = "table";
    std::string out;
    std::string threads;
    bool with_chi = false;
    bool plot_data = false;
    std::string config_path;
};

std::vector<CLI::Option*> add_common(CLI::App* cmd, RawArgs& a) {
    std::vector<CLI::Option*> opts;
    opts.push_back(cmd->add_option("--channels", a.channels, "Number of channels N"));
    opts.push_back(cmd->add_option("--dim", a.dim, "Target dimension d"));
    opts.push_back(cmd->add_option("--q", a.q, "Depolarization strengths, comma-separated (default all 0)"));
    opts.push_back(cmd->add_option("--orders", a.orders, "Causal-order labels, e.g. 1,4,5, or 'all'"));
    opts.push_back(cmd->add_option("--m", a.m, "Superposition size, or 'all'"));
    opts.push_back(cmd->add_option("--weights", a.weights, "'uniform' or explicit comma-separated probabilities"));
    opts.push_back(cmd->add_option("--tol", a.tol, "Optimizer tolerance"));
    opts.push_back(cmd->add_option("--starts", a.starts, "Optimizer multi-start count"));
    opts.push_back(cmd->add_option("--seed", a.seed, "Deterministic seed"));
    opts.push_back(cmd->add_option("--format", a.format, "table | csv | json"));
    opts.push_back(cmd->add_option("--out", a.out, "Output path (default stdout)"));
    opts.push_back(cmd->add_option("--threads", a.threads, "Worker count (default QSWITCH_THREADS or hardware)"));
    opts.push_back(cmd->add_option("--config", a.config_path, "Flat key=value config file"));
    return opts;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            s = s.substr(b, e - b + 1);
            if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
            return s;
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

void apply_config(const std::map<std::string, std::string>& kv, CLI::App* cmd, RawArgs& a) {
    auto take = [&](const char* key, std::string& slot, const char* flag) {
        const auto it = kv.find(key);
        if (it != kv.end() && cmd->count(flag) == 0) slot = it->second;
    };
    take("channels", a.channels, "--channels");
    take("dim", a.dim, "--dim");
    take("q", a.q, "--q");
    take("orders", a.orders, "--orders");
    take("m", a.m, "--m");
    take("weights", a.weights, "--weights");
    take("tol", a.tol, "--tol");
    take("starts", a.starts, "--starts");
    take("seed", a.seed, "--seed");
    take("format", a.format, "--format");
    take("out", a.out, "--out");
    take("threads", a.threads, "--threads");
    const auto wc = kv.find("with-chi");
    if (wc != kv.end() && cmd->count("--with-chi") == 0)
        a.with_chi = wc->second == "true" || wc->second == "1";
    const auto pd = kv.find("plot-data");
    if (pd != kv.end() && cmd->count("--plot-data") == 0)
        a.plot_data = pd->second == "true" || pd->second == "1";
}

std::vector<double> parse_doubles(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("malformed ") + what + ": '" + tok + "'");
        }
    }
    return out;
}

std::vector<int> parse_ints(const std::string& s, const char* what) {
    std::vector<int> out;
    for (double v : parse_doubles(s, what)) {
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw std::invalid_argument(std::string("malformed ") + what + ": expected integers");
        out.push_back(i);
    }
    return out;
}

RunConfig build_config(const RawArgs& a) {
    RunConfig cfg;
    cfg.n = std::stoi(a.channels);
    cfg.d = std::stoi(a.dim);
    if (!a.q.empty()) cfg.q = parse_doubles(a.q, "q");
    if (a.orders == "all")
        cfg.all_orders = true;
    else if (!a.orders.empty())
        cfg.orders = parse_ints(a.orders, "orders");
    if (a.m == "all")
        cfg.all_m = true;
    else if (!a.m.empty())
        cfg.m = std::stoi(a.m);
    if (!a.weights.empty() && a.weights != "uniform")
        cfg.weights = parse_doubles(a.weights, "weights");
    cfg.tol = std::stod(a.tol);
    cfg.starts = std::stoi(a.starts);
    cfg.seed = std::stoull(a.seed);
    if (!a.threads.empty()) cfg.threads = std::stoi(a.threads);
    if (a.format == "table")
        cfg.format = OutputFormat::Table;
    else if (a.format == "csv")
        cfg.format = OutputFormat::Csv;
    else if (a.format == "json")
        cfg.format = OutputFormat::Json;
    else
        throw std::invalid_argument("unknown format: " + a.format);
    cfg.with_chi = a.with_chi;
    cfg.plot_data = a.plot_data;
    return cfg;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Holevo information of N noisy channels in superposed causal orders"};
    app.require_subcommand(1);

    RawArgs a;
    CLI::App* holevo = app.add_subcommand("holevo", "Evaluate one combination of causal orders");
    CLI::App* sweep = app.add_subcommand("sweep", "Evaluate every combination for given m");
    CLI::App* table1 = app.add_subcommand("table1", "chi_max/chi_min vs m summary for d = 2, 3");
    CLI::App* classify = app.add_subcommand("classify", "Local/global pair classification");
    for (CLI::App* cmd : {holevo, sweep, table1, classify}) add_common(cmd, a);
    sweep->add_flag("--plot-data", a.plot_data, "Emit only (m, chi) pairs");
    classify->add_flag("--with-chi", a.with_chi, "Also compute chi per combination");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        if (!a.config_path.empty()) apply_config(load_config_file(a.config_path), cmd, a);
        const RunConfig cfg = build_config(a);

        bool converged = true;
        if (cmd == holevo) {
            const qswitch::ResultRow row = qswitch::cmd_holevo(cfg);
            converged = row.converged;
            write_output(qswitch::format_rows({row}, cfg.format), a.out);
        } else if (cmd == sweep) {
            const auto rows = qswitch::cmd_sweep(cfg);
            for (const auto& r : rows) converged = converged && r.converged;
            write_output(cfg.plot_data ? qswitch::to_plot_data(rows)
                                       : qswitch::format_rows(rows, cfg.format),
                         a.out);
        } else if (cmd == table1) {
            write_output(qswitch::cmd_table1(cfg), a.out);
        } else {
            write_output(qswitch::format_classify(qswitch::cmd_classify(cfg), cfg.format), a.out);
        }
        return converged ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
