#include "igs/experiment.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

namespace igs {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void reject_unknown_keys(const json& obj, const char* what,
                         std::initializer_list<const char*> known) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known)
            if (key == k) {
                ok = true;
                break;
            }
        if (!ok)
            fail(std::string("unknown key \"") + key + "\" in " + what);
    }
}

double get_number(const json& obj, const char* what, const char* key) {
    if (!obj.contains(key) || !obj[key].is_number())
        fail(std::string(what) + " needs numeric \"" + key + "\"");
    return obj[key].get<double>();
}

Complex parse_complex(const json& v, const std::string& what) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail(what + " must be [re, im]");
    return {v[0].get<double>(), v[1].get<double>()};
}

Complex get_complex(const json& channel, const char* key) {
    if (!channel.contains(key))
        fail(std::string("channel needs \"") + key + "\" as [re, im]");
    return parse_complex(channel[key], std::string("channel entry \"") + key + "\"");
}

// The channel is accepted either as {"h11": [re, im], ...} or as a
// four-element row-major list [[re, im], ...] ordered h11, h12, h21, h22.
Channel parse_channel(const json& node) {
    if (node.is_array()) {
        if (node.size() != 4)
            fail("channel list must hold four [re, im] entries "
                 "(h11, h12, h21, h22)");
        return Channel(parse_complex(node[0], "channel entry h11"),
                       parse_complex(node[1], "channel entry h12"),
                       parse_complex(node[2], "channel entry h21"),
                       parse_complex(node[3], "channel entry h22"));
    }
    if (!node.is_object())
        fail("\"channel\" must be an object with h11..h22 or a list of four "
             "[re, im] pairs");
    reject_unknown_keys(node, "channel", {"h11", "h12", "h21", "h22"});
    return Channel(get_complex(node, "h11"), get_complex(node, "h12"),
                   get_complex(node, "h21"), get_complex(node, "h22"));
}

const char* kSchemeNames[] = {"proper_optimal", "improper_proposed", "oracle"};

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        fail("config must be a JSON object");
    reject_unknown_keys(j, "config",
                        {"channel", "snr_db", "powers", "alpha_grid", "solver",
                         "oracle_grid", "output"});

    if (!j.contains("channel"))
        fail("config needs a \"channel\"");
    std::optional<Channel> ch;
    try {
        ch.emplace(parse_channel(j["channel"]));
    } catch (const ValidationError& e) {
        fail(std::string("channel: ") + e.what());
    }

    const bool has_snr = j.contains("snr_db");
    const bool has_powers = j.contains("powers");
    if (has_snr == has_powers)
        fail("config needs exactly one of \"snr_db\" or \"powers\"");
    PowerConstraint pc;
    std::optional<double> snr_db;
    if (has_snr) {
        if (!j["snr_db"].is_number())
            fail("\"snr_db\" must be a number");
        snr_db = j["snr_db"].get<double>();
        const double p = std::pow(10.0, *snr_db / 10.0);
        pc = {p, p, 1.0};
    } else {
        if (!j["powers"].is_object())
            fail("\"powers\" must be an object");
        reject_unknown_keys(j["powers"], "powers", {"p1", "p2", "noise_var"});
        pc.p1 = get_number(j["powers"], "powers", "p1");
        pc.p2 = get_number(j["powers"], "powers", "p2");
        pc.noise_var = j["powers"].contains("noise_var")
                           ? get_number(j["powers"], "powers", "noise_var")
                           : 1.0;
    }
    try {
        require_valid(pc);
    } catch (const ValidationError& e) {
        fail(std::string("powers: ") + e.what());
    }

    std::vector<double> alphas;
    if (!j.contains("alpha_grid")) {
        alphas = uniform_alphas(41);
    } else if (j["alpha_grid"].is_number_integer()) {
        const int n = j["alpha_grid"].get<int>();
        if (n < 2)
            fail("\"alpha_grid\" count must be >= 2");
        alphas = uniform_alphas(n);
    } else if (j["alpha_grid"].is_array()) {
        for (const auto& v : j["alpha_grid"]) {
            if (!v.is_number())
                fail("\"alpha_grid\" entries must be numbers");
            const double a = v.get<double>();
            if (!(a >= 0.0 && a <= 1.0))
                fail("\"alpha_grid\" entries must lie in [0, 1]");
            alphas.push_back(a);
        }
        if (alphas.empty())
            fail("\"alpha_grid\" list must not be empty");
    } else {
        fail("\"alpha_grid\" must be an integer count or a list");
    }

    SolverConfig solver;
    if (j.contains("solver")) {
        const json& s = j["solver"];
        if (!s.is_object())
            fail("\"solver\" must be an object");
        reject_unknown_keys(s, "solver", {"rate_tol", "max_iter", "alpha_eps"});
        if (s.contains("rate_tol")) {
            solver.rate_tol = get_number(s, "solver", "rate_tol");
            if (!(solver.rate_tol > 0.0))
                fail("\"rate_tol\" must be > 0");
        }
        if (s.contains("max_iter")) {
            if (!s["max_iter"].is_number_integer() || s["max_iter"].get<int>() < 1)
                fail("\"max_iter\" must be a positive integer");
            solver.max_iter = s["max_iter"].get<int>();
        }
        if (s.contains("alpha_eps")) {
            solver.alpha_eps = get_number(s, "solver", "alpha_eps");
            if (!(solver.alpha_eps >= 0.0 && solver.alpha_eps < 0.5))
                fail("\"alpha_eps\" must be in [0, 0.5)");
        }
    }

    GridSpec grid;
    if (j.contains("oracle_grid")) {
        const json& g = j["oracle_grid"];
        if (!g.is_object())
            fail("\"oracle_grid\" must be an object");
        reject_unknown_keys(g, "oracle_grid",
                            {"n_cov", "n_pcov", "n_theta", "include_boundary"});
        auto get_count = [&](const char* key, int lo, int cur) {
            if (!g.contains(key))
                return cur;
            if (!g[key].is_number_integer() || g[key].get<int>() < lo)
                fail(std::string("\"") + key + "\" must be an integer >= " +
                     std::to_string(lo));
            return g[key].get<int>();
        };
        grid.n_cov = get_count("n_cov", 2, grid.n_cov);
        grid.n_pcov = get_count("n_pcov", 1, grid.n_pcov);
        grid.n_theta = get_count("n_theta", 4, grid.n_theta);
        if (g.contains("include_boundary")) {
            if (!g["include_boundary"].is_boolean())
                fail("\"include_boundary\" must be a boolean");
            grid.include_boundary = g["include_boundary"].get<bool>();
        }
    }

    OutputSpec out;
    if (j.contains("output")) {
        const json& o = j["output"];
        if (!o.is_object())
            fail("\"output\" must be an object");
        reject_unknown_keys(o, "output", {"format", "rate_units", "path"});
        if (o.contains("format")) {
            const std::string f = o["format"].is_string()
                                      ? o["format"].get<std::string>()
                                      : std::string();
            if (f == "csv")
                out.format = OutputFormat::csv;
            else if (f == "json")
                out.format = OutputFormat::json;
            else
                fail("\"format\" must be \"csv\" or \"json\"");
        }
        if (o.contains("rate_units")) {
            const std::string u = o["rate_units"].is_string()
                                      ? o["rate_units"].get<std::string>()
                                      : std::string();
            if (u == "nats")
                out.units = RateUnits::nats;
            else if (u == "bits")
                out.units = RateUnits::bits;
            else
                fail("\"rate_units\" must be \"nats\" or \"bits\"");
        }
        if (o.contains("path")) {
            if (!o["path"].is_string())
                fail("\"path\" must be a string");
            out.path = o["path"].get<std::string>();
        }
    }

    return ExperimentConfig{*ch, pc, snr_db, std::move(alphas), solver, grid, out};
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        fail("cannot read config file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str());
}

namespace {

std::string describe_failure(double alpha, const std::string& what) {
    std::ostringstream os;
    os << "alpha " << alpha << ": " << what;
    return os.str();
}

void append_entry(RunResult& res, const SweepEntry& e) {
    if (e.point)
        res.rows.push_back({e.alpha, e.point->scheme, e.point->r_total,
                            e.point->rates, e.point->signaling});
    else
        res.errors.push_back(describe_failure(e.alpha, e.error));
}

}  // namespace

RunResult run_region(const ExperimentConfig& cfg) {
    RunResult res;
    const auto proper = sweep(cfg.channel, cfg.powers, cfg.alphas, cfg.solver,
                              Scheme::proper_optimal);
    const auto improper = sweep(cfg.channel, cfg.powers, cfg.alphas, cfg.solver,
                                Scheme::improper_proposed);
    // interleave per profile split so the two schemes sit side by side
    for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
        append_entry(res, proper[i]);
        append_entry(res, improper[i]);
    }
    return res;
}

RunResult run_compare(const ExperimentConfig& cfg) {
    RunResult res = run_region(cfg);

    std::map<double, double> proper_r;
    std::map<double, double> improper_r;
    for (const auto& row : res.rows) {
        if (row.scheme == Scheme::proper_optimal)
            proper_r[row.alpha] = row.r_total;
        else if (row.scheme == Scheme::improper_proposed)
            improper_r[row.alpha] = row.r_total;
    }

    const auto oracle_pts =
        oracle_region(cfg.channel, cfg.powers, cfg.oracle_grid);
    for (const auto& p : oracle_pts) {
        const double total = p.rates.r1 + p.rates.r2;
        const double alpha = total > 0.0 ? p.rates.r1 / total : 0.0;
        res.rows.push_back({alpha, Scheme::oracle, total, p.rates, p.signaling});
    }

    CompareSummary sum;
    int matched = 0;
    double sum_impr = 0.0;
    for (const auto& [alpha, rp] : proper_r) {
        const auto it = improper_r.find(alpha);
        if (it == improper_r.end())
            continue;
        const double d = it->second - rp;
        sum.max_improvement = std::max(sum.max_improvement, d);
        sum_impr += d;
        ++matched;
    }
    sum.mean_improvement = matched > 0 ? sum_impr / matched : 0.0;

    // Best profile rate the oracle front supports at each solved split, as
    // a one-sided check that the proposed points reach the brute-force front.
    for (const auto& [alpha, r_improper] : improper_r) {
        double best = 0.0;
        for (const auto& p : oracle_pts) {
            double value;
            if (alpha <= 0.0)
                value = p.rates.r2;
            else if (alpha >= 1.0)
                value = p.rates.r1;
            else
                value = std::min(p.rates.r1 / alpha,
                                 p.rates.r2 / (1.0 - alpha));
            best = std::max(best, value);
        }
        sum.max_shortfall = std::max(sum.max_shortfall, best - r_improper);
    }
    sum.max_shortfall = std::max(sum.max_shortfall, 0.0);

    res.summary = sum;
    return res;
}

RatePair run_rate(const ExperimentConfig& cfg, const Signaling& sig) {
    const auto bad = validate(sig, cfg.powers);
    if (!bad.empty()) {
        std::string msg = "invalid signaling:";
        for (const auto& v : bad)
            msg += "\n  " + v.message;
        throw ValidationError(msg);
    }
    return {user_rate(cfg.channel, sig, cfg.powers.noise_var, 0),
            user_rate(cfg.channel, sig, cfg.powers.noise_var, 1)};
}

std::string format_double(double v) {
    if (v == 0.0)
        v = 0.0;  // canonicalize -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

const char* scheme_name(Scheme s) { return kSchemeNames[static_cast<int>(s)]; }

namespace {

double unit_scale(RateUnits units) {
    return units == RateUnits::bits ? std::numbers::log2e : 1.0;
}

}  // namespace

std::string format_csv(const RunResult& result, RateUnits units) {
    const double s = unit_scale(units);
    std::string out =
        "alpha,scheme,R_total,R1,R2,C_x1,C_x2,Ct_x1_re,Ct_x1_im,Ct_x2_re,Ct_x2_im\n";
    for (const auto& row : result.rows) {
        out += format_double(row.alpha);
        out += ',';
        out += scheme_name(row.scheme);
        for (const double v :
             {s * row.r_total, s * row.rates.r1, s * row.rates.r2,
              row.signaling.c1, row.signaling.c2, row.signaling.ct1.real(),
              row.signaling.ct1.imag(), row.signaling.ct2.real(),
              row.signaling.ct2.imag()}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    if (result.summary) {
        out += "# max_improvement " +
               format_double(s * result.summary->max_improvement) + "\n";
        out += "# mean_improvement " +
               format_double(s * result.summary->mean_improvement) + "\n";
        out += "# max_shortfall " +
               format_double(s * result.summary->max_shortfall) + "\n";
    }
    return out;
}

std::string format_json(const RunResult& result, RateUnits units) {
    const double s = unit_scale(units);
    json doc;
    doc["rows"] = json::array();
    for (const auto& row : result.rows) {
        doc["rows"].push_back({{"alpha", row.alpha},
                               {"scheme", scheme_name(row.scheme)},
                               {"R_total", s * row.r_total},
                               {"R1", s * row.rates.r1},
                               {"R2", s * row.rates.r2},
                               {"C_x1", row.signaling.c1},
                               {"C_x2", row.signaling.c2},
                               {"Ct_x1_re", row.signaling.ct1.real()},
                               {"Ct_x1_im", row.signaling.ct1.imag()},
                               {"Ct_x2_re", row.signaling.ct2.real()},
                               {"Ct_x2_im", row.signaling.ct2.imag()}});
    }
    if (result.summary)
        doc["summary"] = {
            {"max_improvement", s * result.summary->max_improvement},
            {"mean_improvement", s * result.summary->mean_improvement},
            {"max_shortfall", s * result.summary->max_shortfall}};
    return doc.dump(2) + "\n";
}

void write_output(const ExperimentConfig& cfg, const RunResult& result) {
    const std::string text = cfg.output.format == OutputFormat::csv
                                 ? format_csv(result, cfg.output.units)
                                 : format_json(result, cfg.output.units);
    if (cfg.output.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.output.path, std::ios::binary);
    if (!f)
        throw std::ios_base::failure("cannot open output file: " +
                                     cfg.output.path);
    f << text;
    f.flush();
    if (!f)
        throw std::ios_base::failure("write failed: " + cfg.output.path);
}

}  // namespace igs
