#include "bicres_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "bicres/background.hpp"
#include "bicres/errors.hpp"
#include "bicres/jost.hpp"
#include "bicres/resonance.hpp"
#include "bicres/truncated.hpp"
#include "bicres_cli/cli.hpp"
#include "json.hpp"

namespace bicres::cli {

using json = nlohmann::ordered_json;

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void Sink::write(const std::string& text, const std::string& tag) {
    if (path_.empty()) {
        stdout_ << text;
        return;
    }
    std::filesystem::path p(path_);
    if (!tag.empty()) p.replace_filename(p.stem().string() + "_" + tag + p.extension().string());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + p.string() + "'");
    f << text;
    if (!f) throw std::runtime_error("failed writing '" + p.string() + "'");
}

PotentialParams params_from(const RunConfig& c, ParamMode mode) {
    const double alpha = c.get_double("alpha", 1.0);
    const double q = c.get_double("q", 1.0);
    double beta = c.get_double("beta", 3.0);
    if (c.get_bool("bic", false)) {
        const double b = 3.0 * alpha * q;
        if (c.has("beta") && beta != b) {
            throw ValidationError("--bic requires beta = 3 alpha q = " + fmt12(b) + ", got " +
                                  fmt12(beta));
        }
        beta = b;
    }
    return mode == ParamMode::strict ? PotentialParams::strict(alpha, beta, q)
                                     : PotentialParams::diagnostic(alpha, beta, q);
}

namespace {

constexpr double kDefaultCutoff = 5000.0;

double cutoff(const RunConfig& c) { return c.get_double("cutoff", kDefaultCutoff); }

std::string timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

json metadata(const CommandContext& ctx, const PotentialParams& p, bool with_cutoff,
              json tolerances = json::object()) {
    json m;
    m["tool"] = kToolName;
    m["version"] = kVersion;
    m["command"] = ctx.config.verb();
    m["alpha"] = p.alpha();
    m["beta"] = p.beta();
    m["q"] = p.q();
    m["bic_mode"] = p.bic_mode();
    if (with_cutoff) m["cutoff"] = cutoff(ctx.config);
    json settings = json::object();
    for (const auto& [k, v] : ctx.config.resolved()) settings[k] = v;
    m["settings"] = settings;
    tolerances["extended_precision_band"] = kExtendedBand;
    tolerances["threshold_gap"] = kThresholdGap;
    m["tolerances"] = tolerances;
    if (!ctx.reproducible) m["timestamp"] = timestamp();
    return m;
}

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fmt12(v.get<double>());
    return v.dump();
}

// `# key: value` lines, nested objects flattened with dots.
void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
    for (const auto& [k, v] : j.items()) {
        const std::string key = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object()) {
            flatten(v, key, os);
        } else {
            os << "# " << key << ": " << scalar_text(v) << "\n";
        }
    }
}

class Csv {
public:
    Csv(const json& meta, std::initializer_list<const char*> columns) {
        flatten(meta, "", os_);
        bool first = true;
        for (const char* c : columns) {
            os_ << (first ? "" : ",") << c;
            first = false;
        }
        os_ << "\n";
    }
    void row(std::initializer_list<double> values) {
        bool first = true;
        for (const double v : values) {
            os_ << (first ? "" : ",") << fmt12(v);
            first = false;
        }
        os_ << "\n";
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

std::vector<double> uniform_grid(double lo, double hi, double step) {
    if (!(hi > lo) || !(step > 0.0)) throw ValidationError("grid: need lo < hi and step > 0");
    const auto n = static_cast<long>(std::llround((hi - lo) / step));
    if (n > 50'000'000) throw ValidationError("grid: too many points");
    std::vector<double> g;
    for (long i = 0; i <= n; ++i) g.push_back(std::min(hi, lo + step * static_cast<double>(i)));
    if (g.back() < hi) g.push_back(hi);
    return g;
}

std::vector<double> r_grid(const RunConfig& c) {
    return uniform_grid(c.get_double("r_min", 0.0), c.get_double("r_max", 30.0),
                        c.get_double("r_step", 0.01));
}

std::vector<double> k_grid(const RunConfig& c, double q) {
    const double lo = c.get_double("k_min", 0.995), hi = c.get_double("k_max", 1.005);
    const double coarse = c.get_double("coarse_dk", 1e-5);
    if (!c.get_bool("refine", true)) return uniform_grid(lo, hi, coarse);
    return refined_grid(lo, hi, coarse, c.get_double("center", q),
                        c.get_double("fine_halfwidth", 0.01), c.get_double("fine_dk", 1e-6));
}

ComplexRectangle box_from(const RunConfig& c) {
    ComplexRectangle b{c.get_double("re_min", 0.99), c.get_double("re_max", 1.01),
                       c.get_double("im_min", -0.001), c.get_double("im_max", 0.0)};
    if (c.get_bool("wide", false)) b.im_min = c.get_double("wide_im_min", -0.2);
    return b;
}

ResonanceOptions resonance_options(const RunConfig& c) {
    ResonanceOptions o;
    o.seed_nodes_re = static_cast<int>(c.get_int("seed_nodes_re", o.seed_nodes_re));
    o.seed_nodes_im = static_cast<int>(c.get_int("seed_nodes_im", o.seed_nodes_im));
    o.top_guard = c.get_double("top_guard", o.top_guard);
    return o;
}

json resonance_tolerances(const ResonanceOptions& o) {
    return {{"newton_abs_tol", o.newton.abs_tol},
            {"newton_rel_tol", o.newton.rel_tol},
            {"top_guard", o.top_guard},
            {"seed_grid", std::to_string(o.seed_nodes_re) + "x" + std::to_string(o.seed_nodes_im)}};
}

// The doublet of the default acceptance box.
std::pair<Resonance, Resonance> default_doublet(const TruncatedConfig& config,
                                                const ResonanceOptions& opts) {
    const double q = config.params().q();
    const double a = config.a();
    const ComplexRectangle box{q - 12.0 / a, q + 12.0 / a, -5.0 / a, 0.0};
    return closest_pair(find_resonances(config, box, {}, opts).roots);
}

}  // namespace

void cmd_w1(const CommandContext& ctx, Sink& sink) {
    const RunConfig& c = ctx.config;
    const std::vector<double> betas = c.has("beta") && !c.has("betas")
                                          ? std::vector<double>{c.get_double("beta", 3.0)}
                                          : c.get_list("betas", {-1.0, 3.0, 5.0});
    const auto grid = r_grid(c);
    for (const double beta : betas) {
        RunConfig one = c;
        one.set_flag("beta", fmt12(beta));
        one.set_flag("bic", "false");
        const PotentialParams p = params_from(one, ParamMode::diagnostic);
        CommandContext sub{one, ctx.reproducible};
        Csv csv(metadata(sub, p, false), {"r", "w1"});
        for (const double r : grid) csv.row({r, w1_bundle(p, r).w1});
        sink.write(csv.str(), betas.size() > 1 ? "beta" + fmt12(beta) : std::string{});
    }
}

void cmd_potential(const CommandContext& ctx, Sink& sink) {
    const PotentialParams p = params_from(ctx.config);
    const BoundState b = bound_state(p);
    json meta = metadata(ctx, p, false, {{"bound_state_r_cut", BoundState::Options{}.r_cut}, {"quadrature_tol", BoundState::Options{}.quad_tol}});
    meta["bound_state_norm"] = b.norm();
    Csv csv(meta, {"r", "v4", "psi_b_sq"});
    for (const double r : r_grid(ctx.config)) csv.row({r, potential_v4(p, r), b.probability(r)});
    sink.write(csv.str());
}

void cmd_resonances(const CommandContext& ctx, Sink& sink) {
    const PotentialParams p = params_from(ctx.config);
    const TruncatedConfig config(p, cutoff(ctx.config));
    const ResonanceOptions opts = resonance_options(ctx.config);
    const ResonanceSearch s = find_resonances(config, box_from(ctx.config), {}, opts);
    std::pair<double, double> doublet{NAN, NAN};
    if (s.roots.size() >= 2) {
        const auto pr = closest_pair(s.roots);
        doublet = {pr.first.k_re, pr.second.k_re};
    }
    json j;
    j["a"] = config.a();
    j["alpha"] = p.alpha();
    j["beta"] = p.beta();
    j["q"] = p.q();
    json roots = json::array();
    for (const Resonance& r : s.roots) {
        roots.push_back({{"re", r.k_re},
                         {"im", r.k.imag()},
                         {"half_width", r.half_width},
                         {"residual", r.residual},
                         {"normalized_residual", r.normalized_residual},
                         {"doublet", r.k_re == doublet.first || r.k_re == doublet.second}});
    }
    j["roots"] = roots;
    j["winding_count"] = s.winding_count;
    j["box"] = {{"re_min", s.box.re_min},
                {"re_max", s.box.re_max},
                {"im_min", s.box.im_min},
                {"im_max", s.box.im_max}};
    j["metadata"] = metadata(ctx, p, true, resonance_tolerances(opts));
    sink.write(j.dump(2) + "\n");
}

void cmd_gamow(const CommandContext& ctx, Sink& sink) {
    const PotentialParams p = params_from(ctx.config);
    const TruncatedConfig config(p, cutoff(ctx.config));
    const ResonanceOptions opts = resonance_options(ctx.config);
    const long index = ctx.config.get_int("index", 0);
    if (index != 0 && index != 1) throw ValidationError("gamow: index must be 0 or 1");
    const auto pair = default_doublet(config, opts);
    const Resonance& res = index == 0 ? pair.first : pair.second;
    const GamowState g = gamow_state(config, res);
    json meta = metadata(ctx, p, true, resonance_tolerances(opts));
    meta["k_re"] = res.k_re;
    meta["half_width"] = res.half_width;
    meta["N_squared_re"] = g.N_squared().real();
    meta["N_squared_im"] = g.N_squared().imag();
    meta["N_branch"] = GamowState::kBranch;
    meta["outgoing_mismatch"] = g.outgoing_mismatch();
    Csv csv(meta, {"r", "psi_sq", "v"});
    for (const double r : r_grid(ctx.config)) {
        if (r > config.a()) break;
        csv.row({r, std::norm(g.amplitude(r)), config.potential(r)});
    }
    sink.write(csv.str());
}

void cmd_phase_shift(const CommandContext& ctx, Sink& sink) {
    const PotentialParams p = params_from(ctx.config);
    const TruncatedConfig config(p, cutoff(ctx.config));
    const auto grid = k_grid(ctx.config, p.q());
    const PhaseCurve curve = phase_shift_unwrapped(config, grid);
    json meta = metadata(ctx, p, true);
    meta["unwrapped_change"] = curve.unwrapped.back() - curve.unwrapped.front();
    meta["ramp_removed_change"] = curve.ramp_removed.back() - curve.ramp_removed.front();
    Csv csv(meta, {"k", "delta_raw", "delta_unwrapped", "delta_ramp_removed"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.row({grid[i], curve.raw[i], curve.unwrapped[i], curve.ramp_removed[i]});
    }
    sink.write(csv.str());
}

namespace {

BackgroundFit background_fit(const TruncatedConfig& config, const RunConfig& c,
                             const ResonanceOptions& opts) {
    const auto pair = default_doublet(config, opts);
    const Doublet d = Doublet::from(pair.first, pair.second);
    std::array<double, 2> window = default_window(d);
    if (c.has("window")) {
        const auto w = c.get_list("window", {});
        if (w.size() != 2) throw ValidationError("'window': expected two values lo,hi");
        window = {w[0], w[1]};
    }
    if (c.has("lambda0") || c.has("lambda1")) {
        // Fixed coefficients: evaluate the model without fitting.
        BackgroundFit fit;
        fit.doublet = d;
        fit.a = config.a();
        fit.lambda0 = c.get_double("lambda0", 0.0);
        fit.lambda1 = c.get_double("lambda1", 0.0);
        fit.report.window = window;
        fit.report.overlapping = d.overlapping();
        fit.report.minima = {NAN, NAN};
        fit.report.condition_number = NAN;
        return fit;
    }
    return fit_lambda(config, d, [&](double k) { return cross_section(config, k); }, window);
}

}  // namespace

void cmd_cross_section(const CommandContext& ctx, Sink& sink) {
    const PotentialParams p = params_from(ctx.config);
    const TruncatedConfig config(p, cutoff(ctx.config));
    const std::string mode = ctx.config.get_string("mode", "exact");
    if (mode != "exact" && mode != "model" && mode != "both") {
        throw ValidationError("cross-section: mode must be exact, model or both");
    }
    const auto grid = k_grid(ctx.config, p.q());
    json meta = metadata(ctx, p, true);
    BackgroundFit fit;
    if (mode != "exact") {
        fit = background_fit(config, ctx.config, resonance_options(ctx.config));
        meta["lambda0"] = fit.lambda0;
        meta["lambda1"] = fit.lambda1;
        meta["max_deviation"] = hadamard_residual(config, fit, grid);
    }
    if (mode == "exact") {
        Csv csv(meta, {"k", "sigma_exact"});
        for (const double k : grid) csv.row({k, cross_section(config, k)});
        sink.write(csv.str());
    } else if (mode == "model") {
        Csv csv(meta, {"k", "sigma_model"});
        for (const double k : grid) csv.row({k, model_phase_and_sigma(fit, k).sigma});
        sink.write(csv.str());
    } else {
        Csv csv(meta, {"k", "sigma_exact", "sigma_model"});
        for (const double k : grid) {
            csv.row({k, cross_section(config, k), model_phase_and_sigma(fit, k).sigma});
        }
        sink.write(csv.str());
    }
}

void cmd_fit_background(const CommandContext& ctx, Sink& sink) {
    const PotentialParams p = params_from(ctx.config);
    const TruncatedConfig config(p, cutoff(ctx.config));
    const ResonanceOptions opts = resonance_options(ctx.config);
    RunConfig c = ctx.config;
    if (c.has("lambda0") || c.has("lambda1")) {
        throw ValidationError("fit-background: lambda0/lambda1 are outputs, not inputs");
    }
    const BackgroundFit fit = background_fit(config, c, opts);
    json j;
    j["lambda0"] = fit.lambda0;
    j["lambda1"] = fit.lambda1;
    j["minima"] = {fit.report.minima[0], fit.report.minima[1]};
    j["condition_number"] = fit.report.condition_number;
    j["max_deviation"] = fit.report.max_deviation;
    j["window"] = {fit.report.window[0], fit.report.window[1]};
    j["lambda_at_1"] = fit.lambda(1.0);
    j["overlapping"] = fit.report.overlapping;
    j["doublet"] = {{"k1", fit.doublet.k1},
                    {"half_width1", fit.doublet.half_width1},
                    {"k2", fit.doublet.k2},
                    {"half_width2", fit.doublet.half_width2}};
    json meta = metadata(ctx, p, true, resonance_tolerances(opts));
    meta["mu"] = "not estimated; cancels from the model phase and cross section";
    j["metadata"] = meta;
    sink.write(j.dump(2) + "\n");
}

void cmd_sweep_cutoff(const CommandContext& ctx, Sink& sink) {
    const PotentialParams p = params_from(ctx.config);
    const ResonanceOptions opts = resonance_options(ctx.config);
    const auto a_values = ctx.config.get_list("a_values", {2500.0, 5000.0, 10000.0});
    const SweepResult s = sweep_cutoff(p, a_values, opts);
    std::ostringstream os;
    for (const SweepRow& row : s.rows) {
        json j;
        j["a"] = row.a;
        j["k1"] = row.first.k_re;
        j["half_width1"] = row.first.half_width;
        j["k2"] = row.second.k_re;
        j["half_width2"] = row.second.half_width;
        os << j.dump() << "\n";
    }
    json tail;
    tail["widths_decreasing"] = s.widths_decreasing;
    tail["approaching_q"] = s.approaching_q;
    tail["metadata"] = metadata(ctx, p, false, resonance_tolerances(opts));
    os << tail.dump() << "\n";
    sink.write(os.str());
}

}  // namespace bicres::cli
