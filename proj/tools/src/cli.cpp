#include "bicres_cli/cli.hpp"

#include <functional>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "bicres/errors.hpp"
#include "bicres_cli/commands.hpp"
#include "json.hpp"

namespace bicres::cli {

namespace {

using json = nlohmann::ordered_json;

struct Verb {
    const char* name;
    const char* help;
    void (*fn)(const CommandContext&, Sink&);
};

constexpr Verb kVerbs[] = {
    {"w1", "W1(q, r) for a list of beta values", cmd_w1},
    {"potential", "V[4](r) and the normalised bound state |psi_B|^2", cmd_potential},
    {"resonances", "zeros of F(-k) in a box of the fourth quadrant", cmd_resonances},
    {"gamow", "normalised resonant state |psi_n|^2 of a doublet member", cmd_gamow},
    {"phase-shift", "raw, unwrapped and ramp-removed delta_a(k)", cmd_phase_shift},
    {"cross-section", "exact and/or model cross section", cmd_cross_section},
    {"fit-background", "fit lambda(k) = lambda0 + lambda1 k to the exact minima", cmd_fit_background},
    {"sweep-cutoff", "track the doublet over increasing cutoffs", cmd_sweep_cutoff},
};

// Options that take a value, by verb. Keys use underscores.
const std::map<std::string, std::vector<std::string>>& verb_options() {
    static const std::vector<std::string> r_grid{"r-min", "r-max", "r-step"};
    static const std::vector<std::string> seeds{"seed-nodes-re", "seed-nodes-im", "top-guard"};
    static const std::vector<std::string> k_grid{"k-min", "k-max", "coarse-dk", "fine-dk",
                                                 "fine-halfwidth", "center"};
    auto cat = [](std::initializer_list<std::vector<std::string>> parts) {
        std::vector<std::string> out;
        for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
        return out;
    };
    static const std::map<std::string, std::vector<std::string>> m{
        {"w1", cat({r_grid, {"betas"}})},
        {"potential", r_grid},
        {"resonances", cat({seeds, {"re-min", "re-max", "im-min", "im-max", "wide-im-min"}})},
        {"gamow", cat({r_grid, seeds, {"index"}})},
        {"phase-shift", k_grid},
        {"cross-section", cat({k_grid, seeds, {"mode", "lambda0", "lambda1", "window"}})},
        {"fit-background", cat({seeds, {"window"}})},
        {"sweep-cutoff", cat({seeds, {"a-values"}})},
    };
    return m;
}

const std::map<std::string, std::vector<std::string>>& verb_flags() {
    static const std::map<std::string, std::vector<std::string>> m{
        {"resonances", {"wide"}},
        {"phase-shift", {"no-refine"}},
        {"cross-section", {"no-refine"}},
    };
    return m;
}

std::string key_of(std::string opt) {
    for (char& ch : opt) {
        if (ch == '-') ch = '_';
    }
    return opt;
}

void write_error(std::ostream& err, const std::string& kind, const std::string& message,
                 int code) {
    json j;
    j["error"] = kind;
    j["message"] = message;
    j["exit_code"] = code;
    err << j.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral singularity / BIC resonance calculations for the V[4] potential",
                 kToolName};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::map<std::string, std::string> values;
    std::map<std::string, bool> switches;
    auto global_value = [&](const char* name, const char* help) {
        app.add_option(std::string("--") + name, values[name], help)->allow_extra_args(false);
    };
    global_value("alpha", "alpha (default 1)");
    global_value("beta", "beta (default 3)");
    global_value("q", "q (default 1)");
    global_value("cutoff", "cutoff radius a (default 5000)");
    std::string config_path, out_path;
    app.add_option("--config", config_path, "key = value run file");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_flag("--bic", switches["bic"], "set beta = 3 alpha q");
    app.add_flag("--reproducible", switches["reproducible"], "omit the timestamp from metadata");

    std::map<std::string, std::map<std::string, std::string>> sub_values;
    std::map<std::string, std::map<std::string, bool>> sub_flags;
    std::map<std::string, CLI::App*> subs;
    for (const Verb& v : kVerbs) {
        CLI::App* sub = app.add_subcommand(v.name, v.help);
        sub->fallthrough();
        subs[v.name] = sub;
        if (auto it = verb_options().find(v.name); it != verb_options().end()) {
            for (const std::string& o : it->second) sub->add_option("--" + o, sub_values[v.name][o]);
        }
        if (auto it = verb_flags().find(v.name); it != verb_flags().end()) {
            for (const std::string& f : it->second) sub->add_flag("--" + f, sub_flags[v.name][f]);
        }
    }

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        write_error(err, "ValidationError", e.what(), kExitValidation);
        return kExitValidation;
    }

    const Verb* verb = nullptr;
    for (const Verb& v : kVerbs) {
        if (subs[v.name]->parsed()) verb = &v;
    }

    try {
        CommandContext ctx{RunConfig(verb->name), switches["reproducible"]};
        if (!config_path.empty()) ctx.config.load_file(config_path);
        for (const char* g : {"alpha", "beta", "q", "cutoff"}) {
            if (app.count(std::string("--") + g) > 0) ctx.config.set_flag(g, values[g]);
        }
        if (switches["bic"]) ctx.config.set_flag("bic", "true");
        CLI::App* sub = subs[verb->name];
        for (const auto& [o, v] : sub_values[verb->name]) {
            if (sub->count("--" + o) > 0) ctx.config.set_flag(key_of(o), v);
        }
        for (const auto& [f, on] : sub_flags[verb->name]) {
            if (!on) continue;
            if (f == "no-refine") {
                ctx.config.set_flag("refine", "false");
            } else {
                ctx.config.set_flag(key_of(f), "true");
            }
        }
        if (!ctx.reproducible) ctx.reproducible = ctx.config.get_bool("reproducible", false);
        Sink sink(out, out_path.empty() ? ctx.config.get_string("out", "") : out_path);
        verb->fn(ctx, sink);
    } catch (const ValidationError& e) {
        write_error(err, e.kind(), e.what(), kExitValidation);
        return kExitValidation;
    } catch (const NumericalError& e) {
        write_error(err, e.kind(), e.what(), kExitNumerical);
        return kExitNumerical;
    } catch (const std::exception& e) {
        write_error(err, "Error", e.what(), kExitFailure);
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace bicres::cli
