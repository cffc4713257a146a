#pragma once

#include <iosfwd>
#include <string>

#include "bicres/darboux.hpp"
#include "bicres_cli/run_config.hpp"

namespace bicres::cli {

/// Where a command writes: stdout, or files derived from --out.
class Sink {
public:
    Sink(std::ostream& stdout_stream, std::string out_path)
        : stdout_(stdout_stream), path_(std::move(out_path)) {}

    /// Writes `text` to the output. With a non-empty `tag` and a file path,
    /// the tag is inserted before the extension (w1_beta5.csv).
    void write(const std::string& text, const std::string& tag = {});

private:
    std::ostream& stdout_;
    std::string path_;
};

struct CommandContext {
    RunConfig config;
    bool reproducible = false;
};

/// alpha, q default 1; beta defaults to 3 unless `bic` is set, in which case
/// beta = 3 alpha q and an explicit conflicting beta is rejected.
PotentialParams params_from(const RunConfig& config, ParamMode mode = ParamMode::strict);

void cmd_w1(const CommandContext& ctx, Sink& sink);
void cmd_potential(const CommandContext& ctx, Sink& sink);
void cmd_resonances(const CommandContext& ctx, Sink& sink);
void cmd_gamow(const CommandContext& ctx, Sink& sink);
void cmd_phase_shift(const CommandContext& ctx, Sink& sink);
void cmd_cross_section(const CommandContext& ctx, Sink& sink);
void cmd_fit_background(const CommandContext& ctx, Sink& sink);
void cmd_sweep_cutoff(const CommandContext& ctx, Sink& sink);

/// "%.12g"
std::string fmt12(double v);

}  // namespace bicres::cli
