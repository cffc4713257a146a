#pragma once

#include <span>
#include <vector>

#include "bicres/numerics.hpp"
#include "bicres/truncated.hpp"

namespace bicres {

/// A zero of F(-k) in the fourth quadrant.
struct Resonance {
    cplx k;
    double k_re = 0.0;
    double half_width = 0.0;  ///< Gamma / 2 = -Im k
    cplx energy;              ///< k^2
    double residual = 0.0;    ///< |d + i g| at the root
    /// |R(k)| / |R(Re k)| with R = (d + i g) / (k^2 - q^2)^4, i.e. the
    /// residual against the size of F(-k) on the real axis above the root.
    /// The usual |F(-k)| / |F(-q)| is undefined because F(-q) = 0.
    double normalized_residual = 0.0;
};

struct ResonanceOptions {
    int seed_nodes_re = 41;
    int seed_nodes_im = 21;
    /// Each refinement doubles the seed grid when fewer roots than the
    /// winding count were polished.
    int max_refinements = 3;
    /// The top edge of the box is held this far (relative to q) below the
    /// real axis. F(-k) has a zero about 2e-15 below k = q.
    double top_guard = 1e-6;
    Tolerance newton{1e-12, 1e-14, 100};
    WindingOptions winding{};
};

struct ResonanceSearch {
    ComplexRectangle box;  ///< box actually searched (top edge clipped)
    int winding_count = 0;
    std::vector<Resonance> roots;  ///< sorted by real part
};

/// All zeros of d + i g inside `box`, polished by damped Newton on the
/// reduced function and certified by the argument principle on the same
/// function. Extra seeds are polished in addition to the grid scan.
/// Throws RootCountMismatch if the seed refinements cannot account for the
/// winding count.
ResonanceSearch find_resonances(const TruncatedConfig& config, const ComplexRectangle& box,
                                std::span<const cplx> seeds = {},
                                const ResonanceOptions& opts = {});

/// Polishes a single seed. Throws NoConvergence.
Resonance polish_resonance(const TruncatedConfig& config, cplx seed,
                           const Tolerance& tol = {1e-12, 1e-14, 100});

/// The two roots closest to the real axis, ordered by real part.
/// Throws RootCountMismatch when fewer than two roots are present.
std::pair<Resonance, Resonance> closest_pair(std::span<const Resonance> roots);

/// Normalised resonant state psi_n = Phi(k_n, r) / N_n on [0, a].
class GamowState {
public:
    GamowState(const TruncatedConfig& config, const Resonance& resonance);

    const Resonance& resonance() const noexcept { return resonance_; }
    cplx N_squared() const noexcept { return n_squared_; }
    cplx N() const noexcept { return n_; }
    cplx dF_minus() const noexcept { return df_minus_; }

    cplx amplitude(double r) const;
    cplx derivative(double r) const;

    /// |psi'/psi - i k_n| at r = a.
    double outgoing_mismatch() const;

    /// Sign convention for N_n, reported in output metadata.
    static constexpr const char* kBranch = "principal square root, Re N >= 0";

private:
    const TruncatedConfig* config_;
    Resonance resonance_;
    cplx n_squared_;
    cplx n_;
    cplx df_minus_;
};

/// N_n^2 = F(k_n) dF(-k)/dk |_{k_n} / (4 i k_n^2). Throws ZeroDerivative
/// when the derivative is negligible against F(k_n).
GamowState gamow_state(const TruncatedConfig& config, const Resonance& resonance);

struct SweepRow {
    double a = 0.0;
    Resonance first;   ///< lower real part
    Resonance second;  ///< higher real part
};

struct SweepResult {
    std::vector<SweepRow> rows;
    bool widths_decreasing = false;  ///< both Gamma/2 strictly decrease with a
    bool approaching_q = false;      ///< both |k_n - q| strictly decrease with a
};

/// Tracks the doublet nearest k = q over increasing cutoffs. The first
/// cutoff is searched in a box scaled with 1/a; later ones are continued
/// from the previous pair with the (k - q) a scaling as predictor. Throws
/// TrackingLost when a member moves further than the previous doublet
/// spacing or both members land on the same zero.
SweepResult sweep_cutoff(const PotentialParams& params, std::span<const double> a_values,
                         const ResonanceOptions& opts = {});

}  // namespace bicres
