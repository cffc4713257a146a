#include "bicres/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bicres/errors.hpp"

namespace bicres {

namespace {

constexpr cplx I{0.0, 1.0};

Resonance make_resonance(const TruncatedConfig& config, cplx k) {
    Resonance r;
    r.k = k;
    r.k_re = k.real();
    r.half_width = -k.imag();
    r.energy = k * k;
    const double q = config.params().q();
    const cplx scaled = reduced_jost_scaled(config, k);
    // |d + i g| = |R~| |k^2 - q^2|^4 e^{-a Im k}
    r.residual = std::exp(std::log(std::abs(scaled)) + 4.0 * std::log(std::abs(k * k - q * q)) -
                          config.a() * k.imag());
    r.normalized_residual =
        std::abs(scaled) / std::abs(reduced_jost_scaled(config, {k.real(), 0.0}));
    return r;
}

bool known(const std::vector<cplx>& roots, cplx z) {
    return std::any_of(roots.begin(), roots.end(), [&](cplx r) {
        return std::abs(r - z) < 1e-9 * std::max(1.0, std::abs(z));
    });
}

// Local minima of |f| on an nx x ny node grid over the box.
std::vector<cplx> grid_seeds(const ComplexFunction& f, const ComplexRectangle& box, int nx,
                             int ny) {
    std::vector<double> mag(static_cast<std::size_t>(nx * ny));
    auto node = [&](int i, int j) {
        return cplx{box.re_min + box.width() * i / (nx - 1),
                    box.im_min + box.height() * j / (ny - 1)};
    };
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) mag[i * ny + j] = std::log(std::abs(f(node(i, j))));
    }
    std::vector<cplx> seeds;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const double m = mag[i * ny + j];
            bool minimum = true;
            for (int di = -1; di <= 1 && minimum; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    const int a = i + di, b = j + dj;
                    if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= nx || b >= ny) continue;
                    if (mag[a * ny + b] < m) {
                        minimum = false;
                        break;
                    }
                }
            }
            if (minimum) seeds.push_back(node(i, j));
        }
    }
    return seeds;
}

// Splits the box until every cell encloses at most one zero, then polishes
// from the cell centre. Used when grid seeding leaves zeros unaccounted for.
void subdivide(const ComplexFunction& f, const ComplexRectangle& cell, int count, int depth,
               const ResonanceOptions& opts, std::vector<cplx>& roots) {
    if (count <= 0) return;
    if (count == 1) {
        const cplx centre{0.5 * (cell.re_min + cell.re_max), 0.5 * (cell.im_min + cell.im_max)};
        try {
            const NewtonResult n = newton_complex(f, centre, opts.newton);
            if (cell.contains(n.root)) {
                if (!known(roots, n.root)) roots.push_back(n.root);
                return;
            }
        } catch (const NoConvergence&) {
        }
    }
    if (depth >= 40) return;
    // Split slightly off centre so a zero sitting on the midline of a
    // symmetric box does not land on the new edge.
    const bool along_re = cell.width() >= cell.height();
    ComplexRectangle lo = cell, hi = cell;
    for (const double t : {0.5, 0.4871, 0.5313}) {
        if (along_re) {
            lo.re_max = hi.re_min = cell.re_min + t * cell.width();
        } else {
            lo.im_max = hi.im_min = cell.im_min + t * cell.height();
        }
        try {
            const int n_lo = winding_count(f, lo, opts.winding);
            subdivide(f, lo, n_lo, depth + 1, opts, roots);
            subdivide(f, hi, count - n_lo, depth + 1, opts, roots);
            return;
        } catch (const BoundaryZero&) {
        }
    }
}

}  // namespace

Resonance polish_resonance(const TruncatedConfig& config, cplx seed, const Tolerance& tol) {
    auto f = [&](cplx k) { return reduced_jost_scaled(config, k); };
    const NewtonResult n = newton_complex(f, seed, tol);
    return make_resonance(config, n.root);
}

ResonanceSearch find_resonances(const TruncatedConfig& config, const ComplexRectangle& box,
                                std::span<const cplx> seeds, const ResonanceOptions& opts) {
    box.validate();
    if (!(box.re_min > 0.0) || box.im_max > 0.0) {
        throw ValidationError("find_resonances: box must lie in the fourth quadrant");
    }
    if (opts.seed_nodes_re < 2 || opts.seed_nodes_im < 2) {
        throw ValidationError("find_resonances: seed grid needs at least 2 x 2 nodes");
    }
    ResonanceSearch out;
    out.box = box;
    out.box.im_max = std::min(box.im_max, -opts.top_guard * config.params().q());
    if (!(out.box.im_max > out.box.im_min)) {
        throw ValidationError("find_resonances: box lies entirely above the guard line");
    }
    auto f = [&](cplx k) { return reduced_jost_scaled(config, k); };
    out.winding_count = winding_count(f, out.box, opts.winding);

    std::vector<cplx> roots;
    auto polish = [&](cplx s) {
        try {
            const NewtonResult n = newton_complex(f, s, opts.newton);
            if (out.box.contains(n.root) && !known(roots, n.root)) roots.push_back(n.root);
        } catch (const NoConvergence&) {
        }
    };
    for (const cplx s : seeds) polish(s);
    int nx = opts.seed_nodes_re, ny = opts.seed_nodes_im;
    for (int level = 0; level <= opts.max_refinements; ++level) {
        if (static_cast<int>(roots.size()) >= out.winding_count) break;
        for (const cplx s : grid_seeds(f, out.box, nx, ny)) polish(s);
        nx = 2 * nx - 1;
        ny = 2 * ny - 1;
    }
    if (static_cast<int>(roots.size()) < out.winding_count) {
        subdivide(f, out.box, out.winding_count, 0, opts, roots);
    }
    if (static_cast<int>(roots.size()) != out.winding_count) {
        std::ostringstream os;
        os << "find_resonances: winding count " << out.winding_count << " but " << roots.size()
           << " roots polished";
        throw RootCountMismatch(os.str());
    }
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    for (const cplx r : roots) out.roots.push_back(make_resonance(config, r));
    return out;
}

std::pair<Resonance, Resonance> closest_pair(std::span<const Resonance> roots) {
    if (roots.size() < 2) throw RootCountMismatch("closest_pair: fewer than two roots");
    std::vector<Resonance> v(roots.begin(), roots.end());
    std::partial_sort(v.begin(), v.begin() + 2, v.end(), [](const Resonance& a, const Resonance& b) {
        return a.half_width < b.half_width;
    });
    if (v[0].k_re > v[1].k_re) std::swap(v[0], v[1]);
    return {v[0], v[1]};
}

GamowState::GamowState(const TruncatedConfig& config, const Resonance& resonance)
    : config_(&config), resonance_(resonance) {
    const cplx k = resonance.k;
    const JostPair j = jost_function(config, k);
    // F(-k) = pre(k) e^{ika} (d + i g) and d + i g vanishes at the root.
    const cplx h = normalizer_h(config.params(), k);
    const double wa = config.w1_cutoff().w1;
    const cplx pre = config.w1_origin() / (h * wa * wa);
    auto comb = [&](cplx z) { return dg(config, z).combined(); };
    df_minus_ = pre * std::exp(I * k * config.a()) * complex_derivative(comb, k);
    if (!(std::abs(df_minus_) > 1e-12 * std::abs(j.F_plus))) {
        std::ostringstream os;
        os << "gamow_state: dF(-k)/dk = " << df_minus_ << " is negligible at k = " << k;
        throw ZeroDerivative(os.str());
    }
    n_squared_ = j.F_plus * df_minus_ / (4.0 * I * k * k);
    n_ = std::sqrt(n_squared_);
}

cplx GamowState::amplitude(double r) const {
    return regular_solution(*config_, resonance_.k, r).phi / n_;
}

cplx GamowState::derivative(double r) const {
    return regular_solution(*config_, resonance_.k, r).phi_r / n_;
}

double GamowState::outgoing_mismatch() const {
    const RegularSolution s = regular_solution(*config_, resonance_.k, config_->a());
    return std::abs(s.phi_r / s.phi - I * resonance_.k);
}

GamowState gamow_state(const TruncatedConfig& config, const Resonance& resonance) {
    return GamowState(config, resonance);
}

SweepResult sweep_cutoff(const PotentialParams& params, std::span<const double> a_values,
                         const ResonanceOptions& opts) {
    if (a_values.empty()) throw ValidationError("sweep_cutoff: no cutoff values");
    for (std::size_t i = 1; i < a_values.size(); ++i) {
        if (!(a_values[i] > a_values[i - 1])) {
            throw ValidationError("sweep_cutoff: cutoff values must increase");
        }
    }
    const double q = params.q();
    SweepResult out;
    for (const double a : a_values) {
        const TruncatedConfig config(params, a);
        SweepRow row;
        row.a = a;
        if (out.rows.empty()) {
            // Zeros near q sit about 1/a apart and within a few 1/a of the axis.
            const ComplexRectangle box{std::max(q - 12.0 / a, 0.1 * q), q + 12.0 / a, -5.0 / a,
                                       0.0};
            const ResonanceSearch s = find_resonances(config, box, {}, opts);
            std::tie(row.first, row.second) = closest_pair(s.roots);
        } else {
            const SweepRow& prev = out.rows.back();
            const double scale = prev.a / a;
            const double spacing = std::abs(prev.second.k - prev.first.k);
            auto track = [&](const Resonance& r) {
                const Resonance n = polish_resonance(config, q + (r.k - q) * scale, opts.newton);
                if (n.k.imag() > -opts.top_guard * q) {
                    std::ostringstream os;
                    os << "sweep_cutoff: tracked root " << n.k << " at a = " << a
                       << " fell onto the threshold zero at q";
                    throw TrackingLost(os.str());
                }
                if (std::abs(n.k - r.k) > spacing) {
                    std::ostringstream os;
                    os << "sweep_cutoff: root moved " << std::abs(n.k - r.k)
                       << " at a = " << a << ", more than the doublet spacing " << spacing;
                    throw TrackingLost(os.str());
                }
                return n;
            };
            row.first = track(prev.first);
            row.second = track(prev.second);
            if (std::abs(row.first.k - row.second.k) < 1e-9) {
                throw TrackingLost("sweep_cutoff: both members converged to one zero");
            }
        }
        out.rows.push_back(row);
    }
    out.widths_decreasing = true;
    out.approaching_q = true;
    for (std::size_t i = 1; i < out.rows.size(); ++i) {
        const SweepRow &p = out.rows[i - 1], &c = out.rows[i];
        out.widths_decreasing = out.widths_decreasing && c.first.half_width < p.first.half_width &&
                                c.second.half_width < p.second.half_width;
        out.approaching_q = out.approaching_q && std::abs(c.first.k - q) < std::abs(p.first.k - q) &&
                            std::abs(c.second.k - q) < std::abs(p.second.k - q);
    }
    return out;
}

}  // namespace bicres
