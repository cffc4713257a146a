#include "bicres/background.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "bicres/errors.hpp"

namespace bicres {

namespace {

double unit_sigma(double k) { return 4.0 * std::numbers::pi / (k * k); }

}  // namespace

YZ yz(const Doublet& d, double k) {
    const double g1 = 2.0 * d.half_width1, g2 = 2.0 * d.half_width2;
    return {(k - d.k1) * (k - d.k2) - 0.25 * g1 * g2,
            0.5 * ((k - d.k1) * g2 + (k - d.k2) * g1)};
}

std::array<double, 2> model_parts(const BackgroundFit& fit, double k) {
    const YZ v = yz(fit.doublet, k);
    const double lam = fit.lambda(k);
    const double s = std::sin(k * fit.a), c = std::cos(k * fit.a);
    const double p = v.Y - lam * v.Z, m = lam * v.Y + v.Z;
    return {p * s + m * c, p * c - m * s};
}

ModelPoint model_phase_and_sigma(const BackgroundFit& fit, double k) {
    if (!(k > 0.0)) throw ValidationError("model_phase_and_sigma: k must be positive");
    const auto [num, den] = model_parts(fit, k);
    const YZ v = yz(fit.doublet, k);
    const double lam = fit.lambda(k);
    ModelPoint out;
    out.delta_mu_pos = -std::atan2(num, den);
    out.delta = out.delta_mu_pos;
    if (out.delta > 0.5 * std::numbers::pi) out.delta -= std::numbers::pi;
    if (out.delta <= -0.5 * std::numbers::pi) out.delta += std::numbers::pi;
    out.sigma = unit_sigma(k) / (1.0 + lam * lam) * num * num / (v.Y * v.Y + v.Z * v.Z);
    return out;
}

std::array<double, 2> default_window(const Doublet& d) {
    return {d.k1 - 20.0 * d.half_width1, d.k2 + 20.0 * d.half_width2};
}

BackgroundFit fit_from_minima(const Doublet& doublet, double a, double k_a, double k_b) {
    if (!(a > 0.0)) throw ValidationError("fit_from_minima: a must be positive");
    if (!(k_a != k_b)) throw ValidationError("fit_from_minima: minima must be distinct");
    // num = Y s + Z c + lambda (Y c - Z s) = 0 at each minimum.
    std::array<double, 2> coef{}, rhs{};
    const std::array<double, 2> ks{k_a, k_b};
    for (int i = 0; i < 2; ++i) {
        const YZ v = yz(doublet, ks[i]);
        const double s = std::sin(ks[i] * a), c = std::cos(ks[i] * a);
        coef[i] = v.Y * c - v.Z * s;
        rhs[i] = -(v.Y * s + v.Z * c);
    }
    // J = [[c_a, c_a k_a], [c_b, c_b k_b]]
    const double j11 = coef[0], j12 = coef[0] * k_a, j21 = coef[1], j22 = coef[1] * k_b;
    const double det = j11 * j22 - j12 * j21;
    const double fro2 = j11 * j11 + j12 * j12 + j21 * j21 + j22 * j22;
    const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det));
    const double smax2 = 0.5 * (fro2 + disc), smin2 = 0.5 * (fro2 - disc);
    const double cond = smin2 > 0.0 ? std::sqrt(smax2 / smin2) : INFINITY;
    if (!(std::abs(det) > 0.0) || !(cond < 1e14)) {
        std::ostringstream os;
        os << "fit_from_minima: singular system (det = " << det << ", condition " << cond << ")";
        throw SingularFitSystem(os.str());
    }
    BackgroundFit fit;
    fit.doublet = doublet;
    fit.a = a;
    fit.lambda0 = (rhs[0] * j22 - j12 * rhs[1]) / det;
    fit.lambda1 = (j11 * rhs[1] - rhs[0] * j21) / det;
    fit.report.minima = {std::min(k_a, k_b), std::max(k_a, k_b)};
    fit.report.condition_number = cond;
    fit.report.overlapping = doublet.overlapping();
    return fit;
}

std::array<double, 2> exact_minima(const std::function<double(double)>& sigma,
                                   std::array<double, 2> window, double dk) {
    const auto [lo, hi] = window;
    if (!(hi > lo) || !(dk > 0.0)) throw ValidationError("exact_minima: bad window or step");
    const auto n = static_cast<long>(std::ceil((hi - lo) / dk));
    std::vector<double> k(n + 1), s(n + 1);
    for (long i = 0; i <= n; ++i) {
        k[i] = lo + (hi - lo) * static_cast<double>(i) / n;
        s[i] = sigma(k[i]) / unit_sigma(k[i]);
    }
    std::vector<std::pair<double, double>> found;  // (depth, position)
    for (long i = 1; i < n; ++i) {
        if (!(s[i] <= s[i - 1] && s[i] < s[i + 1])) continue;
        auto rel = [&](double x) { return sigma(x) / unit_sigma(x); };
        const auto m = boost::math::tools::brent_find_minima(rel, k[i - 1], k[i + 1], 52);
        if (m.second < 1e-4) found.emplace_back(m.second, m.first);
    }
    if (found.size() < 2) {
        std::ostringstream os;
        os << "exact_minima: " << found.size() << " minima below 1e-4 (4 pi / k^2) on [" << lo
           << ", " << hi << "]";
        throw MinimaNotFound(os.str());
    }
    std::partial_sort(found.begin(), found.begin() + 2, found.end());
    return {std::min(found[0].second, found[1].second), std::max(found[0].second, found[1].second)};
}

BackgroundFit fit_lambda(const TruncatedConfig& config, const Doublet& doublet,
                         const std::function<double(double)>& exact_sigma,
                         std::array<double, 2> window) {
    const auto m = exact_minima(exact_sigma, window);
    BackgroundFit fit = fit_from_minima(doublet, config.a(), m[0], m[1]);
    fit.report.window = window;
    std::vector<double> grid;
    const long n = 2000;
    for (long i = 0; i <= n; ++i) grid.push_back(window[0] + (window[1] - window[0]) * i / n);
    fit.report.max_deviation = hadamard_residual(config, fit, grid);
    return fit;
}

double hadamard_residual(const TruncatedConfig& config, const BackgroundFit& fit,
                         std::span<const double> k_grid) {
    double worst = 0.0;
    for (const double k : k_grid) {
        const double model = model_phase_and_sigma(fit, k).sigma;
        worst = std::max(worst, std::abs(model - cross_section(config, k)) / unit_sigma(k));
    }
    return worst;
}

}  // namespace bicres
