#include "happycol/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/core.h>

namespace happycol {

void check_colouring(const Instance& inst, std::span<const Colour> sigma)
{
    if (sigma.size() != inst.n()) {
        throw std::invalid_argument(fmt::format("colouring has {} entries for {} vertices", sigma.size(), inst.n()));
    }
    const auto pre = inst.precolour();
    for (std::size_t v = 0; v < sigma.size(); ++v) {
        if (sigma[v] < 1 || sigma[v] > inst.k()) {
            throw std::invalid_argument(fmt::format("vertex {} has colour {} outside 1..{}", v + 1, sigma[v], inst.k()));
        }
        if (pre[v] != no_colour && pre[v] != sigma[v]) {
            throw std::invalid_argument(
                fmt::format("vertex {} is precoloured {} but coloured {}", v + 1, pre[v], sigma[v]));
        }
    }
}

std::size_t happy_threshold(double rho, std::size_t degree) noexcept
{
    const double product = rho * static_cast<double>(degree);
    const double need = std::ceil(product - 1e-9);
    return need <= 0.0 ? 0 : static_cast<std::size_t>(need);
}

namespace {

std::size_t same_colour_neighbours(const Graph& g, std::span<const Colour> sigma, Vertex v) noexcept
{
    std::size_t same = 0;
    const Colour c = sigma[v];
    for (Vertex u : g.adj(v)) {
        same += sigma[u] == c ? 1 : 0;
    }
    return same;
}

} // namespace

bool is_rho_happy(const Instance& inst, std::span<const Colour> sigma, Vertex v, double rho)
{
    const auto& g = inst.graph();
    return same_colour_neighbours(g, sigma, v) >= happy_threshold(rho, g.degree(v));
}

std::size_t happy_count(const Graph& g, std::span<const Colour> sigma, double rho)
{
    std::size_t happy = 0;
    const auto n = static_cast<Vertex>(g.vertex_count());
    for (Vertex v = 0; v < n; ++v) {
        happy += same_colour_neighbours(g, sigma, v) >= happy_threshold(rho, g.deg(v)) ? 1 : 0;
    }
    return happy;
}

double acd(const Instance& inst, std::span<const Colour> sigma)
{
    if (!inst.has_communities()) {
        throw std::logic_error("instance has no community labels");
    }
    const auto community = inst.community();
    std::size_t aligned = 0;
    for (std::size_t v = 0; v < sigma.size(); ++v) {
        aligned += sigma[v] == community[v] ? 1 : 0;
    }
    return static_cast<double>(aligned) / static_cast<double>(sigma.size());
}

std::string_view to_string(MuRegime r) noexcept
{
    switch (r) {
    case MuRegime::below_mu: return "below-mu";
    case MuRegime::mu_to_xi_tilde: return "mu-to-xitilde";
    case MuRegime::above_xi_tilde: return "above-xitilde";
    }
    return "?";
}

std::string_view to_string(XiRegime r) noexcept
{
    return r == XiRegime::below_xi ? "below-xi" : "above-xi";
}

Thresholds thresholds(double n, int k, double p, double q, double epsilon)
{
    if (!(n >= 1) || k < 2 || !(p > 0 && p <= 1) || !(q > 0 && q < p) || !(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument(
            fmt::format("thresholds need n >= 1, k >= 2, 0 < q < p <= 1, 0 < eps < 1 (n={}, k={}, p={}, q={}, eps={})",
                        n, k, p, q, epsilon));
    }
    const double others = (k - 1) * q;
    const double denom = p + others;
    Thresholds th;
    th.epsilon = epsilon;
    th.mu = q / denom;
    th.xi_tilde = p / denom;
    const double arg = (k / n * std::log(epsilon) + p * std::numbers::e + others) / denom;
    const double log_branch = arg > 0 ? std::log(arg) : -std::numeric_limits<double>::infinity();
    th.xi = std::max(std::min(log_branch, th.xi_tilde), 0.0);
    return th;
}

Regime classify_regime(double rho, const Thresholds& th) noexcept
{
    Regime r{};
    if (rho < th.mu) {
        r.mu = MuRegime::below_mu;
    } else if (rho <= th.xi_tilde) {
        r.mu = MuRegime::mu_to_xi_tilde;
    } else {
        r.mu = MuRegime::above_xi_tilde;
    }
    r.xi = rho <= th.xi ? XiRegime::below_xi : XiRegime::above_xi;
    return r;
}

EvalReport count_happy(const Instance& inst, std::span<const Colour> sigma, double rho)
{
    EvalReport report;
    report.n = inst.n();
    report.happy_count = happy_count(inst.graph(), sigma, rho);
    report.alpha = report.n == 0 ? 1.0 : static_cast<double>(report.happy_count) / static_cast<double>(report.n);
    report.complete = report.happy_count == report.n;
    if (inst.has_communities()) {
        report.has_acd = true;
        report.acd = acd(inst, sigma);
        report.acd_exact = report.acd == 1.0;
    }
    return report;
}

} // namespace happycol
