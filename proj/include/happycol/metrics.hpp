#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "happycol/graph.hpp"

namespace happycol {

/// Total colouring, colours in 1..k, indexed by vertex.
using Colouring = std::vector<Colour>;

/// Throws std::invalid_argument unless `sigma` is total over the instance,
/// uses colours in 1..k and agrees with the precolouring.
void check_colouring(const Instance& inst, std::span<const Colour> sigma);

/// Smallest number of same-coloured neighbours that makes a vertex of the
/// given degree rho-happy, i.e. ceil(rho * degree). Products within 1e-9
/// above an integer round down to it, so e.g. 0.3 * 10 needs 3, not 4.
std::size_t happy_threshold(double rho, std::size_t degree) noexcept;

bool is_rho_happy(const Instance& inst, std::span<const Colour> sigma, Vertex v, double rho);

/// Number of rho-happy vertices. One pass over the adjacency, O(n + m).
std::size_t happy_count(const Graph& g, std::span<const Colour> sigma, double rho);

/// Fraction of vertices whose colour equals their community id. Throws
/// std::logic_error when the instance carries no community labels.
double acd(const Instance& inst, std::span<const Colour> sigma);

enum class MuRegime { below_mu, mu_to_xi_tilde, above_xi_tilde };
enum class XiRegime { below_xi, above_xi };

std::string_view to_string(MuRegime r) noexcept;
std::string_view to_string(XiRegime r) noexcept;

struct Regime {
    MuRegime mu;
    XiRegime xi;
    friend bool operator==(const Regime&, const Regime&) = default;
};

/// Theoretical thresholds for G(n, k, p, q).
struct Thresholds {
    double xi = 0.0;
    double mu = 0.0;
    double xi_tilde = 0.0;
    double epsilon = 0.1;
    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

inline constexpr double default_epsilon = 0.1;

/// xi = max{ min{ ln((k/n ln eps + p e + (k-1) q) / (p + (k-1) q)), p / (p + (k-1) q) }, 0 }
/// mu = q / (p + (k-1) q)
/// xi_tilde = p / (p + (k-1) q)
/// A non-positive log argument makes the log branch -inf, so xi falls back to
/// the clamps. Throws std::invalid_argument outside 0 < q < p <= 1, k >= 2,
/// 0 < eps < 1, n >= 1.
Thresholds thresholds(double n, int k, double p, double q, double epsilon = default_epsilon);

/// rho < mu, mu <= rho <= xi_tilde, rho > xi_tilde; and rho <= xi, rho > xi.
Regime classify_regime(double rho, const Thresholds& th) noexcept;

struct EvalReport {
    std::size_t n = 0;
    std::size_t happy_count = 0;
    double alpha = 0.0;
    /// Only meaningful when has_acd is set.
    double acd = 0.0;
    bool has_acd = false;
    bool complete = false;
    bool acd_exact = false;
};

/// Full evaluation of one colouring: happy count, alpha, completeness and,
/// when the instance has ground truth, ACD.
EvalReport count_happy(const Instance& inst, std::span<const Colour> sigma, double rho);

} // namespace happycol
