#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "happycol/graph.hpp"
#include "happycol/heuristics.hpp"
#include "happycol/metrics.hpp"

namespace happycol {

enum class Seeding { rnd, lmc, ls };
enum class Improver { none, ls, rls };

std::string_view to_string(Seeding s) noexcept;
std::string_view to_string(Improver i) noexcept;
std::optional<Seeding> parse_seeding(std::string_view s) noexcept;
std::optional<Improver> parse_improver(std::string_view s) noexcept;

using Seconds = std::chrono::duration<double>;

struct EaConfig {
    int pop_size = 20;
    double mute_factor = 0.005;
    /// Probability of inheriting a vertex's colour from the first parent.
    double crossover_p = 0.5;
    /// Wall-clock budget. Unset means generation-terminated mode only.
    std::optional<Seconds> time_limit = Seconds(600);
    std::optional<int> max_generations;
    /// The time limit cannot stop a run before this many generations.
    int min_generations = 3;
    Seeding seeding = Seeding::rnd;
    Improver improver = Improver::none;
    int rls_passes = default_rls_passes;
    std::uint64_t seed = 0;
};

class EngineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument for out-of-range settings, including a
/// population too small to yield two parents (pop_size < 3) or a run with
/// neither a time limit nor a generation limit.
void validate(const EaConfig& cfg);

/// The six published algorithm variants.
enum class Variant { ga_rnd, ga_lmc, ga_ls, ma_rnd, ma_lmc, ma_rls_ls };

inline constexpr Variant all_variants[] = {Variant::ga_rnd, Variant::ga_lmc, Variant::ga_ls,
                                           Variant::ma_rnd, Variant::ma_lmc, Variant::ma_rls_ls};

/// "GA(Rnd)", "GA(LMC)", "GA(LS)", "MA(Rnd)", "MA(LMC)", "MA+RLS(LS)".
std::string_view to_string(Variant v) noexcept;
std::optional<Variant> parse_variant(std::string_view name) noexcept;
/// Default configuration of a variant with its (seeding, improver) pair set.
EaConfig variant_config(Variant v);
/// Variant name when (seeding, improver) matches one, else "EA(<seeding>,<improver>)".
std::string algorithm_name(const EaConfig& cfg);

/// Number of vertices mutated per offspring: round-half-up(mute_factor * free).
std::size_t mutation_count(double mute_factor, std::size_t free_vertices) noexcept;

struct Population {
    std::vector<Colouring> members;
    std::vector<std::size_t> scores;
    Colouring best;
    std::size_t best_score = 0;
};

/// Builds pop_size colourings with the configured seeding (each from its own
/// derived seed), applies the improver to each when one is configured, and
/// scores them.
Population seed_population(const Instance& inst, double rho, const EaConfig& cfg);

/// Indices of the ceil(|scores| / 2) highest scores, best first; ties go to
/// the lower index.
std::vector<std::size_t> select_parent_indices(std::span<const std::size_t> scores);
std::vector<Colouring> select_parents(const Population& pop);

/// pop_size - |parents| offspring. Each draws two distinct parents uniformly
/// and takes every free vertex's colour from the first with probability
/// crossover_p. Offspring j of generation g uses its own RNG stream, derived
/// from (cfg.seed, g, j). Throws EngineError for fewer than two parents.
std::vector<Colouring> crossover(std::span<const Colouring> parents, const Instance& inst, const EaConfig& cfg,
                                 int generation = 0);

/// Redraws mutation_count(...) distinct free vertices of every offspring with
/// uniform colours in 1..k (possibly the same colour again).
void mutate(std::span<Colouring> offspring, const Instance& inst, const EaConfig& cfg, int generation = 0);

struct GenerationTrace {
    int generation = 0;
    std::size_t best_score = 0;
    double mean_score = 0.0;
    double elapsed_ms = 0.0;
    /// The incumbent was replaced in this generation.
    bool improved = false;
    /// Improver applications in this generation.
    std::size_t improver_calls = 0;
};

struct EaResult {
    Colouring best;
    EvalReport report;
    int generations = 0;
    double wall_ms = 0.0;
    std::vector<GenerationTrace> trace;
    std::uint64_t improver_calls = 0;
};

/// Genetic algorithm: select, crossover, mutate, rebuild the population from
/// parents and offspring, rescore, and replace the incumbent on strict
/// improvement. Stops when every vertex is happy, the generation limit is
/// hit, or the time limit has passed (after min_generations). Throws
/// std::invalid_argument when cfg.improver is not Improver::none.
EaResult run_ga(const Instance& inst, double rho, const EaConfig& cfg);

/// Memetic algorithm: run_ga plus the improver applied to the initial
/// population and to every mutated offspring. Parents are not re-improved.
/// Throws std::invalid_argument when cfg.improver is Improver::none.
EaResult run_ma(const Instance& inst, double rho, const EaConfig& cfg);

/// Dispatches to run_ga or run_ma on cfg.improver.
EaResult run_ea(const Instance& inst, double rho, const EaConfig& cfg);

} // namespace happycol
