#include "happycol/evolutionary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include <fmt/core.h>

#include "happycol/random.hpp"

namespace happycol {

std::string_view to_string(Seeding s) noexcept
{
    switch (s) {
    case Seeding::rnd: return "rnd";
    case Seeding::lmc: return "lmc";
    case Seeding::ls: return "ls";
    }
    return "?";
}

std::string_view to_string(Improver i) noexcept
{
    switch (i) {
    case Improver::none: return "none";
    case Improver::ls: return "ls";
    case Improver::rls: return "rls";
    }
    return "?";
}

std::optional<Seeding> parse_seeding(std::string_view s) noexcept
{
    for (auto v : {Seeding::rnd, Seeding::lmc, Seeding::ls}) {
        if (s == to_string(v)) {
            return v;
        }
    }
    return std::nullopt;
}

std::optional<Improver> parse_improver(std::string_view s) noexcept
{
    for (auto v : {Improver::none, Improver::ls, Improver::rls}) {
        if (s == to_string(v)) {
            return v;
        }
    }
    return std::nullopt;
}

void validate(const EaConfig& cfg)
{
    if (cfg.pop_size < 3) {
        throw std::invalid_argument(
            fmt::format("pop_size = {} leaves fewer than two parents for crossover", cfg.pop_size));
    }
    if (!(cfg.mute_factor >= 0.0 && cfg.mute_factor <= 1.0)) {
        throw std::invalid_argument(fmt::format("mute_factor = {} outside [0, 1]", cfg.mute_factor));
    }
    if (!(cfg.crossover_p > 0.0 && cfg.crossover_p < 1.0)) {
        throw std::invalid_argument(fmt::format("crossover_p = {} outside (0, 1)", cfg.crossover_p));
    }
    if (!cfg.time_limit && !cfg.max_generations) {
        throw std::invalid_argument("either a time limit or a generation limit is required");
    }
    if (cfg.time_limit && cfg.time_limit->count() < 0) {
        throw std::invalid_argument("negative time limit");
    }
    if (cfg.max_generations && *cfg.max_generations < 0) {
        throw std::invalid_argument("negative generation limit");
    }
    if (cfg.rls_passes < 1) {
        throw std::invalid_argument("rls_passes must be positive");
    }
}

std::string_view to_string(Variant v) noexcept
{
    switch (v) {
    case Variant::ga_rnd: return "GA(Rnd)";
    case Variant::ga_lmc: return "GA(LMC)";
    case Variant::ga_ls: return "GA(LS)";
    case Variant::ma_rnd: return "MA(Rnd)";
    case Variant::ma_lmc: return "MA(LMC)";
    case Variant::ma_rls_ls: return "MA+RLS(LS)";
    }
    return "?";
}

std::optional<Variant> parse_variant(std::string_view name) noexcept
{
    for (auto v : all_variants) {
        if (name == to_string(v)) {
            return v;
        }
    }
    return std::nullopt;
}

EaConfig variant_config(Variant v)
{
    EaConfig cfg;
    switch (v) {
    case Variant::ga_rnd: cfg.seeding = Seeding::rnd; cfg.improver = Improver::none; break;
    case Variant::ga_lmc: cfg.seeding = Seeding::lmc; cfg.improver = Improver::none; break;
    case Variant::ga_ls: cfg.seeding = Seeding::ls; cfg.improver = Improver::none; break;
    case Variant::ma_rnd: cfg.seeding = Seeding::rnd; cfg.improver = Improver::ls; break;
    case Variant::ma_lmc: cfg.seeding = Seeding::lmc; cfg.improver = Improver::ls; break;
    case Variant::ma_rls_ls: cfg.seeding = Seeding::ls; cfg.improver = Improver::rls; break;
    }
    return cfg;
}

std::string algorithm_name(const EaConfig& cfg)
{
    for (auto v : all_variants) {
        auto ref = variant_config(v);
        if (ref.seeding == cfg.seeding && ref.improver == cfg.improver) {
            return std::string(to_string(v));
        }
    }
    return fmt::format("EA({},{})", to_string(cfg.seeding), to_string(cfg.improver));
}

std::size_t mutation_count(double mute_factor, std::size_t free_vertices) noexcept
{
    return static_cast<std::size_t>(std::floor(mute_factor * static_cast<double>(free_vertices) + 0.5));
}

namespace {

// Stream tags, so that every random decision has its own derived seed.
enum : std::uint64_t {
    tag_construct = 1,
    tag_seed_ls = 2,
    tag_seed_improve = 3,
    tag_crossover = 10,
    tag_mutate = 11,
    tag_improve = 12,
};

std::uint64_t stream(const EaConfig& cfg, int generation, std::size_t member, std::uint64_t tag)
{
    return derive_seed(cfg.seed, {static_cast<std::uint64_t>(generation), member, tag});
}

Colouring improve(const Instance& inst, Colouring sigma, double rho, const EaConfig& cfg, std::uint64_t seed)
{
    switch (cfg.improver) {
    case Improver::none: return sigma;
    case Improver::ls: return ls(inst, std::move(sigma), rho, seed);
    case Improver::rls: return rls(inst, std::move(sigma), rho, seed, cfg.rls_passes);
    }
    return sigma;
}

std::size_t best_index(std::span<const std::size_t> scores)
{
    return static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

} // namespace

Population seed_population(const Instance& inst, double rho, const EaConfig& cfg)
{
    validate(cfg);
    Population pop;
    const auto size = static_cast<std::size_t>(cfg.pop_size);
    pop.members.reserve(size);
    pop.scores.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        Colouring sigma;
        switch (cfg.seeding) {
        case Seeding::rnd: sigma = random_completion(inst, stream(cfg, 0, i, tag_construct)); break;
        case Seeding::lmc: sigma = lmc(inst, stream(cfg, 0, i, tag_construct)); break;
        case Seeding::ls:
            sigma = ls(inst, random_completion(inst, stream(cfg, 0, i, tag_construct)), rho,
                       stream(cfg, 0, i, tag_seed_ls));
            break;
        }
        sigma = improve(inst, std::move(sigma), rho, cfg, stream(cfg, 0, i, tag_seed_improve));
        pop.scores.push_back(happy_count(inst.graph(), sigma, rho));
        pop.members.push_back(std::move(sigma));
    }
    const auto best = best_index(pop.scores);
    pop.best = pop.members[best];
    pop.best_score = pop.scores[best];
    return pop;
}

std::vector<std::size_t> select_parent_indices(std::span<const std::size_t> scores)
{
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    order.resize((scores.size() + 1) / 2);
    return order;
}

std::vector<Colouring> select_parents(const Population& pop)
{
    std::vector<Colouring> parents;
    for (auto i : select_parent_indices(pop.scores)) {
        parents.push_back(pop.members[i]);
    }
    return parents;
}

std::vector<Colouring> crossover(std::span<const Colouring> parents, const Instance& inst, const EaConfig& cfg,
                                 int generation)
{
    if (parents.size() < 2) {
        throw EngineError(fmt::format("crossover needs at least two parents, got {}", parents.size()));
    }
    const auto size = static_cast<std::size_t>(cfg.pop_size);
    const std::size_t wanted = size > parents.size() ? size - parents.size() : 0;
    std::vector<Colouring> offspring;
    offspring.reserve(wanted);
    for (std::size_t j = 0; j < wanted; ++j) {
        Rng rng(stream(cfg, generation, j, tag_crossover));
        const auto a = rng.below(parents.size());
        auto b = rng.below(parents.size() - 1);
        if (b >= a) {
            ++b;
        }
        const auto& first = parents[a];
        const auto& second = parents[b];
        Colouring child = first;
        for (Vertex v : inst.free_vertices()) {
            if (!rng.bernoulli(cfg.crossover_p)) {
                child[v] = second[v];
            }
        }
        offspring.push_back(std::move(child));
    }
    return offspring;
}

void mutate(std::span<Colouring> offspring, const Instance& inst, const EaConfig& cfg, int generation)
{
    const auto free = inst.free_vertices();
    const auto count = std::min(mutation_count(cfg.mute_factor, free.size()), free.size());
    if (count == 0) {
        return;
    }
    const auto k = static_cast<std::uint64_t>(inst.k());
    std::unordered_set<std::size_t> chosen;
    for (std::size_t j = 0; j < offspring.size(); ++j) {
        Rng rng(stream(cfg, generation, j, tag_mutate));
        chosen.clear();
        // Floyd's sampling of `count` distinct positions in free[].
        for (std::size_t top = free.size() - count; top < free.size(); ++top) {
            std::size_t pick = rng.below(top + 1);
            if (!chosen.insert(pick).second) {
                pick = top;
                chosen.insert(pick);
            }
            offspring[j][free[pick]] = static_cast<Colour>(1 + rng.below(k));
        }
    }
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double mean_of(std::span<const std::size_t> scores)
{
    double sum = 0;
    for (auto s : scores) {
        sum += static_cast<double>(s);
    }
    return sum / static_cast<double>(scores.size());
}

EaResult evolve(const Instance& inst, double rho, const EaConfig& cfg)
{
    validate(cfg);
    const auto start = Clock::now();
    const auto n = inst.n();
    EaResult result;

    Population pop = seed_population(inst, rho, cfg);
    if (cfg.improver != Improver::none) {
        result.improver_calls += pop.members.size();
    }
    result.trace.push_back({0, pop.best_score, mean_of(pop.scores), elapsed_ms(start), false,
                            cfg.improver != Improver::none ? pop.members.size() : 0});

    int generation = 0;
    auto done = [&] {
        if (pop.best_score >= n) {
            return true;
        }
        if (cfg.max_generations && generation >= *cfg.max_generations) {
            return true;
        }
        if (cfg.time_limit && generation >= cfg.min_generations &&
            Clock::now() - start >= std::chrono::duration_cast<Clock::duration>(*cfg.time_limit)) {
            return true;
        }
        return false;
    };

    while (!done()) {
        ++generation;
        const auto parent_idx = select_parent_indices(pop.scores);
        std::vector<Colouring> parents;
        std::vector<std::size_t> scores;
        parents.reserve(static_cast<std::size_t>(cfg.pop_size));
        for (auto i : parent_idx) {
            parents.push_back(std::move(pop.members[i]));
            scores.push_back(pop.scores[i]);
        }

        auto offspring = crossover(parents, inst, cfg, generation);
        mutate(offspring, inst, cfg, generation);
        std::size_t improved_now = 0;
        if (cfg.improver != Improver::none) {
            for (std::size_t j = 0; j < offspring.size(); ++j) {
                offspring[j] = improve(inst, std::move(offspring[j]), rho, cfg, stream(cfg, generation, j, tag_improve));
                ++improved_now;
            }
        }
        result.improver_calls += improved_now;

        // Parent scores carry over unchanged; only offspring need scoring.
        for (auto& child : offspring) {
            scores.push_back(happy_count(inst.graph(), child, rho));
            parents.push_back(std::move(child));
        }
        pop.members = std::move(parents);
        pop.scores = std::move(scores);

        const auto top = best_index(pop.scores);
        const bool improved = pop.scores[top] > pop.best_score;
        if (improved) {
            pop.best = pop.members[top];
            pop.best_score = pop.scores[top];
        }
        result.trace.push_back(
            {generation, pop.best_score, mean_of(pop.scores), elapsed_ms(start), improved, improved_now});
    }

    result.generations = generation;
    result.best = std::move(pop.best);
    result.report = count_happy(inst, result.best, rho);
    result.wall_ms = elapsed_ms(start);
    return result;
}

} // namespace

EaResult run_ga(const Instance& inst, double rho, const EaConfig& cfg)
{
    if (cfg.improver != Improver::none) {
        throw std::invalid_argument("run_ga takes no improver; use run_ma");
    }
    return evolve(inst, rho, cfg);
}

EaResult run_ma(const Instance& inst, double rho, const EaConfig& cfg)
{
    if (cfg.improver == Improver::none) {
        throw std::invalid_argument("run_ma needs an improver");
    }
    return evolve(inst, rho, cfg);
}

EaResult run_ea(const Instance& inst, double rho, const EaConfig& cfg)
{
    return cfg.improver == Improver::none ? run_ga(inst, rho, cfg) : run_ma(inst, rho, cfg);
}

} // namespace happycol
