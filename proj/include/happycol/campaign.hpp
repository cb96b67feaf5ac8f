#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "happycol/evolutionary.hpp"
#include "happycol/results.hpp"

namespace happycol {

/// An instance taking part in a campaign: either already in memory or read
/// from `path` when the campaign starts.
struct CampaignInstance {
    std::string id;
    std::filesystem::path path;
    std::shared_ptr<const Instance> instance;
};

/// Every *.col / *.dimacs file in `dir`, sorted by name, with the
/// file name as id. Files are not opened here.
std::vector<CampaignInstance> list_instances(const std::filesystem::path& dir);

struct AlgorithmSpec {
    std::string name;
    EaConfig config;
};

/// The six published variants with the given termination settings.
std::vector<AlgorithmSpec> default_algorithms(std::optional<Seconds> time_limit, std::optional<int> max_generations);

/// Reads an INI-style algorithm list:
///
///     [defaults]            # optional, applies to every later section
///     max_generations = 200
///
///     [MA(LMC)]             # a variant name presets seeding and improver
///     pop_size = 20
///
///     [my-variant]
///     seeding = lmc
///     improver = rls
///
/// Keys: seeding, improver, pop_size, mute_factor, crossover_p, time_limit
/// (seconds, or "none"), max_generations, min_generations, rls_passes.
/// Setting max_generations without time_limit disables the time limit.
std::vector<AlgorithmSpec> parse_algorithms(std::istream& in);
std::vector<AlgorithmSpec> read_algorithms(const std::filesystem::path& path);

enum class RhoSource {
    fixed,    ///< the same value for every instance
    drawn,    ///< uniform (0, 1] per instance from the campaign seed
    instance, ///< the instance's suggested rho, drawn when it has none
};

struct RhoPolicy {
    RhoSource source = RhoSource::drawn;
    double value = 0.5;
};

double campaign_rho(const RhoPolicy& policy, std::uint64_t campaign_seed, const std::string& instance_id,
                    const Instance& inst);

/// Seed of one (instance, algorithm) pair. Independent of scheduling.
std::uint64_t pair_seed(std::uint64_t campaign_seed, const std::string& instance_id, const std::string& algo);

struct CampaignOptions {
    int workers = 1;
    std::uint64_t seed = 0;
    RhoPolicy rho;
    double epsilon = default_epsilon;
    /// When false, wall_ms is written as 0 so that reruns are byte-identical.
    bool record_timing = true;
    /// Append-only store. Pairs already present are skipped.
    std::optional<std::filesystem::path> results;
};

struct FailedPair {
    std::string instance_id;
    std::string algo;
    std::string message;
};

struct CampaignResult {
    /// Records produced by this invocation, in completion order.
    std::vector<RunRecord> records;
    std::vector<FailedPair> failures;
    /// Pairs found in the results store and not re-run.
    std::size_t skipped = 0;
};

/// Runs every (instance, algorithm) pair on a pool of `workers` threads.
CampaignResult run_campaign(const std::vector<CampaignInstance>& instances, const std::vector<AlgorithmSpec>& algos,
                            const CampaignOptions& options);

/// JSON description of a campaign (algorithm configs, seed, rho policy).
std::string campaign_manifest(const std::vector<AlgorithmSpec>& algos, const CampaignOptions& options);

} // namespace happycol
