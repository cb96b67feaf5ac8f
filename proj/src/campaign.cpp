#include "happycol/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/core.h>
#include <json.hpp>

#include "happycol/instance_io.hpp"
#include "happycol/random.hpp"

namespace happycol {

std::vector<CampaignInstance> list_instances(const std::filesystem::path& dir)
{
    std::vector<CampaignInstance> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".col" || ext == ".dimacs")) {
            out.push_back({entry.path().filename().string(), entry.path(), nullptr});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
}

std::vector<AlgorithmSpec> default_algorithms(std::optional<Seconds> time_limit, std::optional<int> max_generations)
{
    std::vector<AlgorithmSpec> algos;
    for (auto v : all_variants) {
        auto cfg = variant_config(v);
        cfg.time_limit = time_limit;
        cfg.max_generations = max_generations;
        algos.push_back({std::string(to_string(v)), cfg});
    }
    return algos;
}

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

struct PendingConfig {
    EaConfig cfg;
    bool time_limit_set = false;
};

void apply_key(PendingConfig& pc, const std::string& key, const std::string& value, std::size_t line)
{
    auto fail = [&](const char* what) {
        return std::runtime_error(fmt::format("algorithm file line {}: {} '{}'", line, what, value));
    };
    auto as_int = [&] {
        try {
            std::size_t used = 0;
            int v = std::stoi(value, &used);
            if (used != value.size()) {
                throw fail("bad integer");
            }
            return v;
        } catch (const std::logic_error&) {
            throw fail("bad integer");
        }
    };
    auto as_double = [&] {
        try {
            std::size_t used = 0;
            double v = std::stod(value, &used);
            if (used != value.size()) {
                throw fail("bad number");
            }
            return v;
        } catch (const std::logic_error&) {
            throw fail("bad number");
        }
    };
    auto& cfg = pc.cfg;
    if (key == "seeding") {
        auto s = parse_seeding(value);
        if (!s) {
            throw fail("unknown seeding");
        }
        cfg.seeding = *s;
    } else if (key == "improver") {
        auto i = parse_improver(value);
        if (!i) {
            throw fail("unknown improver");
        }
        cfg.improver = *i;
    } else if (key == "pop_size") {
        cfg.pop_size = as_int();
    } else if (key == "mute_factor") {
        cfg.mute_factor = as_double();
    } else if (key == "crossover_p") {
        cfg.crossover_p = as_double();
    } else if (key == "time_limit") {
        pc.time_limit_set = true;
        if (value == "none") {
            cfg.time_limit.reset();
        } else {
            cfg.time_limit = Seconds(as_double());
        }
    } else if (key == "max_generations") {
        cfg.max_generations = as_int();
    } else if (key == "min_generations") {
        cfg.min_generations = as_int();
    } else if (key == "rls_passes") {
        cfg.rls_passes = as_int();
    } else {
        throw std::runtime_error(fmt::format("algorithm file line {}: unknown key '{}'", line, key));
    }
}

} // namespace

std::vector<AlgorithmSpec> parse_algorithms(std::istream& in)
{
    std::vector<std::pair<std::string, std::string>> defaults;
    std::vector<std::pair<std::string, std::vector<std::tuple<std::string, std::string, std::size_t>>>> sections;
    std::vector<std::tuple<std::string, std::string, std::size_t>>* current = nullptr;
    bool in_defaults = false;

    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto text = trim(raw.substr(0, raw.find('#')));
        if (text.empty()) {
            continue;
        }
        if (text.front() == '[') {
            if (text.back() != ']') {
                throw std::runtime_error(fmt::format("algorithm file line {}: unterminated section", line));
            }
            auto name = trim(std::string_view(text).substr(1, text.size() - 2));
            in_defaults = name == "defaults";
            if (!in_defaults) {
                sections.push_back({name, {}});
                current = &sections.back().second;
            }
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(fmt::format("algorithm file line {}: expected key = value", line));
        }
        auto key = trim(std::string_view(text).substr(0, eq));
        auto value = trim(std::string_view(text).substr(eq + 1));
        if (in_defaults) {
            defaults.emplace_back(key, value);
        } else if (current) {
            current->emplace_back(key, value, line);
        } else {
            throw std::runtime_error(fmt::format("algorithm file line {}: key outside a section", line));
        }
    }

    std::vector<AlgorithmSpec> algos;
    std::set<std::string> names;
    for (auto& [name, keys] : sections) {
        if (!names.insert(name).second) {
            throw std::runtime_error(fmt::format("algorithm '{}' defined twice", name));
        }
        PendingConfig pc;
        if (auto v = parse_variant(name)) {
            pc.cfg = variant_config(*v);
        }
        for (auto& [k, v] : defaults) {
            apply_key(pc, k, v, 0);
        }
        for (auto& [k, v, l] : keys) {
            apply_key(pc, k, v, l);
        }
        if (pc.cfg.max_generations && !pc.time_limit_set) {
            pc.cfg.time_limit.reset();
        }
        validate(pc.cfg);
        algos.push_back({name, pc.cfg});
    }
    return algos;
}

std::vector<AlgorithmSpec> read_algorithms(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open algorithm file '{}'", path.string()));
    }
    return parse_algorithms(in);
}

double campaign_rho(const RhoPolicy& policy, std::uint64_t campaign_seed, const std::string& instance_id,
                    const Instance& inst)
{
    if (policy.source == RhoSource::fixed) {
        return policy.value;
    }
    if (policy.source == RhoSource::instance && inst.params() && inst.params()->rho_suggested) {
        return *inst.params()->rho_suggested;
    }
    Rng rng(derive_seed(campaign_seed, {hash_string(instance_id), 0x7240}));
    return rng.uniform_open_closed();
}

std::uint64_t pair_seed(std::uint64_t campaign_seed, const std::string& instance_id, const std::string& algo)
{
    return derive_seed(campaign_seed, {hash_string(instance_id), hash_string(algo)});
}

CampaignResult run_campaign(const std::vector<CampaignInstance>& instances, const std::vector<AlgorithmSpec>& algos,
                            const CampaignOptions& options)
{
    CampaignResult result;

    std::unique_ptr<ResultsWriter> writer;
    std::set<std::pair<std::string, std::string>> done;
    if (options.results) {
        writer = std::make_unique<ResultsWriter>(*options.results);
        for (const auto& r : read_results(*options.results)) {
            done.emplace(r.instance_id, r.algo);
        }
    }

    std::vector<std::shared_ptr<const Instance>> loaded(instances.size());
    std::vector<std::string> load_error(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (instances[i].instance) {
            loaded[i] = instances[i].instance;
            continue;
        }
        try {
            loaded[i] = std::make_shared<const Instance>(read_instance(instances[i].path));
        } catch (const std::exception& e) {
            load_error[i] = e.what();
        }
    }

    struct Pair {
        std::size_t instance;
        std::size_t algo;
    };
    std::vector<Pair> pending;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (std::size_t a = 0; a < algos.size(); ++a) {
            if (done.contains({instances[i].id, algos[a].name})) {
                ++result.skipped;
            } else if (!loaded[i]) {
                result.failures.push_back({instances[i].id, algos[a].name, load_error[i]});
            } else {
                pending.push_back({i, a});
            }
        }
    }

    std::mutex collect;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t j = next++; j < pending.size(); j = next++) {
            const auto& inst = *loaded[pending[j].instance];
            const auto& id = instances[pending[j].instance].id;
            const auto& algo = algos[pending[j].algo];
            try {
                const double rho = campaign_rho(options.rho, options.seed, id, inst);
                EaConfig cfg = algo.config;
                cfg.seed = pair_seed(options.seed, id, algo.name);
                auto run = run_ea(inst, rho, cfg);
                auto record = make_record(id, algo.name, cfg.seed, inst, rho, run, options.epsilon);
                if (!options.record_timing) {
                    record.wall_ms = 0.0;
                }
                if (writer) {
                    writer->append(record);
                }
                std::lock_guard lock(collect);
                result.records.push_back(std::move(record));
            } catch (const std::exception& e) {
                std::lock_guard lock(collect);
                result.failures.push_back({id, algo.name, e.what()});
            }
        }
    };

    const auto workers = static_cast<std::size_t>(std::max(1, options.workers));
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < std::min(workers, pending.size()); ++w) {
        pool.emplace_back(work);
    }
    work();
    pool.clear();
    return result;
}

std::string campaign_manifest(const std::vector<AlgorithmSpec>& algos, const CampaignOptions& options)
{
    using nlohmann::json;
    json j;
    j["seed"] = options.seed;
    j["epsilon"] = options.epsilon;
    switch (options.rho.source) {
    case RhoSource::fixed: j["rho"] = {{"source", "fixed"}, {"value", options.rho.value}}; break;
    case RhoSource::drawn: j["rho"] = {{"source", "drawn"}}; break;
    case RhoSource::instance: j["rho"] = {{"source", "instance"}}; break;
    }
    j["record_timing"] = options.record_timing;
    json list = json::array();
    for (const auto& a : algos) {
        json c;
        c["name"] = a.name;
        c["seeding"] = std::string(to_string(a.config.seeding));
        c["improver"] = std::string(to_string(a.config.improver));
        c["pop_size"] = a.config.pop_size;
        c["mute_factor"] = a.config.mute_factor;
        c["crossover_p"] = a.config.crossover_p;
        c["time_limit_s"] = a.config.time_limit ? json(a.config.time_limit->count()) : json(nullptr);
        c["max_generations"] = a.config.max_generations ? json(*a.config.max_generations) : json(nullptr);
        c["min_generations"] = a.config.min_generations;
        c["rls_passes"] = a.config.rls_passes;
        list.push_back(std::move(c));
    }
    j["algorithms"] = std::move(list);
    return j.dump(2);
}

} // namespace happycol
