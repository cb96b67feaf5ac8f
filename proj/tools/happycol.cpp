// Command-line front end: generate, eval, solve, bench, stats, plotdata.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "happycol/aggregate.hpp"
#include "happycol/campaign.hpp"
#include "happycol/heuristics.hpp"
#include "happycol/instance_gen.hpp"
#include "happycol/instance_io.hpp"

using namespace happycol;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

IntRange parse_range(const std::string& text, const char* flag)
{
    IntRange r;
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            r.lo = r.hi = std::stoll(text);
        } else {
            r.lo = std::stoll(text.substr(0, colon));
            r.hi = std::stoll(text.substr(colon + 1));
        }
    } catch (const std::logic_error&) {
        throw CLI::ValidationError(flag, "expected <lo>:<hi> or a single integer, got '" + text + "'");
    }
    return r;
}

std::ofstream open_out(const fs::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    }
    return out;
}

json report_json(const EvalReport& r, double rho)
{
    json j;
    j["n"] = r.n;
    j["rho"] = rho;
    j["happy_count"] = r.happy_count;
    j["alpha"] = r.alpha;
    j["complete"] = r.complete;
    j["acd"] = r.has_acd ? json(r.acd) : json(nullptr);
    j["acd_exact"] = r.acd_exact;
    return j;
}

void add_regime(json& j, const Instance& inst, double rho, double epsilon)
{
    if (auto th = instance_thresholds(inst, epsilon)) {
        const auto reg = classify_regime(rho, *th);
        j["mu"] = th->mu;
        j["xi"] = th->xi;
        j["xi_tilde"] = th->xi_tilde;
        j["regime_mu_xitilde"] = std::string(to_string(reg.mu));
        j["regime_xi"] = std::string(to_string(reg.xi));
    }
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string n_range = "200:2999";
    std::string k_range = "2:20";
    std::string pcc_range = "1:10";
    std::size_t count = 10;
    int instances_per_n = 0;
    std::uint64_t seed = 1;
    fs::path out_dir = "instances";
};

void run_generate(const GenerateArgs& a)
{
    BatchRanges ranges;
    ranges.n = parse_range(a.n_range, "--n-range");
    ranges.k = parse_range(a.k_range, "--k-range");
    ranges.pcc = parse_range(a.pcc_range, "--pcc-range");
    ranges.instances_per_n = a.instances_per_n;

    fs::create_directories(a.out_dir);
    auto manifest = open_out(a.out_dir / "manifest.csv");
    manifest << "filename,n,k,p,q,pcc,rho_suggested,seed\n";
    const int width = std::max<int>(4, static_cast<int>(std::to_string(a.count).size()));
    for (std::size_t i = 0; i < a.count; ++i) {
        const auto params = batch_params(ranges, a.seed, i);
        const auto inst = sample_instance(params);
        const auto name = fmt::format("inst_{:0{}}.col", i, width);
        write_instance(a.out_dir / name, inst);
        manifest << fmt::format("{},{},{},{},{},{},{},{}\n", name, params.n, params.k, format_double(params.p),
                                format_double(params.q), params.pcc, format_double(*params.rho_suggested),
                                params.seed);
    }
    fmt::print("wrote {} instances to {}\n", a.count, a.out_dir.string());
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
    fs::path instance;
    fs::path colouring;
    double rho = 0.5;
    double epsilon = default_epsilon;
    std::string format = "json";
};

void run_eval(const EvalArgs& a)
{
    const auto inst = read_instance(a.instance);
    const auto sigma = read_colouring(a.colouring, inst.n());
    check_colouring(inst, sigma);
    const auto r = count_happy(inst, sigma, a.rho);
    auto j = report_json(r, a.rho);
    add_regime(j, inst, a.rho, a.epsilon);
    if (a.format == "json") {
        fmt::print("{}\n", j.dump());
        return;
    }
    for (const auto& [key, value] : j.items()) {
        fmt::print("{:<18} {}\n", key, value.is_string() ? value.get<std::string>() : value.dump());
    }
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    fs::path instance;
    std::string algo = "ga";
    std::string seeding;
    std::string improver;
    int pop_size = 20;
    double mute_factor = 0.005;
    double crossover_p = 0.5;
    std::optional<double> time_limit;
    std::optional<int> max_generations;
    int min_generations = 3;
    int rls_passes = default_rls_passes;
    double rho = 0.5;
    double epsilon = default_epsilon;
    std::uint64_t seed = 1;
    fs::path init;
    fs::path out;
    fs::path record;
    fs::path trace;
};

void run_solve(const SolveArgs& a)
{
    const auto inst = read_instance(a.instance);
    json j;
    j["instance"] = a.instance.filename().string();
    j["seed"] = a.seed;
    Colouring best;
    EvalReport report;

    if (a.algo == "ga" || a.algo == "ma") {
        EaConfig cfg;
        cfg.pop_size = a.pop_size;
        cfg.mute_factor = a.mute_factor;
        cfg.crossover_p = a.crossover_p;
        cfg.min_generations = a.min_generations;
        cfg.rls_passes = a.rls_passes;
        cfg.seed = a.seed;
        cfg.seeding = a.seeding.empty() ? Seeding::rnd : *parse_seeding(a.seeding);
        cfg.improver = a.improver.empty() ? (a.algo == "ma" ? Improver::ls : Improver::none)
                                          : *parse_improver(a.improver);
        cfg.max_generations = a.max_generations;
        if (a.time_limit) {
            cfg.time_limit = Seconds(*a.time_limit);
        } else if (a.max_generations) {
            cfg.time_limit.reset();
        }
        const auto run = a.algo == "ga" ? run_ga(inst, a.rho, cfg) : run_ma(inst, a.rho, cfg);
        const auto rec = make_record(a.instance.filename().string(), algorithm_name(cfg), cfg.seed, inst, a.rho, run,
                                     a.epsilon);
        best = run.best;
        report = run.report;
        j["algo"] = rec.algo;
        j["generations"] = run.generations;
        j["wall_ms"] = run.wall_ms;
        j["improver_calls"] = run.improver_calls;
        if (!a.trace.empty()) {
            auto out = open_out(a.trace);
            out << "generation,best_score,mean_score,elapsed_ms\n";
            for (const auto& t : run.trace) {
                out << fmt::format("{},{},{},{}\n", t.generation, t.best_score, format_double(t.mean_score),
                                   format_double(t.elapsed_ms));
            }
        }
    } else {
        if (!a.seeding.empty() || !a.improver.empty()) {
            throw CLI::ValidationError("--seeding/--improver", "only apply to --algo ga or ma");
        }
        Colouring start;
        if (a.algo == "ls" || a.algo == "rls") {
            start = a.init.empty() ? random_completion(inst, derive_seed(a.seed, {1})) : read_colouring(a.init, inst.n());
            check_colouring(inst, start);
        }
        HeuristicStats stats;
        if (a.algo == "rnd") {
            best = random_completion(inst, a.seed);
        } else if (a.algo == "lmc") {
            best = lmc(inst, a.seed, &stats);
        } else if (a.algo == "ls") {
            best = ls(inst, start, a.rho, a.seed, &stats);
        } else {
            best = rls(inst, start, a.rho, a.seed, a.rls_passes, &stats);
        }
        report = count_happy(inst, best, a.rho);
        j["algo"] = a.algo;
        j["neighbour_inspections"] = stats.neighbour_inspections;
        j["passes"] = stats.passes;
        if (stats.unreachable > 0) {
            j["unreachable"] = stats.unreachable;
            fmt::print(stderr, "warning: {} vertices could not be reached from a precoloured vertex\n",
                       stats.unreachable);
        }
    }

    j["report"] = report_json(report, a.rho);
    add_regime(j, inst, a.rho, a.epsilon);
    if (!a.out.empty()) {
        auto out = open_out(a.out);
        write_colouring(out, best);
    }
    if (!a.record.empty()) {
        open_out(a.record) << j.dump(2) << '\n';
    }
    fmt::print("{}\n", j.dump());
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    fs::path instances;
    std::string algos = "all";
    int workers = 1;
    std::uint64_t seed = 1;
    fs::path out = "results.csv";
    fs::path manifest;
    std::optional<double> rho;
    std::string rho_source = "drawn";
    std::optional<double> time_limit;
    std::optional<int> max_generations;
    double epsilon = default_epsilon;
    bool no_timing = false;
};

void run_bench(const BenchArgs& a)
{
    std::vector<AlgorithmSpec> algos;
    if (a.algos == "all") {
        std::optional<Seconds> limit;
        if (a.time_limit) {
            limit = Seconds(*a.time_limit);
        } else if (!a.max_generations) {
            limit = Seconds(600);
        }
        algos = default_algorithms(limit, a.max_generations);
    } else {
        algos = read_algorithms(a.algos);
    }

    CampaignOptions opts;
    opts.workers = a.workers;
    opts.seed = a.seed;
    opts.epsilon = a.epsilon;
    opts.record_timing = !a.no_timing;
    opts.results = a.out;
    if (a.rho) {
        opts.rho = {RhoSource::fixed, *a.rho};
    } else if (a.rho_source == "instance") {
        opts.rho.source = RhoSource::instance;
    } else {
        opts.rho.source = RhoSource::drawn;
    }

    const auto instances = list_instances(a.instances);
    if (instances.empty()) {
        throw std::runtime_error(fmt::format("no *.col or *.dimacs files in '{}'", a.instances.string()));
    }
    const auto manifest = a.manifest.empty() ? fs::path(a.out.string() + ".manifest.json") : a.manifest;
    open_out(manifest) << campaign_manifest(algos, opts) << '\n';

    const auto res = run_campaign(instances, algos, opts);
    for (const auto& f : res.failures) {
        fmt::print(stderr, "failed: {} / {}: {}\n", f.instance_id, f.algo, f.message);
    }
    fmt::print("{} runs, {} skipped, {} failed -> {}\n", res.records.size(), res.skipped, res.failures.size(),
               a.out.string());
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
    fs::path results;
    std::string pairs = "all";
    std::string metric = "alpha";
    fs::path out = "welch.csv";
    fs::path summary;
    std::string scheme = "all";
};

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string::npos ? text.size() : comma;
        if (end > start) {
            out.push_back(text.substr(start, end - start));
        }
        start = end + 1;
    }
    return out;
}

void run_stats(const StatsArgs& a)
{
    const auto records = read_results(a.results);
    if (records.empty()) {
        throw std::runtime_error(fmt::format("no records in '{}'", a.results.string()));
    }
    const auto algos = a.pairs == "all" ? std::vector<std::string>{} : split_list(a.pairs);
    const auto rows = welch_table(records, a.metric == "acd" ? Metric::acd : Metric::alpha, algos);
    {
        auto out = open_out(a.out);
        write_welch_csv(out, rows);
    }
    if (!a.summary.empty()) {
        const Scheme scheme = a.scheme == "xi" ? Scheme::xi : (a.scheme == "mu" ? Scheme::mu : Scheme::all);
        auto out = open_out(a.summary);
        write_summary_csv(out, aggregate(records, scheme));
    }
    fmt::print("{} records, {} comparisons -> {}\n", records.size(), rows.size(), a.out.string());
}

// ---------------------------------------------------------------- plotdata

struct PlotArgs {
    fs::path results;
    std::string axis = "n";
    int bins = 10;
    fs::path out;
    fs::path histogram;
    int histogram_bins = 100;
};

void run_plotdata(const PlotArgs& a)
{
    const auto records = read_results(a.results);
    const auto series = binned_means(records, *parse_axis(a.axis), a.bins);
    if (a.out.empty()) {
        write_series_csv(std::cout, series);
    } else {
        auto out = open_out(a.out);
        write_series_csv(out, series);
    }
    if (!a.histogram.empty()) {
        auto out = open_out(a.histogram);
        write_histogram_csv(out, alpha_histograms(records, a.histogram_bins));
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Soft happy colouring of partially coloured graphs"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "Sample partially coloured SBM instances");
    g->add_option("--n-range", gen.n_range, "Vertex count range lo:hi")->capture_default_str();
    g->add_option("--k-range", gen.k_range, "Colour count range lo:hi")->capture_default_str();
    g->add_option("--pcc-range", gen.pcc_range, "Precoloured vertices per community lo:hi")->capture_default_str();
    g->add_option("--count", gen.count, "Number of instances")->capture_default_str();
    g->add_option("--instances-per-n", gen.instances_per_n, "Step n sequentially with this many instances each");
    g->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
    g->add_option("--out-dir", gen.out_dir, "Output directory")->capture_default_str();

    EvalArgs ev;
    auto* e = app.add_subcommand("eval", "Evaluate a colouring");
    e->add_option("instance", ev.instance, "Instance file")->required()->check(CLI::ExistingFile);
    e->add_option("colouring", ev.colouring, "Colouring file")->required()->check(CLI::ExistingFile);
    e->add_option("--rho", ev.rho, "Happiness proportion")->required()->check(CLI::Range(0.0, 1.0));
    e->add_option("--epsilon", ev.epsilon, "Epsilon of the xi threshold")->capture_default_str();
    e->add_option("--format", ev.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();

    SolveArgs sv;
    auto* s = app.add_subcommand("solve", "Run a heuristic or an evolutionary algorithm on one instance");
    s->add_option("instance", sv.instance, "Instance file")->required()->check(CLI::ExistingFile);
    s->add_option("--algo", sv.algo, "rnd, lmc, ls, rls, ga or ma")
        ->check(CLI::IsMember({"rnd", "lmc", "ls", "rls", "ga", "ma"}))
        ->capture_default_str();
    s->add_option("--seeding", sv.seeding, "Population seeding: rnd, lmc or ls")
        ->check(CLI::IsMember({"rnd", "lmc", "ls"}));
    s->add_option("--improver", sv.improver, "Offspring improver: none, ls or rls")
        ->check(CLI::IsMember({"none", "ls", "rls"}));
    s->add_option("--pop-size", sv.pop_size)->capture_default_str();
    s->add_option("--mute-factor", sv.mute_factor)->capture_default_str();
    s->add_option("--crossover-p", sv.crossover_p)->capture_default_str();
    auto* tl = s->add_option("--time-limit", sv.time_limit, "Seconds (default 600 unless --max-generations)");
    auto* mg = s->add_option("--max-generations", sv.max_generations, "Generation-terminated mode");
    tl->excludes(mg);
    s->add_option("--min-generations", sv.min_generations)->capture_default_str();
    s->add_option("--rls-passes", sv.rls_passes)->capture_default_str();
    s->add_option("--rho", sv.rho)->required()->check(CLI::Range(0.0, 1.0));
    s->add_option("--epsilon", sv.epsilon)->capture_default_str();
    s->add_option("--seed", sv.seed)->capture_default_str();
    s->add_option("--init", sv.init, "Starting colouring for ls/rls (default: random completion)");
    s->add_option("--out", sv.out, "Write the colouring here");
    s->add_option("--record", sv.record, "Write the run record JSON here");
    s->add_option("--trace", sv.trace, "Write the per-generation trace CSV here (ga/ma)");

    BenchArgs bn;
    auto* b = app.add_subcommand("bench", "Run every algorithm on every instance of a directory");
    b->add_option("--instances", bn.instances, "Instance directory")->required()->check(CLI::ExistingDirectory);
    b->add_option("--algos", bn.algos, "Algorithm file, or 'all' for the six variants")->capture_default_str();
    b->add_option("--workers", bn.workers)->capture_default_str()->check(CLI::PositiveNumber);
    b->add_option("--seed", bn.seed)->capture_default_str();
    b->add_option("--out", bn.out, "Results CSV (appended; finished pairs are skipped)")->capture_default_str();
    b->add_option("--manifest", bn.manifest, "Manifest JSON (default <out>.manifest.json)");
    auto* rf = b->add_option("--rho", bn.rho, "Fixed rho for every instance")->check(CLI::Range(0.0, 1.0));
    b->add_option("--rho-source", bn.rho_source, "drawn or instance, when --rho is not given")
        ->check(CLI::IsMember({"drawn", "instance"}))
        ->excludes(rf)
        ->capture_default_str();
    auto* btl = b->add_option("--time-limit", bn.time_limit, "Seconds, with --algos all");
    auto* bmg = b->add_option("--max-generations", bn.max_generations, "Generation limit, with --algos all");
    btl->excludes(bmg);
    b->add_option("--epsilon", bn.epsilon)->capture_default_str();
    b->add_flag("--no-timing", bn.no_timing, "Write wall_ms as 0 so reruns are byte-identical");

    StatsArgs st;
    auto* t = app.add_subcommand("stats", "Welch's t-tests and regime summaries");
    t->add_option("--results", st.results)->required()->check(CLI::ExistingFile);
    t->add_option("--pairs", st.pairs, "'all' or a comma-separated list of algorithms")->capture_default_str();
    t->add_option("--metric", st.metric)->check(CLI::IsMember({"alpha", "acd"}))->capture_default_str();
    t->add_option("--out", st.out)->capture_default_str();
    t->add_option("--summary", st.summary, "Write the per-regime summary CSV here");
    t->add_option("--scheme", st.scheme, "all, xi or mu")
        ->check(CLI::IsMember({"all", "xi", "mu"}))
        ->capture_default_str();

    PlotArgs pl;
    auto* p = app.add_subcommand("plotdata", "Binned means and alpha histograms");
    p->add_option("--results", pl.results)->required()->check(CLI::ExistingFile);
    p->add_option("--axis", pl.axis)->check(CLI::IsMember({"n", "rho", "k"}))->capture_default_str();
    p->add_option("--bins", pl.bins)->check(CLI::PositiveNumber)->capture_default_str();
    p->add_option("--out", pl.out, "Series CSV (default stdout)");
    p->add_option("--histogram", pl.histogram, "Write the alpha histograms here");
    p->add_option("--histogram-bins", pl.histogram_bins)->check(CLI::PositiveNumber)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (g->parsed()) {
            run_generate(gen);
        } else if (e->parsed()) {
            run_eval(ev);
        } else if (s->parsed()) {
            run_solve(sv);
        } else if (b->parsed()) {
            run_bench(bn);
        } else if (t->parsed()) {
            run_stats(st);
        } else if (p->parsed()) {
            run_plotdata(pl);
        }
    } catch (const CLI::Error& err) {
        return app.exit(err);
    } catch (const std::exception& err) {
        fmt::print(stderr, "error: {}\n", err.what());
        return 1;
    }
    return 0;
}
