#include <doctest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "happycol/aggregate.hpp"
#include "happycol/campaign.hpp"
#include "happycol/instance_gen.hpp"
#include "happycol/instance_io.hpp"

using namespace happycol;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("happycol_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::shared_ptr<const Instance> generated(std::uint64_t seed, std::size_t n = 60)
{
    SbmParams p;
    p.n = n;
    p.k = 3;
    p.p = 0.3;
    p.q = 0.05;
    p.pcc = 2;
    p.seed = seed;
    return std::make_shared<const Instance>(sample_instance(p));
}

std::vector<CampaignInstance> in_memory(std::size_t count)
{
    std::vector<CampaignInstance> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back({"inst" + std::to_string(i), {}, generated(i)});
    }
    return out;
}

CampaignOptions reproducible(std::uint64_t seed)
{
    CampaignOptions o;
    o.seed = seed;
    o.record_timing = false;
    return o;
}

std::vector<std::string> sorted_rows(const std::vector<RunRecord>& records)
{
    std::vector<std::string> rows;
    for (const auto& r : records) {
        rows.push_back(to_csv_row(r));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

RunRecord record(std::string algo, double alpha, std::optional<double> acd = std::nullopt, double rho = 0.5)
{
    RunRecord r;
    r.instance_id = "i";
    r.algo = std::move(algo);
    r.n = 100;
    r.k = 2;
    r.rho = rho;
    r.alpha = alpha;
    r.acd = acd;
    r.complete = alpha == 1.0;
    r.acd_exact = acd && *acd == 1.0;
    return r;
}

} // namespace

TEST_CASE("results rows round trip")
{
    const auto inst = generated(1);
    EaConfig cfg = variant_config(Variant::ga_lmc);
    cfg.time_limit.reset();
    cfg.max_generations = 3;
    const auto run = run_ea(*inst, 0.4, cfg);
    auto r = make_record("a,b \"x\".col", "GA(LMC)", 77, *inst, 0.4, run);
    REQUIRE(r.thresholds);
    REQUIRE(r.regime);
    REQUIRE(r.acd);
    const auto row = to_csv_row(r);
    CHECK(parse_csv_row(row) == r);

    std::ostringstream out;
    write_results(out, {r, r});
    CHECK(out.str().starts_with(std::string(results_header) + "\n"));
    std::istringstream in(out.str());
    CHECK(read_results(in).size() == 2);

    // Without generator parameters there are no thresholds or regimes.
    const Edge e[] = {{0, 1}};
    Instance bare(Graph(2, e), 2, {1, 0}, {});
    const auto plain = make_record("bare", "GA(LMC)", 1, bare, 0.5, run_ea(bare, 0.5, cfg));
    CHECK(!plain.thresholds);
    CHECK(!plain.acd);
    CHECK(parse_csv_row(to_csv_row(plain)) == plain);

    CHECK_THROWS(parse_csv_row("a,b,c"));
}

TEST_CASE("results header has the documented columns")
{
    CHECK(results_header ==
          "instance_id,algo,seed,n,k,p,q,pcc,rho,mu,xi,xi_tilde,regime_mu_xitilde,regime_xi,alpha,acd,complete,"
          "acd_exact,generations,wall_ms");
}

TEST_CASE("algorithm files")
{
    std::istringstream in("# comment\n"
                          "[defaults]\n"
                          "max_generations = 40\n"
                          "\n"
                          "[MA(LMC)]\n"
                          "pop_size = 10\n"
                          "[custom]\n"
                          "seeding = ls\n"
                          "improver = rls\n"
                          "rls_passes = 3\n"
                          "time_limit = 2.5\n");
    const auto algos = parse_algorithms(in);
    REQUIRE(algos.size() == 2);
    CHECK(algos[0].name == "MA(LMC)");
    CHECK(algos[0].config.seeding == Seeding::lmc);
    CHECK(algos[0].config.improver == Improver::ls);
    CHECK(algos[0].config.pop_size == 10);
    CHECK(algos[0].config.max_generations == 40);
    CHECK(!algos[0].config.time_limit);
    CHECK(algos[1].config.seeding == Seeding::ls);
    CHECK(algos[1].config.rls_passes == 3);
    CHECK(algos[1].config.time_limit->count() == 2.5);

    std::istringstream bad_key("[x]\ncolour = 3\n");
    CHECK_THROWS(parse_algorithms(bad_key));
    std::istringstream bad_value("[x]\npop_size = many\n");
    CHECK_THROWS(parse_algorithms(bad_value));
    std::istringstream twice("[x]\n[x]\n");
    CHECK_THROWS(parse_algorithms(twice));
}

TEST_CASE("campaign")
{
    const auto algos = default_algorithms(std::nullopt, 4);
    REQUIRE(algos.size() == 6);

    SUBCASE("one instance, six algorithms")
    {
        const auto res = run_campaign(in_memory(1), algos, reproducible(3));
        CHECK(res.records.size() == 6);
        CHECK(res.failures.empty());
        std::set<std::string> names;
        for (const auto& r : res.records) {
            names.insert(r.algo);
            CHECK(r.wall_ms == 0.0);
            CHECK(r.seed == pair_seed(3, "inst0", r.algo));
        }
        CHECK(names.size() == 6);
    }

    SUBCASE("resume re-runs exactly the missing pairs")
    {
        const auto dir = scratch("resume");
        auto opts = reproducible(4);
        opts.results = dir / "results.csv";
        const auto first = run_campaign(in_memory(2), algos, opts);
        CHECK(first.records.size() == 12);

        std::ifstream in(*opts.results);
        std::vector<std::string> lines;
        for (std::string l; std::getline(in, l);) {
            lines.push_back(l);
        }
        in.close();
        REQUIRE(lines.size() == 13);
        const auto original = lines;
        lines.erase(lines.begin() + 3);
        lines.erase(lines.begin() + 7);
        {
            std::ofstream out(*opts.results, std::ios::trunc);
            for (const auto& l : lines) {
                out << l << '\n';
            }
        }

        const auto second = run_campaign(in_memory(2), algos, opts);
        CHECK(second.records.size() == 2);
        CHECK(second.skipped == 10);
        CHECK(sorted_rows(read_results(*opts.results)) == sorted_rows(first.records));

        // A torn final row is dropped and its pair re-run.
        {
            std::ofstream out(*opts.results, std::ios::app);
            out << "inst0,GA(R";
        }
        const auto third = run_campaign(in_memory(2), algos, opts);
        CHECK(third.records.empty());
        CHECK(read_results(*opts.results).size() == 12);
    }

    SUBCASE("worker count does not change the records")
    {
        auto instances = in_memory(3);
        auto one = reproducible(5);
        auto eight = reproducible(5);
        eight.workers = 8;
        CHECK(sorted_rows(run_campaign(instances, algos, one).records) ==
              sorted_rows(run_campaign(instances, algos, eight).records));
    }

    SUBCASE("unreadable instance files become failures")
    {
        const auto dir = scratch("unreadable");
        write_instance(dir / "good.col", *generated(1));
        std::ofstream(dir / "bad.col") << "p edge 2 1\ne 1 9\n";
        const auto listed = list_instances(dir);
        REQUIRE(listed.size() == 2);
        CHECK(listed[0].id == "bad.col");
        const auto res = run_campaign(listed, algos, reproducible(1));
        CHECK(res.records.size() == 6);
        CHECK(res.failures.size() == 6);
        CHECK(res.failures[0].instance_id == "bad.col");
    }

    SUBCASE("rho policies")
    {
        const auto inst = generated(2);
        RhoPolicy fixed{RhoSource::fixed, 0.3};
        CHECK(campaign_rho(fixed, 1, "x", *inst) == 0.3);
        RhoPolicy drawn{RhoSource::drawn, 0};
        const double a = campaign_rho(drawn, 1, "x", *inst);
        CHECK(a > 0.0);
        CHECK(a <= 1.0);
        CHECK(a == campaign_rho(drawn, 1, "x", *inst));
        CHECK(a != campaign_rho(drawn, 1, "y", *inst));
    }

    SUBCASE("manifest")
    {
        const auto text = campaign_manifest(algos, reproducible(9));
        CHECK(text.find("\"MA+RLS(LS)\"") != std::string::npos);
        CHECK(text.find("\"record_timing\": false") != std::string::npos);
    }
}

TEST_CASE("aggregate")
{
    SUBCASE("single record")
    {
        const auto rows = aggregate({record("A", 0.75)}, Scheme::all);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].alpha_mean == 0.75);
        CHECK(rows[0].alpha_sd == 0.0);
        CHECK_FALSE(rows[0].sd_defined);
        CHECK(rows[0].count == 1);
    }

    SUBCASE("complete counts")
    {
        const auto rows = aggregate({record("A", 1.0), record("A", 1.0), record("A", 1.0)}, Scheme::all);
        CHECK(rows[0].complete == 3);
        CHECK(rows[0].incomplete == 0);
    }

    SUBCASE("recomputation of a synthetic record set")
    {
        std::vector<RunRecord> records;
        Rng rng(3);
        const auto th = thresholds(500, 4, 0.4, 0.05);
        for (int i = 0; i < 90; ++i) {
            auto r = record(i % 3 == 0 ? "A" : (i % 3 == 1 ? "B" : "C"), rng.uniform(),
                            rng.bernoulli(0.2) ? std::optional<double>(1.0) : std::optional<double>(rng.uniform()),
                            rng.uniform_open_closed());
            if (rng.bernoulli(0.3)) {
                r.alpha = 1.0;
                r.complete = true;
            }
            r.thresholds = th;
            r.regime = classify_regime(r.rho, th);
            records.push_back(r);
        }
        for (auto scheme : {Scheme::all, Scheme::xi, Scheme::mu}) {
            const auto rows = aggregate(records, scheme);
            CHECK(rows.size() == 3 * (scheme == Scheme::all ? 1 : (scheme == Scheme::xi ? 2 : 3)));
            std::map<std::string, std::size_t> per_algo;
            for (const auto& row : rows) {
                // Independent recomputation.
                std::vector<double> alpha;
                double acd_sum = 0;
                std::size_t complete = 0;
                std::size_t exact = 0;
                for (const auto& r : records) {
                    std::string label = "all";
                    if (scheme == Scheme::xi) {
                        label = r.rho <= th.xi ? "below-xi" : "above-xi";
                    } else if (scheme == Scheme::mu) {
                        label = r.rho < th.mu ? "below-mu" : (r.rho <= th.xi_tilde ? "mu-to-xitilde" : "above-xitilde");
                    }
                    if (r.algo == row.algo && label == row.regime) {
                        alpha.push_back(r.alpha);
                        acd_sum += *r.acd;
                        complete += r.complete ? 1 : 0;
                        exact += r.acd_exact ? 1 : 0;
                    }
                }
                CHECK(row.count == alpha.size());
                CHECK(row.complete + row.incomplete == row.count);
                CHECK(row.acd_exact + row.acd_inexact == row.count);
                CHECK(row.complete == complete);
                CHECK(row.acd_exact == exact);
                per_algo[row.algo] += row.count;
                if (alpha.empty()) {
                    CHECK(!row.alpha_mean);
                    continue;
                }
                double sum = 0;
                for (double a : alpha) {
                    sum += a;
                }
                const double m = sum / static_cast<double>(alpha.size());
                double ss = 0;
                for (double a : alpha) {
                    ss += (a - m) * (a - m);
                }
                CHECK(*row.alpha_mean == doctest::Approx(m).epsilon(1e-12));
                if (alpha.size() > 1) {
                    CHECK(row.alpha_sd ==
                          doctest::Approx(std::sqrt(ss / static_cast<double>(alpha.size() - 1))).epsilon(1e-12));
                }
                CHECK(*row.acd_mean == doctest::Approx(acd_sum / static_cast<double>(alpha.size())).epsilon(1e-12));
            }
            for (const auto& [algo, total] : per_algo) {
                CHECK(total == 30);
            }
        }
    }

    SUBCASE("summary csv")
    {
        std::ostringstream out;
        write_summary_csv(out, aggregate({record("A", 0.5, 1.0), record("A", 1.0, 0.5)}, Scheme::all));
        CHECK(out.str() ==
              "algo,scheme,regime,count,alpha_mean,alpha_sd,sd_defined,acd_mean,complete,incomplete,acd_exact,"
              "acd_inexact,acd_mean_complete\n"
              "A,all,all,2,0.75,0.3535533905932738,1,0.75,1,1,1,1,0.5\n");
    }
}

TEST_CASE("welch table")
{
    std::vector<RunRecord> records;
    for (double a : {1.0, 2.0, 3.0, 4.0, 5.0}) {
        records.push_back(record("A", a));
        records.push_back(record("B", a + 1));
    }
    records.push_back(record("C", 0.5));
    const auto rows = welch_table(records, Metric::alpha);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].algo_a == "A");
    CHECK(rows[0].algo_b == "B");
    REQUIRE(rows[0].result);
    CHECK(rows[0].result->t == doctest::Approx(-1.0));
    CHECK(rows[2].algo_a == "B");
    CHECK(rows[2].result->t == doctest::Approx(1.0));
    CHECK(!rows[1].result);
    CHECK(!rows[1].error.empty());

    std::ostringstream out;
    write_welch_csv(out, rows);
    CHECK(out.str().starts_with("algo_a,algo_b,n1,n2,mean1,mean2,t,df,p,error\nA,B,5,5,3,4,-1,8,"));
}

TEST_CASE("plot data")
{
    SUBCASE("constant alpha gives a flat series")
    {
        std::vector<RunRecord> records;
        for (int i = 0; i < 10; ++i) {
            auto r = record("A", 1.0, 1.0);
            r.n = static_cast<std::size_t>(200 + 10 * i);
            records.push_back(r);
        }
        for (const auto& pt : binned_means(records, Axis::n, 5)) {
            REQUIRE(pt.alpha_mean);
            CHECK(*pt.alpha_mean == 1.0);
            CHECK(pt.count == 2);
        }
    }

    SUBCASE("histogram of {0,0,1,1} with 2 bins")
    {
        const auto h = alpha_histograms({record("A", 0), record("A", 0), record("A", 1), record("A", 1)}, 2);
        REQUIRE(h.size() == 1);
        CHECK(h[0].counts == std::vector<std::size_t>{2, 2});
        CHECK(h[0].mean == 0.5);
        CHECK(alpha_histograms({record("A", 0.5)})[0].counts.size() == 100);
    }

    SUBCASE("empty bins carry no value")
    {
        auto lo = record("A", 0.2);
        lo.k = 2;
        auto hi = record("A", 0.8);
        hi.k = 20;
        const auto series = binned_means({lo, hi}, Axis::k, 3);
        REQUIRE(series.size() == 3);
        CHECK(series[0].alpha_mean == 0.2);
        CHECK(!series[1].alpha_mean);
        CHECK(series[2].alpha_mean == 0.8);
        std::ostringstream out;
        write_series_csv(out, series);
        CHECK(out.str().find("A,1,8,14,0,,\n") != std::string::npos);
    }

    SUBCASE("binned means match a recomputation on 50 records")
    {
        std::vector<RunRecord> records;
        Rng rng(12);
        for (int i = 0; i < 50; ++i) {
            auto r = record(i % 2 ? "A" : "B", rng.uniform(), rng.uniform(), rng.uniform_open_closed());
            records.push_back(r);
        }
        double lo = 1;
        double hi = 0;
        for (const auto& r : records) {
            lo = std::min(lo, r.rho);
            hi = std::max(hi, r.rho);
        }
        const int bins = 7;
        const auto series = binned_means(records, Axis::rho, bins);
        REQUIRE(series.size() == 14);
        for (const auto& pt : series) {
            double sum = 0;
            double acd_sum = 0;
            std::size_t count = 0;
            for (const auto& r : records) {
                int b = std::min(bins - 1, static_cast<int>((r.rho - lo) / (hi - lo) * bins));
                if (r.algo == pt.algo && b == pt.bin) {
                    sum += r.alpha;
                    acd_sum += *r.acd;
                    ++count;
                }
            }
            CHECK(pt.count == count);
            if (count > 0) {
                CHECK(*pt.alpha_mean == doctest::Approx(sum / static_cast<double>(count)).epsilon(1e-12));
                CHECK(*pt.acd_mean == doctest::Approx(acd_sum / static_cast<double>(count)).epsilon(1e-12));
            }
        }
    }

    CHECK(parse_axis("rho") == Axis::rho);
    CHECK(!parse_axis("m"));
}
