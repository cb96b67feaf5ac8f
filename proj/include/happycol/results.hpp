#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "happycol/evolutionary.hpp"
#include "happycol/metrics.hpp"

namespace happycol {

/// One algorithm x instance outcome, one row of the results CSV.
struct RunRecord {
    std::string instance_id;
    std::string algo;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    int k = 0;
    // Generator parameters; zero when the instance carries none.
    double p = 0.0;
    double q = 0.0;
    int pcc = 0;
    double rho = 0.0;
    /// Absent when the instance has no (p, q) to derive thresholds from.
    std::optional<Thresholds> thresholds;
    std::optional<Regime> regime;
    double alpha = 0.0;
    /// Absent when the instance has no ground-truth communities.
    std::optional<double> acd;
    bool complete = false;
    bool acd_exact = false;
    int generations = 0;
    double wall_ms = 0.0;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline constexpr std::string_view results_header =
    "instance_id,algo,seed,n,k,p,q,pcc,rho,mu,xi,xi_tilde,regime_mu_xitilde,regime_xi,alpha,acd,complete,"
    "acd_exact,generations,wall_ms";

/// Thresholds for an instance, or nullopt when it has no usable (p, q).
std::optional<Thresholds> instance_thresholds(const Instance& inst, double epsilon = default_epsilon);

RunRecord make_record(std::string instance_id, std::string algo, std::uint64_t seed, const Instance& inst,
                      double rho, const EaResult& result, double epsilon = default_epsilon);

std::string to_csv_row(const RunRecord& r);
/// Throws std::runtime_error on malformed rows.
RunRecord parse_csv_row(std::string_view line);

std::vector<RunRecord> read_results(std::istream& in);
std::vector<RunRecord> read_results(const std::filesystem::path& path);
void write_results(std::ostream& out, const std::vector<RunRecord>& records);

/// Append-only results file. Writes the header when the file is new and
/// flushes after each record, so an interrupted campaign leaves only whole
/// rows behind. append() is safe to call from several threads.
class ResultsWriter {
public:
    explicit ResultsWriter(const std::filesystem::path& path);
    void append(const RunRecord& record);

private:
    std::mutex mutex_;
    std::ofstream out_;
};

} // namespace happycol
