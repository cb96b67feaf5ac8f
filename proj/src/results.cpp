#include "happycol/results.hpp"

#include <charconv>
#include <iterator>
#include <sstream>

#include <fmt/core.h>

#include "happycol/instance_io.hpp"

namespace happycol {

std::optional<Thresholds> instance_thresholds(const Instance& inst, double epsilon)
{
    const auto& gp = inst.params();
    if (!gp || !(gp->q > 0 && gp->q < gp->p && gp->p <= 1)) {
        return std::nullopt;
    }
    return thresholds(static_cast<double>(inst.n()), inst.k(), gp->p, gp->q, epsilon);
}

RunRecord make_record(std::string instance_id, std::string algo, std::uint64_t seed, const Instance& inst,
                      double rho, const EaResult& result, double epsilon)
{
    RunRecord r;
    r.instance_id = std::move(instance_id);
    r.algo = std::move(algo);
    r.seed = seed;
    r.n = inst.n();
    r.k = inst.k();
    if (const auto& gp = inst.params()) {
        r.p = gp->p;
        r.q = gp->q;
        r.pcc = gp->pcc;
    }
    r.rho = rho;
    r.thresholds = instance_thresholds(inst, epsilon);
    if (r.thresholds) {
        r.regime = classify_regime(rho, *r.thresholds);
    }
    r.alpha = result.report.alpha;
    if (result.report.has_acd) {
        r.acd = result.report.acd;
    }
    r.complete = result.report.complete;
    r.acd_exact = result.report.acd_exact;
    r.generations = result.generations;
    r.wall_ms = result.wall_ms;
    return r;
}

namespace {

std::string quote(std::string_view field)
{
    if (field.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv(std::string_view line)
{
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    return fields;
}

template <typename T>
T number(const std::string& s, const char* column)
{
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::runtime_error(fmt::format("bad {} value '{}'", column, s));
    }
    return value;
}

bool boolean(const std::string& s, const char* column)
{
    if (s == "1" || s == "true") {
        return true;
    }
    if (s == "0" || s == "false") {
        return false;
    }
    throw std::runtime_error(fmt::format("bad {} value '{}'", column, s));
}

std::string opt(const std::optional<double>& x)
{
    return x ? format_double(*x) : std::string();
}

} // namespace

std::string to_csv_row(const RunRecord& r)
{
    std::string row = fmt::format("{},{},{},{},{},{},{},{},{}", quote(r.instance_id), quote(r.algo), r.seed, r.n, r.k,
                                  format_double(r.p), format_double(r.q), r.pcc, format_double(r.rho));
    if (r.thresholds) {
        row += fmt::format(",{},{},{}", format_double(r.thresholds->mu), format_double(r.thresholds->xi),
                           format_double(r.thresholds->xi_tilde));
    } else {
        row += ",,,";
    }
    if (r.regime) {
        row += fmt::format(",{},{}", to_string(r.regime->mu), to_string(r.regime->xi));
    } else {
        row += ",,";
    }
    row += fmt::format(",{},{},{},{},{},{}", format_double(r.alpha), opt(r.acd), r.complete ? 1 : 0,
                       r.acd_exact ? 1 : 0, r.generations, format_double(r.wall_ms));
    return row;
}

RunRecord parse_csv_row(std::string_view line)
{
    const auto f = split_csv(line);
    if (f.size() != 20) {
        throw std::runtime_error(fmt::format("results row has {} fields, expected 20", f.size()));
    }
    RunRecord r;
    r.instance_id = f[0];
    r.algo = f[1];
    r.seed = number<std::uint64_t>(f[2], "seed");
    r.n = number<std::size_t>(f[3], "n");
    r.k = number<int>(f[4], "k");
    r.p = number<double>(f[5], "p");
    r.q = number<double>(f[6], "q");
    r.pcc = number<int>(f[7], "pcc");
    r.rho = number<double>(f[8], "rho");
    if (!f[9].empty()) {
        Thresholds th;
        th.mu = number<double>(f[9], "mu");
        th.xi = number<double>(f[10], "xi");
        th.xi_tilde = number<double>(f[11], "xi_tilde");
        r.thresholds = th;
    }
    if (!f[12].empty()) {
        Regime reg{};
        bool ok_mu = false;
        for (auto m : {MuRegime::below_mu, MuRegime::mu_to_xi_tilde, MuRegime::above_xi_tilde}) {
            if (f[12] == to_string(m)) {
                reg.mu = m;
                ok_mu = true;
            }
        }
        if (!ok_mu || (f[13] != "below-xi" && f[13] != "above-xi")) {
            throw std::runtime_error(fmt::format("bad regime labels '{}', '{}'", f[12], f[13]));
        }
        reg.xi = f[13] == "below-xi" ? XiRegime::below_xi : XiRegime::above_xi;
        r.regime = reg;
    }
    r.alpha = number<double>(f[14], "alpha");
    if (!f[15].empty()) {
        r.acd = number<double>(f[15], "acd");
    }
    r.complete = boolean(f[16], "complete");
    r.acd_exact = boolean(f[17], "acd_exact");
    r.generations = number<int>(f[18], "generations");
    r.wall_ms = number<double>(f[19], "wall_ms");
    return r;
}

std::vector<RunRecord> read_results(std::istream& in)
{
    std::vector<RunRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (line_no == 1 && line.starts_with("instance_id,")) {
            continue;
        }
        // A row without its newline is the remnant of an interrupted write.
        if (in.eof()) {
            try {
                records.push_back(parse_csv_row(line));
            } catch (const std::runtime_error&) {
            }
            break;
        }
        try {
            records.push_back(parse_csv_row(line));
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(fmt::format("results line {}: {}", line_no, e.what()));
        }
    }
    return records;
}

std::vector<RunRecord> read_results(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open results file '{}'", path.string()));
    }
    return read_results(in);
}

void write_results(std::ostream& out, const std::vector<RunRecord>& records)
{
    out << results_header << '\n';
    for (const auto& r : records) {
        out << to_csv_row(r) << '\n';
    }
}

ResultsWriter::ResultsWriter(const std::filesystem::path& path)
{
    bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    if (!fresh) {
        // Drop the remnant of a row cut off by an interrupted run.
        std::string content;
        {
            std::ifstream in(path, std::ios::binary);
            content.assign(std::istreambuf_iterator<char>(in), {});
        }
        bool terminate = false;
        if (content.back() != '\n') {
            const auto keep = content.rfind('\n');
            const auto tail = std::string_view(content).substr(keep == std::string::npos ? 0 : keep + 1);
            // A complete row that only lacks its newline is kept, as read_results does.
            bool whole = false;
            try {
                parse_csv_row(tail);
                whole = true;
            } catch (const std::runtime_error&) {
            }
            if (whole) {
                terminate = true;
            } else {
                std::filesystem::resize_file(path, keep == std::string::npos ? 0 : keep + 1);
                fresh = keep == std::string::npos;
            }
        }
        if (terminate) {
            out_.open(path, std::ios::app);
            out_ << '\n';
        }
    }
    if (!out_.is_open()) {
        out_.open(path, std::ios::app);
    }
    if (!out_) {
        throw std::runtime_error(fmt::format("cannot write results file '{}'", path.string()));
    }
    if (fresh) {
        out_ << results_header << '\n';
        out_.flush();
    }
}

void ResultsWriter::append(const RunRecord& record)
{
    const auto row = to_csv_row(record);
    std::lock_guard lock(mutex_);
    out_ << row << '\n';
    out_.flush();
}

} // namespace happycol
