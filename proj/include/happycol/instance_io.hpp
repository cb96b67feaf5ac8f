#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "happycol/graph.hpp"

namespace happycol {

/// Syntax error in an instance or colouring file.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Reads the line-oriented instance format:
///
///     c meta k=<int> p=<float> q=<float> pcc=<int> seed=<uint64> [rho=<float>] [bridges=<int>]
///     c community <v> <g>
///     p edge <n> <m>
///     e <u> <v>
///     n <v> <c>
///
/// Vertex ids are 1-based on disk and 0-based in memory. Unknown comment
/// lines are ignored. When no `k=` is given, k is the largest colour or
/// community id seen (at least 2).
Instance parse_instance(std::istream& in);
Instance parse_instance(std::string_view text);
Instance read_instance(const std::filesystem::path& path);

/// Canonical serialisation: meta line, community lines by vertex, problem
/// line, edges sorted with u < v, precolour lines by vertex.
void write_instance(std::ostream& out, const Instance& inst);
std::string write_instance(const Instance& inst);
void write_instance(const std::filesystem::path& path, const Instance& inst);

/// Colouring files hold one `<v> <colour>` pair per line, 1-based vertices.
/// Lines starting with `c` or `#` are comments.
std::vector<Colour> parse_colouring(std::istream& in, std::size_t n);
std::vector<Colour> read_colouring(const std::filesystem::path& path, std::size_t n);
void write_colouring(std::ostream& out, std::span<const Colour> colours);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

} // namespace happycol
