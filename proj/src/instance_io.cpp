#include "happycol/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/core.h>

namespace happycol {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(fmt::format("line {}: {}", line, what)), line_(line)
{
}

std::string format_double(double value)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return {buf, end};
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') {
            ++j;
        }
        if (j > i) {
            out.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view token, std::size_t line, const char* what)
{
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, fmt::format("invalid {} '{}'", what, token));
    }
    return value;
}

Vertex parse_vertex(std::string_view token, std::size_t n, std::size_t line)
{
    auto v = parse_number<std::uint64_t>(token, line, "vertex id");
    if (v < 1 || v > n) {
        throw ValidationError(ValidationKind::vertex_out_of_range,
                              fmt::format("line {}: vertex {} outside 1..{}", line, v, n));
    }
    return static_cast<Vertex>(v - 1);
}

struct Meta {
    std::optional<int> k;
    std::optional<double> p, q, rho;
    std::optional<int> pcc, bridges;
    std::optional<std::uint64_t> seed;
};

Meta parse_meta(const std::vector<std::string_view>& tok, std::size_t line)
{
    Meta meta;
    for (std::size_t i = 2; i < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line, fmt::format("meta field '{}' is not key=value", tok[i]));
        }
        auto key = tok[i].substr(0, eq);
        auto val = tok[i].substr(eq + 1);
        if (key == "k") {
            meta.k = parse_number<int>(val, line, "k");
        } else if (key == "p") {
            meta.p = parse_number<double>(val, line, "p");
        } else if (key == "q") {
            meta.q = parse_number<double>(val, line, "q");
        } else if (key == "pcc") {
            meta.pcc = parse_number<int>(val, line, "pcc");
        } else if (key == "seed") {
            meta.seed = parse_number<std::uint64_t>(val, line, "seed");
        } else if (key == "rho") {
            meta.rho = parse_number<double>(val, line, "rho");
        } else if (key == "bridges") {
            meta.bridges = parse_number<int>(val, line, "bridges");
        }
    }
    return meta;
}

} // namespace

Instance parse_instance(std::istream& in)
{
    std::optional<Meta> meta;
    std::map<std::uint64_t, Colour> communities; // 1-based ids, validated once n is known
    std::size_t community_line = 0;
    std::optional<std::size_t> n;
    std::size_t declared_edges = 0;
    std::vector<Edge> edges;
    std::vector<Colour> precolour;

    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto tok = split_ws(raw);
        if (tok.empty()) {
            continue;
        }
        const auto tag = tok[0];
        if (tag == "c") {
            if (tok.size() >= 2 && tok[1] == "meta") {
                if (meta) {
                    throw ParseError(line, "more than one meta line");
                }
                meta = parse_meta(tok, line);
            } else if (tok.size() >= 2 && tok[1] == "community") {
                if (tok.size() != 4) {
                    throw ParseError(line, "expected 'c community <v> <g>'");
                }
                auto v = parse_number<std::uint64_t>(tok[2], line, "vertex id");
                auto g = parse_number<Colour>(tok[3], line, "community id");
                if (!communities.emplace(v, g).second) {
                    throw ParseError(line, fmt::format("vertex {} has more than one community line", v));
                }
                community_line = line;
            }
        } else if (tag == "p") {
            if (n) {
                throw ParseError(line, "more than one problem line");
            }
            if (tok.size() != 4 || (tok[1] != "edge" && tok[1] != "edges")) {
                throw ParseError(line, "expected 'p edge <n> <m>'");
            }
            n = parse_number<std::size_t>(tok[2], line, "vertex count");
            declared_edges = parse_number<std::size_t>(tok[3], line, "edge count");
            edges.reserve(declared_edges);
            precolour.assign(*n, no_colour);
        } else if (tag == "e") {
            if (!n) {
                throw ParseError(line, "edge before problem line");
            }
            if (tok.size() != 3) {
                throw ParseError(line, "expected 'e <u> <v>'");
            }
            Vertex u = parse_vertex(tok[1], *n, line);
            Vertex v = parse_vertex(tok[2], *n, line);
            if (u == v) {
                throw ValidationError(ValidationKind::self_loop, fmt::format("line {}: self-loop at {}", line, u + 1));
            }
            edges.push_back({u, v});
        } else if (tag == "n") {
            if (!n) {
                throw ParseError(line, "precolour before problem line");
            }
            if (tok.size() != 3) {
                throw ParseError(line, "expected 'n <v> <colour>'");
            }
            Vertex v = parse_vertex(tok[1], *n, line);
            auto c = parse_number<Colour>(tok[2], line, "colour");
            if (c < 1) {
                throw ValidationError(ValidationKind::colour_out_of_range,
                                      fmt::format("line {}: colour {} is not positive", line, c));
            }
            if (precolour[v] != no_colour) {
                throw ParseError(line, fmt::format("vertex {} precoloured twice", v + 1));
            }
            precolour[v] = c;
        } else {
            throw ParseError(line, fmt::format("unknown line type '{}'", tag));
        }
    }
    if (!n) {
        throw ParseError(line, "missing problem line");
    }
    if (edges.size() != declared_edges) {
        throw ParseError(line, fmt::format("problem line declares {} edges, found {}", declared_edges, edges.size()));
    }

    std::vector<Colour> community;
    if (!communities.empty()) {
        community.assign(*n, no_colour);
        for (auto [v, g] : communities) {
            if (v < 1 || v > *n) {
                throw ValidationError(ValidationKind::vertex_out_of_range,
                                      fmt::format("line {}: community line for vertex {} outside 1..{}",
                                                  community_line, v, *n));
            }
            community[v - 1] = g;
        }
    }

    int k = 2;
    if (meta && meta->k) {
        k = *meta->k;
    } else {
        for (auto c : precolour) {
            k = std::max(k, c);
        }
        for (auto c : community) {
            k = std::max(k, c);
        }
    }

    std::optional<GeneratorParams> params;
    if (meta && (meta->p || meta->q || meta->pcc || meta->seed)) {
        GeneratorParams gp;
        gp.p = meta->p.value_or(0.0);
        gp.q = meta->q.value_or(0.0);
        gp.pcc = meta->pcc.value_or(0);
        gp.seed = meta->seed.value_or(0);
        gp.rho_suggested = meta->rho;
        gp.bridges = meta->bridges.value_or(0);
        params = gp;
    }

    return Instance(Graph(*n, edges), k, std::move(precolour), std::move(community), std::move(params));
}

Instance parse_instance(std::string_view text)
{
    std::istringstream in{std::string(text)};
    return parse_instance(in);
}

Instance read_instance(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open instance file '{}'", path.string()));
    }
    return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst)
{
    std::string meta = fmt::format("c meta k={}", inst.k());
    if (const auto& gp = inst.params()) {
        meta += fmt::format(" p={} q={} pcc={} seed={}", format_double(gp->p), format_double(gp->q), gp->pcc, gp->seed);
        if (gp->rho_suggested) {
            meta += fmt::format(" rho={}", format_double(*gp->rho_suggested));
        }
        if (gp->bridges != 0) {
            meta += fmt::format(" bridges={}", gp->bridges);
        }
    }
    out << meta << '\n';
    const auto community = inst.community();
    for (std::size_t v = 0; v < community.size(); ++v) {
        out << "c community " << v + 1 << ' ' << community[v] << '\n';
    }
    const auto& g = inst.graph();
    out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) {
        out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
    }
    const auto pre = inst.precolour();
    for (std::size_t v = 0; v < pre.size(); ++v) {
        if (pre[v] != no_colour) {
            out << "n " << v + 1 << ' ' << pre[v] << '\n';
        }
    }
}

std::string write_instance(const Instance& inst)
{
    std::ostringstream out;
    write_instance(out, inst);
    return out.str();
}

void write_instance(const std::filesystem::path& path, const Instance& inst)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write instance file '{}'", path.string()));
    }
    write_instance(out, inst);
}

std::vector<Colour> parse_colouring(std::istream& in, std::size_t n)
{
    std::vector<Colour> colours(n, no_colour);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto tok = split_ws(raw);
        if (tok.empty() || tok[0] == "c" || tok[0].starts_with('#')) {
            continue;
        }
        if (tok.size() != 2) {
            throw ParseError(line, "expected '<v> <colour>'");
        }
        Vertex v = parse_vertex(tok[0], n, line);
        auto c = parse_number<Colour>(tok[1], line, "colour");
        if (colours[v] != no_colour) {
            throw ParseError(line, fmt::format("vertex {} coloured twice", v + 1));
        }
        colours[v] = c;
    }
    return colours;
}

std::vector<Colour> read_colouring(const std::filesystem::path& path, std::size_t n)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open colouring file '{}'", path.string()));
    }
    return parse_colouring(in, n);
}

void write_colouring(std::ostream& out, std::span<const Colour> colours)
{
    for (std::size_t v = 0; v < colours.size(); ++v) {
        out << v + 1 << ' ' << colours[v] << '\n';
    }
}

} // namespace happycol
