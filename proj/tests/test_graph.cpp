#include <doctest.h>

#include <numeric>
#include <sstream>

#include "happycol/instance_gen.hpp"
#include "happycol/instance_io.hpp"

using namespace happycol;

namespace {

const char* const minimal_text = "c meta k=2\n"
                                 "c community 1 1\n"
                                 "c community 2 1\n"
                                 "c community 3 2\n"
                                 "p edge 3 2\n"
                                 "e 1 2\n"
                                 "e 2 3\n"
                                 "n 1 1\n";

Graph triangle()
{
    const Edge e[] = {{0, 1}, {1, 2}, {0, 2}};
    return Graph(3, e);
}

template <typename F>
ValidationKind kind_of(F&& f)
{
    try {
        f();
    } catch (const ValidationError& e) {
        return e.kind();
    }
    FAIL("no ValidationError thrown");
    return ValidationKind::self_loop;
}

std::vector<Vertex> as_vector(std::span<const Vertex> s)
{
    return {s.begin(), s.end()};
}

} // namespace

TEST_CASE("neighbours")
{
    CHECK(as_vector(triangle().neighbours(0)) == std::vector<Vertex>{1, 2});

    const Edge path[] = {{0, 1}, {2, 1}};
    Graph g(3, path);
    CHECK(as_vector(g.neighbours(1)) == std::vector<Vertex>{0, 2});

    Graph isolated(2, {});
    CHECK(isolated.neighbours(1).empty());
    CHECK_THROWS_AS(isolated.neighbours(2), std::out_of_range);
}

TEST_CASE("graph invariants on random graphs")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SbmParams params;
        params.n = 60;
        params.k = 3;
        params.p = 0.3;
        params.q = 0.05;
        params.seed = seed;
        const auto inst = sample_instance(params);
        const auto& g = inst.graph();
        std::size_t degree_sum = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            degree_sum += g.degree(v);
            CHECK(g.degree(v) == g.neighbours(v).size());
            for (Vertex u : g.neighbours(v)) {
                CHECK(u != v);
                const auto back = g.neighbours(u);
                CHECK(std::find(back.begin(), back.end(), v) != back.end());
            }
        }
        CHECK(degree_sum == 2 * g.edge_count());
    }
}

TEST_CASE("graph rejects self-loops and duplicates")
{
    const Edge loop[] = {{1, 1}};
    CHECK(kind_of([&] { Graph(2, loop); }) == ValidationKind::self_loop);
    const Edge dup[] = {{0, 1}, {1, 0}};
    CHECK(kind_of([&] { Graph(2, dup); }) == ValidationKind::duplicate_edge);
    const Edge far[] = {{0, 5}};
    CHECK(kind_of([&] { Graph(2, far); }) == ValidationKind::vertex_out_of_range);
}

TEST_CASE("components")
{
    const Edge e[] = {{0, 1}, {3, 4}};
    Graph g(5, e);
    std::vector<std::uint32_t> label;
    CHECK(g.components(label) == 3);
    CHECK(label == std::vector<std::uint32_t>{0, 0, 1, 2, 2});
}

TEST_CASE("parse minimal instance")
{
    const auto inst = parse_instance(minimal_text);
    CHECK(inst.n() == 3);
    CHECK(inst.k() == 2);
    CHECK(inst.graph().edge_count() == 2);
    CHECK(as_vector(inst.graph().neighbours(1)) == std::vector<Vertex>{0, 2});
    CHECK(std::vector<Colour>(inst.precolour().begin(), inst.precolour().end()) == std::vector<Colour>{1, 0, 0});
    CHECK(std::vector<Colour>(inst.community().begin(), inst.community().end()) == std::vector<Colour>{1, 1, 2});
    CHECK(!inst.params());
    CHECK(inst.free_vertices().size() == 2);
}

TEST_CASE("write is canonical")
{
    CHECK(write_instance(parse_instance(minimal_text)) == minimal_text);

    // Shuffled input lines give the same canonical text.
    const char* shuffled = "c community 3 2\n"
                           "c some note\n"
                           "c community 1 1\n"
                           "c meta k=2\n"
                           "c community 2 1\n"
                           "p edge 3 2\n"
                           "n 1 1\n"
                           "e 3 2\n"
                           "e 1 2\n";
    CHECK(write_instance(parse_instance(shuffled)) == minimal_text);
}

TEST_CASE("no precoloured vertices means no n lines")
{
    const Edge e[] = {{0, 1}};
    Instance inst(Graph(2, e), 2, {0, 0}, {1, 2});
    const auto text = write_instance(inst);
    CHECK(text == "c meta k=2\nc community 1 1\nc community 2 2\np edge 2 1\ne 1 2\n");
}

TEST_CASE("validation kinds")
{
    auto parse = [](const char* s) { return [s] { parse_instance(s); }; };
    CHECK(kind_of(parse("c meta k=2\nc community 1 1\nc community 2 1\np edge 2 1\ne 1 2\nn 1 1\nn 2 2\n")) ==
          ValidationKind::precolour_conflict);
    CHECK(kind_of(parse("c meta k=2\np edge 2 1\ne 1 2\nn 1 3\n")) == ValidationKind::colour_out_of_range);
    CHECK(kind_of(parse("c meta k=2\nc community 1 3\nc community 2 1\np edge 2 1\ne 1 2\n")) ==
          ValidationKind::community_out_of_range);
    CHECK(kind_of(parse("c meta k=2\nc community 1 1\np edge 2 1\ne 1 2\n")) == ValidationKind::community_missing);
    CHECK(kind_of(parse("c meta k=2\nc community 1 1\nc community 2 2\np edge 2 1\ne 1 2\nn 1 2\n")) ==
          ValidationKind::precolour_community_mismatch);
    CHECK(kind_of(parse("c meta k=1\np edge 2 1\ne 1 2\n")) == ValidationKind::colour_count);
    CHECK(kind_of(parse("p edge 2 2\ne 1 2\ne 2 1\n")) == ValidationKind::duplicate_edge);
    CHECK(kind_of(parse("p edge 2 1\ne 2 2\n")) == ValidationKind::self_loop);
    CHECK(kind_of(parse("p edge 2 1\ne 1 3\n")) == ValidationKind::vertex_out_of_range);
}

TEST_CASE("parse errors carry line numbers")
{
    auto line_of = [](const char* s) -> std::size_t {
        try {
            parse_instance(s);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("c meta k=2\np edge 2 1\ne 1 x\n") == 3);
    CHECK(line_of("e 1 2\np edge 2 1\n") == 1);
    CHECK(line_of("p edge 2 1\nq 1 2\n") == 2);
    CHECK(line_of("p edge 3 2\ne 1 2\n") > 0);
    CHECK(line_of("c meta k=abc\np edge 2 0\n") == 1);
    CHECK(line_of("c meta k=2\n") > 0);
}

TEST_CASE("k is inferred without a meta line")
{
    const auto inst = parse_instance("p edge 3 1\ne 1 2\nn 3 4\n");
    CHECK(inst.k() == 4);
    CHECK(parse_instance("p edge 2 1\ne 1 2\n").k() == 2);
}

TEST_CASE("round trip over generated instances")
{
    BatchRanges ranges;
    ranges.n = {20, 80};
    ranges.k = {2, 6};
    ranges.pcc = {1, 3};
    const auto batch = sample_batch(ranges, 100, 2024);
    REQUIRE(batch.size() == 100);
    for (const auto& inst : batch) {
        const auto text = write_instance(inst);
        const auto back = parse_instance(text);
        CHECK(back == inst);
        CHECK(write_instance(back) == text);
    }
}

TEST_CASE("colouring files")
{
    std::ostringstream out;
    write_colouring(out, std::vector<Colour>{2, 1, 3});
    CHECK(out.str() == "1 2\n2 1\n3 3\n");
    std::istringstream in("c comment\n3 3\n1 2\n# other\n2 1\n");
    CHECK(parse_colouring(in, 3) == std::vector<Colour>{2, 1, 3});
    // Missing vertices stay uncoloured; check_colouring is what rejects them.
    std::istringstream missing("1 2\n");
    CHECK(parse_colouring(missing, 2) == std::vector<Colour>{2, no_colour});
    std::istringstream twice("1 2\n1 1\n");
    CHECK_THROWS_AS(parse_colouring(twice, 2), ParseError);
}

TEST_CASE("format_double round trips")
{
    for (double x : {0.1, 1.0 / 3.0, 0.0, 1e-300, 12345.678}) {
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(0.5) == "0.5");
}
