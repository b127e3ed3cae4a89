#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sumnet/incidence.hpp"
#include "sumnet/report.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace sumnet;

TEST_CASE("Fano plane matrix") {
    // Points 1..7 down, blocks A..G across.
    const IntMatrix expected{{1, 0, 1, 1, 0, 0, 0}, {1, 0, 0, 0, 1, 0, 1}, {1, 1, 0, 0, 0, 1, 0}, {0, 1, 0, 1, 0, 0, 1},
                             {0, 1, 1, 0, 1, 0, 0}, {0, 0, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 0}};
    const IncidenceStructure f = fano();
    CHECK(f.matrix() == expected);
    const auto params = validate_design(f, 2);
    REQUIRE(params);
    CHECK(params->label() == "2-(7,3,1)");
    CHECK(params->rho == 3);
    CHECK(params->num_blocks() == 7);
}

TEST_CASE("from_blocks validation") {
    CHECK_THROWS_AS(IncidenceStructure::from_blocks(3, {{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(IncidenceStructure::from_blocks(3, {{}}), std::invalid_argument);
    CHECK_THROWS_AS(IncidenceStructure::from_blocks(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(IncidenceStructure::from_blocks(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_NOTHROW(IncidenceStructure::from_blocks(3, {{0, 1}, {1, 0}}, true));
    const IncidenceStructure s = IncidenceStructure::from_blocks(3, {{2, 0}});
    CHECK(s.blocks().front() == Block{0, 2});
    CHECK(IncidenceStructure::from_matrix(s.matrix()) == s);
}

TEST_CASE("graphs") {
    const IncidenceStructure g = from_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}});
    CHECK(g.is_graph());
    CHECK(g.point_degrees() == std::vector<std::size_t>{3, 2, 3, 2});
    CHECK(g.block_neighbourhood(0) == std::vector<std::size_t>{0, 1, 3, 4});
    CHECK_THROWS_AS(from_graph(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(from_graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    const IncidenceStructure k4 = complete_graph(4);
    CHECK(k4.num_blocks() == 6);
    CHECK(validate_design(k4, 2)->label() == "2-(4,2,1)");
    CHECK_FALSE(fano().is_graph());
}

TEST_CASE("star composite") {
    const IncidenceStructure s = star_composite();
    CHECK(s.is_graph());
    CHECK(s.num_points() == 33);
    CHECK(s.num_blocks() == 32);
    const auto deg = s.point_degrees();
    CHECK(deg[StarCompositeCentres::a] == 7);
    CHECK(deg[StarCompositeCentres::b] == 16);
    CHECK(deg[StarCompositeCentres::c] == 11);
    std::size_t leaves = 0;
    for (std::size_t d : deg) leaves += d == 1;
    CHECK(leaves == 30);
}

TEST_CASE("Steiner triple systems") {
    CHECK_THROWS_AS(steiner_triple(8), std::invalid_argument);
    CHECK_THROWS_AS(steiner_triple(5), std::invalid_argument);
    const auto p9 = validate_design(steiner_triple(9), 2);
    REQUIRE(p9);
    CHECK(p9->label() == "2-(9,3,1)");
    CHECK(p9->num_blocks() == 12);
    CHECK(p9->rho == 4);
}

TEST_CASE("property: Steiner triple systems cover every pair once") {
    for (std::size_t v : {7, 9, 13, 15, 19, 21, 25, 27, 31, 33}) {
        const IncidenceStructure s = steiner_triple(v);
        CHECK(s.num_blocks() == v * (v - 1) / 6);
        CHECK(oracle::t_subset_count(s, 2) == std::optional<std::uint64_t>(1));
        for (const Block& b : s.blocks()) CHECK(b.size() == 3);
    }
}

TEST_CASE("complete designs and strongest t") {
    const IncidenceStructure d = complete_design(4, 3);
    CHECK(d.num_blocks() == 4);
    const auto p = strongest_design(d);
    REQUIRE(p);
    CHECK(p->label() == "2-(4,3,2)");
    CHECK(p->b == std::vector<std::uint64_t>{4, 3, 2});
    CHECK(strongest_design(complete_design(6, 3))->label() == "2-(6,3,4)");
    CHECK(strongest_design(fano())->label() == "2-(7,3,1)");
    CHECK_FALSE(validate_design(from_graph(3, {{0, 1}, {1, 2}}), 1));
}

TEST_CASE("property: validate_design agrees with direct subset counts") {
    std::mt19937_64 rng(21);
    for (int k = 0; k < 60; ++k) {
        const std::size_t v = 4 + k % 4;
        std::vector<Block> blocks;
        std::uniform_int_distribution<std::size_t> pt(0, v - 1);
        const std::size_t b = std::min<std::size_t>(3 + k % 5, binomial(v, 3));
        std::set<Block> seen;
        while (blocks.size() < b) {
            std::set<std::size_t> pts;
            while (pts.size() < 3) pts.insert(pt(rng));
            Block blk(pts.begin(), pts.end());
            if (seen.insert(blk).second) blocks.push_back(blk);
        }
        const IncidenceStructure s = IncidenceStructure::from_blocks(v, blocks);
        for (std::size_t t = 1; t <= 2; ++t) {
            const auto params = validate_design(s, t);
            const auto count = oracle::t_subset_count(s, t);
            CHECK(params.has_value() == (count.has_value() && *count > 0));
            if (params) CHECK(params->lambda == *count);
        }
    }
}

TEST_CASE("higher incidence structure") {
    const IncidenceStructure h = higher_incidence(complete_design(4, 3));
    CHECK(h.num_points() == 6);
    CHECK(h.num_blocks() == 4);
    // Row {0,1} lies in blocks {0,1,2} and {0,1,3}.
    CHECK(h.matrix()(0, 0) == 1);
    CHECK(h.matrix()(0, 1) == 1);
    CHECK(h.matrix()(0, 2) == 0);
    for (std::size_t i = 0; i < 6; ++i) {
        std::size_t row = 0;
        for (std::size_t j = 0; j < 4; ++j) row += static_cast<std::size_t>(h.matrix()(i, j));
        CHECK(row == 2);
    }
    CHECK_THROWS_AS(higher_incidence(fano()), std::invalid_argument);
}

TEST_CASE("transpose") {
    const IncidenceStructure g = from_graph(3, {{0, 1}, {1, 2}});
    const IncidenceStructure t = transpose(g);
    CHECK(t.num_points() == 2);
    CHECK(t.matrix() == g.matrix().transpose());
    CHECK(transpose(t) == g);
    // Two edges that are both the only edges at their endpoints give equal blocks.
    const IncidenceStructure twin = transpose(from_graph(2, {{0, 1}}));
    CHECK(twin.num_blocks() == 2);
    CHECK_THROWS_AS(transpose(IncidenceStructure::from_blocks(3, {{0, 1}})), std::invalid_argument);
}

TEST_CASE("text formats") {
    const IncidenceStructure f = fano();
    std::ostringstream os;
    write_matrix_text(os, f);
    std::istringstream in(os.str());
    CHECK(read_matrix_text(in) == f);

    std::istringstream blocks("3 2\n1 2\n2 3\n");
    CHECK(read_block_list(blocks) == from_graph(3, {{0, 1}, {1, 2}}));

    std::istringstream bad("2 2\n10\n1\n");
    CHECK_THROWS_AS(read_matrix_text(bad), std::invalid_argument);
    std::istringstream bad_blocks("3 1\n1 4\n");
    CHECK_THROWS_AS(read_block_list(bad_blocks), std::invalid_argument);
}

TEST_CASE("bundled data files") {
    const std::string dir = SUMNET_TEST_DATA;
    const IncidenceStructure b = read_structure_file(dir + "/bibd_13_4_1.txt");
    CHECK(b == bibd_13_4_1());
    CHECK(validate_design(b, 2)->label() == "2-(13,4,1)");
    const IncidenceStructure g = read_structure_file(dir + "/fig4a_matrix.txt");
    CHECK(g.matrix() == parse_structure_ref("fig4a").matrix());
    CHECK_THROWS(read_structure_file(dir + "/missing.txt"));
}

TEST_CASE("binomial") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(4, 5) == 0);
    CHECK(binomial(30, 15) == 155117520);
}
