#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sumnet/bounds.hpp"
#include "sumnet/report.hpp"

#include <random>

using namespace sumnet;

namespace {
Rational q(long long n, long long d) { return Rational(n, d); }
}  // namespace

TEST_CASE("rational text") {
    CHECK(to_string(q(4, 6)) == "2/3");
    CHECK(to_string(q(3, 3)) == "1");
    CHECK(to_string(q(1, 865)) == "1/865");
}

TEST_CASE("sharp product") {
    const IntMatrix a{{1, 1, 0}, {0, 1, 1}};
    CHECK(sharp_product(a.transpose(), a) == IntMatrix{{1, 1, 0}, {1, 1, 1}, {0, 1, 1}});
    CHECK(sharp_residual(a) == IntMatrix{{0, 0, 0}, {0, -1, 0}, {0, 0, 0}});
}

TEST_CASE("M_A of the fig3 transpose network as printed") {
    const IntMatrix a = parse_structure_ref("fig3").matrix().transpose();
    const IntMatrix printed{
        {1, 0, 0, 0, 1, 1, 0, 0, 0, 0}, {0, 1, 0, 0, 1, 0, 1, 0, 0, 0}, {0, 0, 1, 0, 1, 0, 0, 1, 0, 0},
        {0, 0, 0, 1, 0, 0, 0, 0, 1, 1}, {1, 1, 1, 0, 1, 1, 1, 1, 0, 0}, {1, 0, 0, 0, 1, 1, 0, 0, 0, 0},
        {0, 1, 0, 0, 1, 0, 1, 0, 0, 0}, {0, 0, 1, 0, 1, 0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0, 0, 0, 1, 1},
        {0, 0, 0, 1, 0, 0, 0, 0, 1, 1}};
    CHECK(build_MA(a) == printed);
    CHECK(rank_mod_p(printed, PrimeField(3)) == 5);
    const std::vector<std::size_t> s{0, 1, 2};
    CHECK(closure_columns(a, s) == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(subset_rank(a, PrimeField(3), s) == 4);
}

TEST_CASE("M_A of the Fano plane is singular mod 2") {
    const IntMatrix m = build_MA(fano().matrix());
    CHECK(rank_mod_p(m, PrimeField(2)) == 7);
    CHECK(rank_mod_p(m, PrimeField(3)) == 14);
    // Frozen after checking against oracle::det_fractions.
    CHECK(det_exact(m) == oracle::det_fractions(m));
    CHECK(det_exact(m) == -128);
}

TEST_CASE("property: build_MA matches the direct construction") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::size_t> dim(1, 7);
    for (int k = 0; k < 200; ++k) {
        const IntMatrix a = oracle::random_binary(rng, dim(rng), dim(rng));
        CHECK(build_MA(a) == oracle::ma_direct(a));
    }
}

TEST_CASE("rank bounds of the worked examples") {
    for (std::uint64_t p : {2, 3, 5}) CHECK(rank_bound(IntMatrix{{1}, {1}}, PrimeField(p)).bound == q(2, 3));
    const IntMatrix fig4a = parse_structure_ref("fig4a").matrix();
    for (std::uint64_t p : {2, 3, 5, 7}) CHECK(rank_bound(fig4a, PrimeField(p)).bound == q(4, 9));
    CHECK(rank_bound(fig4a.transpose(), PrimeField(3)).bound == q(5, 9));
    const BoundResult f = rank_bound(fano().matrix(), PrimeField(2));
    CHECK(f.bound == q(1, 1));
    CHECK(f.rank_t == 0);
    CHECK(rank_bound(fano().matrix(), PrimeField(3)).bound == q(1, 2));
}

TEST_CASE("subset bound of fig3 transpose") {
    const IntMatrix a = parse_structure_ref("fig3").matrix().transpose();
    const BoundResult s = subset_bound(a, PrimeField(3));
    CHECK(s.bound == q(3, 4));
    CHECK(s.subset == std::vector<std::size_t>{0, 1, 2});
    CHECK(s.closure == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(s.x_s == 4);
    CHECK(s.exact);
}

TEST_CASE("fig4a transpose at char 2: the subset bound reaches 4/6") {
    const IntMatrix a = parse_structure_ref("fig4a").matrix().transpose();
    CHECK(subset_bound(a, PrimeField(2)).bound == q(4, 6));
    CHECK(rank_bound(a, PrimeField(2)).bound > q(4, 6));
}

TEST_CASE("property: subset bound agrees with the direct M_A route") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    const std::uint64_t chars[] = {2, 3, 5};
    for (int k = 0; k < 150; ++k) {
        const IntMatrix a = oracle::random_binary(rng, dim(rng), dim(rng), k % 2 ? 0.35 : 0.6);
        const std::uint64_t p = chars[k % 3];
        const PrimeField f(p);
        const BoundResult fast = subset_bound(a, f);
        const oracle::SubsetWitness direct = oracle::subset_bound_direct(a, p);
        CHECK(fast.bound == direct.bound);
        CHECK(fast.subset == direct.subset);
        CHECK(fast.x_s == oracle::subset_rank_direct(a, p, fast.subset));
        CHECK(fast.bound <= rank_bound(a, f).bound);
        CHECK(subset_rank(a, f, fast.subset) == fast.x_s);
    }
}

TEST_CASE("exhaustive limit and capped search") {
    const IntMatrix a = steiner_triple(7).matrix().transpose();
    CHECK(subset_bound(a, PrimeField(3), {7, 0}).exact);
    CHECK_THROWS_AS(subset_bound(a, PrimeField(3), {6, 0}), ExactModeRefused);
    const BoundResult capped = subset_bound(a, PrimeField(3), {6, 2});
    CHECK_FALSE(capped.exact);
    CHECK(capped.bound >= subset_bound(a, PrimeField(3)).bound);
    const IntMatrix star = star_composite().matrix().transpose();
    CHECK_THROWS_AS(subset_bound(star, PrimeField(2)), ExactModeRefused);
    CHECK(subset_bound(star, PrimeField(2), {20, 1}).bound <= rank_bound(star, PrimeField(2)).bound);
}

TEST_CASE("graph family bounds") {
    const IncidenceStructure g = parse_structure_ref("fig4a");
    CHECK(family_bound(g, FamilyKind::GraphNormal, PrimeField(5)).bound == q(4, 9));
    const BoundResult t2 = family_bound(g, FamilyKind::GraphTranspose, PrimeField(2));
    CHECK(t2.bound == q(4, 6));
    CHECK(t2.family_points == std::vector<std::size_t>{1, 3});
    CHECK(t2.family_blocks == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(family_bound(g, FamilyKind::GraphTranspose, PrimeField(3)).bound == q(5, 9));
    // Leaves have deg-1 = 0 and never enter P'.
    const BoundResult k2 = family_bound(parse_structure_ref("k2"), FamilyKind::GraphTranspose, PrimeField(2));
    CHECK(k2.family_points.empty());
    CHECK_FALSE(k2.applicable);
    const BoundResult path = family_bound(from_graph(3, {{0, 1}, {0, 2}}), FamilyKind::GraphTranspose, PrimeField(2));
    CHECK(path.family_points == std::vector<std::size_t>{0});
    CHECK(path.bound == q(2, 3));
    const IncidenceStructure star3 = from_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK_FALSE(family_bound(star3, FamilyKind::GraphTranspose, PrimeField(2)).applicable);
    CHECK(family_bound(star3, FamilyKind::GraphTranspose, PrimeField(3)).bound == q(3, 4));
    CHECK_THROWS_AS(family_bound(fano(), FamilyKind::GraphNormal, PrimeField(2)), std::invalid_argument);
}

TEST_CASE("star composite family bounds") {
    const IncidenceStructure s = star_composite();
    const BoundResult b2 = family_bound(s, FamilyKind::GraphTranspose, PrimeField(2));
    CHECK(b2.bound == q(16, 17));
    CHECK(b2.family_points == std::vector<std::size_t>{StarCompositeCentres::b});
    const BoundResult b3 = family_bound(s, FamilyKind::GraphTranspose, PrimeField(3));
    CHECK(b3.bound == q(11, 12));
    CHECK(b3.family_points == std::vector<std::size_t>{StarCompositeCentres::c});
    const BoundResult b5 = family_bound(s, FamilyKind::GraphTranspose, PrimeField(5));
    CHECK(b5.bound == q(7, 8));
    CHECK(b5.family_points == std::vector<std::size_t>{StarCompositeCentres::a});
}

TEST_CASE("design family bounds") {
    const PrimeField f2(2), f3(3);
    CHECK_FALSE(family_bound(fano(), FamilyKind::BibdNormal, f2).applicable);
    CHECK(family_bound(fano(), FamilyKind::BibdNormal, f3).bound == q(7, 14));
    for (std::size_t v : {9, 13, 15}) {
        const BoundResult b = family_bound(steiner_triple(v), FamilyKind::BibdNormal, PrimeField(5));
        CHECK(b.bound == Rational(6, static_cast<long long>(5 + v)));
    }
    // 2-(13,4,1): k-1 = 3 and (v-k)/(k-1) = 3.
    const IncidenceStructure b13 = bibd_13_4_1();
    CHECK(family_bound(b13, FamilyKind::BibdNormal, f2).bound == q(1, 2));
    CHECK_FALSE(family_bound(b13, FamilyKind::BibdNormal, f3).applicable);
    CHECK(family_bound(b13, FamilyKind::BibdTranspose, f2).bound == q(1, 2));
    CHECK_FALSE(family_bound(b13, FamilyKind::BibdTranspose, f3).applicable);
    CHECK_THROWS_AS(family_bound(complete_design(4, 3), FamilyKind::BibdNormal, f3), std::invalid_argument);
}

TEST_CASE("t-design transpose condition") {
    // 2-(4,3,2): rho=3, b2=2, so [rho-b2+v(b2-1)](rho-b2)^(v-1) = 5.
    const IncidenceStructure d = complete_design(4, 3);
    CHECK(family_bound(d, FamilyKind::TDesignTranspose, PrimeField(3)).bound == q(1, 2));
    CHECK(family_bound(d, FamilyKind::TDesignTranspose, PrimeField(2)).applicable);
    CHECK_FALSE(family_bound(d, FamilyKind::TDesignTranspose, PrimeField(5)).applicable);
}

TEST_CASE("higher incidence family bounds") {
    const IncidenceStructure d = complete_design(4, 3);
    CHECK_FALSE(family_bound(d, FamilyKind::HigherNormal, PrimeField(2)).applicable);
    CHECK(family_bound(d, FamilyKind::HigherNormal, PrimeField(3)).bound == q(3, 5));
    for (std::uint64_t p : {2, 3, 5, 7}) CHECK(family_bound(d, FamilyKind::HigherTranspose, PrimeField(p)).bound == q(2, 5));
    const IntMatrix h = higher_incidence(d).matrix();
    CHECK(rank_bound(h, PrimeField(3)).bound == q(3, 5));
    CHECK(rank_bound(h.transpose(), PrimeField(3)).bound == q(2, 5));
    CHECK_THROWS_AS(family_bound(fano(), FamilyKind::HigherNormal, PrimeField(3)), std::invalid_argument);
}

TEST_CASE("family kind names") {
    for (FamilyKind k : {FamilyKind::GraphNormal, FamilyKind::GraphTranspose, FamilyKind::BibdNormal,
                         FamilyKind::BibdTranspose, FamilyKind::TDesignTranspose, FamilyKind::HigherNormal,
                         FamilyKind::HigherTranspose})
        CHECK(parse_family_kind(to_string(k)) == k);
    CHECK_FALSE(parse_family_kind("nonsense"));
    CHECK(is_transpose_kind(FamilyKind::HigherTranspose));
    CHECK_FALSE(is_transpose_kind(FamilyKind::BibdNormal));
}

TEST_CASE("large-design denominators") {
    CHECK(large_design_denominator(1) == 3);
    CHECK(large_design_denominator(2) == 865);
    CHECK(large_design_denominator(3) == 286654465);
    CHECK_THROWS(large_design_denominator(0));
}
