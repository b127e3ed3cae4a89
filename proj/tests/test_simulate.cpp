#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "worked_codes.hpp"
#include "sumnet/codegen.hpp"
#include "sumnet/report.hpp"
#include "sumnet/simulate.hpp"

#include <random>

using namespace sumnet;

namespace {

// Counts tuples on which some terminal of the code decodes wrongly, by
// evaluating the decoders on oracle-built edge values.
std::size_t count_bad_tuples(const SumNetwork& net, const NetworkCode& code, std::vector<std::size_t>& bad_terminals) {
    const auto maps = oracle::global_maps(net, code.encoders, code.m, code.n, code.alpha);
    const std::size_t dim = code.m * net.num_sources();
    const auto p = static_cast<std::int64_t>(code.p);
    std::size_t total = 1;
    for (std::size_t k = 0; k < dim; ++k) total *= code.p;
    std::size_t bad = 0;
    bad_terminals.assign(code.decoders.size(), 0);
    std::vector<std::int64_t> x(dim, 0);
    for (std::size_t tuple = 0; tuple < total; ++tuple) {
        std::size_t rest = tuple;
        for (std::size_t k = 0; k < dim; ++k, rest /= code.p) x[k] = static_cast<std::int64_t>(rest % code.p);
        bool any = false;
        for (std::size_t t = 0; t < code.decoders.size(); ++t) {
            const Decoder& dec = code.decoders[t];
            std::vector<std::int64_t> seen;
            for (std::size_t e : dec.inputs)
                for (std::size_t row = 0; row < maps[e].rows(); ++row) {
                    std::int64_t v = 0;
                    for (std::size_t col = 0; col < dim; ++col) v += maps[e](row, col) * x[col];
                    seen.push_back(((v % p) + p) % p);
                }
            for (std::size_t l = 0; l < code.m; ++l) {
                std::int64_t got = 0, want = 0;
                for (std::size_t k = 0; k < seen.size(); ++k) got += dec.matrix(l, k) * seen[k];
                for (std::size_t s = 0; s < net.num_sources(); ++s) want += x[s * code.m + l];
                if (((got - want) % p + p) % p != 0) {
                    any = true;
                    ++bad_terminals[t];
                    break;
                }
            }
        }
        bad += any;
    }
    return bad;
}

}  // namespace

TEST_CASE("splitmix64 reference values") {
    // First two outputs of SplitMix64 seeded with 0.
    CHECK(splitmix64_mix(0x9E3779B97F4A7C15ULL) == 0xE220A8397B1DCDAFULL);
    CHECK(splitmix64_mix(0x9E3779B97F4A7C15ULL * 2) == 0x6E789E6AA1B965F4ULL);
    CHECK(message_symbol(0, 0, 0, 6, 1000003) ==
          static_cast<std::int64_t>(0xE220A8397B1DCDAFULL % 1000003));
    CHECK(message_symbol(5, 2, 3, 6, 7) ==
          static_cast<std::int64_t>(splitmix64_mix(5 + (2 * 6 + 3 + 1) * 0x9E3779B97F4A7C15ULL) % 7));
}

TEST_CASE("global maps match the oracle rebuild") {
    for (std::uint64_t p : {2, 3}) {
        const NetworkCode code = worked::table2_code(p);
        const SumNetwork net = sum_net_cons(code.matrix);
        CHECK(edge_global_maps(net, code) == oracle::global_maps(net, code.encoders, code.m, code.n, 1));
    }
    const NetworkCode lifted = alpha_lift(build_normal_code(IntMatrix{{1}, {1}}, PrimeField(2)), 2);
    const SumNetwork net2 = sum_net_cons(lifted.matrix, 2);
    CHECK(edge_global_maps(net2, lifted) == oracle::global_maps(net2, lifted.encoders, lifted.m, lifted.n, 2));
}

TEST_CASE("hand-written codes verify") {
    for (std::uint64_t p : {2, 3, 5}) {
        for (const NetworkCode& code : {worked::table1_code(p), worked::table2_code(p)}) {
            const VerifyReport r = verify_exact(sum_net_cons(code.matrix), code);
            CHECK(r.ok);
            CHECK(r.failures.empty());
            CHECK(r.trials_or_dim == code.m * (code.r() + code.c()));
        }
    }
    // The transpose code relies on 2 X_v = 0 at the degree-3 vertices, so it
    // is a GF(2) code only.
    const NetworkCode t2 = worked::table3_code(2), t3 = worked::table3_code(3);
    CHECK(verify_exact(sum_net_cons(t2.matrix), t2).ok);
    CHECK_FALSE(verify_exact(sum_net_cons(t3.matrix), t3).ok);
}

TEST_CASE("exhaustive enumeration of the K2 codes") {
    const SumNetwork net = sum_net_cons(IntMatrix{{1}, {1}});
    const VerifyReport good = exhaustive_oracle(net, worked::table1_code(2), 64);
    CHECK(good.ok);
    CHECK(good.trials_or_dim == 64);
    CHECK(good.failing_tuples == 0);
    CHECK_THROWS_AS(exhaustive_oracle(net, worked::table1_code(2), 63), std::length_error);

    const NetworkCode broken = worked::table1_corrupted(2);
    std::vector<std::size_t> per_terminal;
    const std::size_t expected = count_bad_tuples(net, broken, per_terminal);
    // Only t_B reads the zeroed symbol, so only it fails.
    CHECK(per_terminal == std::vector<std::size_t>{0, 0, 32});
    CHECK(expected == 32);
    const VerifyReport bad = exhaustive_oracle(net, broken, 64);
    CHECK_FALSE(bad.ok);
    CHECK(bad.failing_tuples == 32);
    REQUIRE(bad.failures.size() == 1);
    CHECK(bad.failures[0].terminal == 2);

    const VerifyReport exact = verify_exact(net, broken);
    CHECK_FALSE(exact.ok);
    REQUIRE(exact.failures.size() == 1);
    CHECK(exact.failures[0].terminal == 2);
    // The witness is a unit vector.
    std::size_t ones = 0;
    for (std::int64_t v : exact.failures[0].messages) ones += v == 1;
    CHECK(ones == 1);
}

TEST_CASE("random trials") {
    const NetworkCode code = worked::table2_code(3);
    const SumNetwork net = sum_net_cons(code.matrix);
    const VerifyReport r = verify_random(net, code, 50, 7);
    CHECK(r.ok);
    CHECK(r.seed == std::optional<std::uint64_t>(7));
    CHECK(r.trials_or_dim == 50);
    CHECK(render_report(verify_random(net, code, 50, 7)) == render_report(r));

    NetworkCode broken = worked::table1_corrupted(3);
    const SumNetwork k2 = sum_net_cons(broken.matrix);
    const VerifyReport b1 = verify_random(k2, broken, 40, 99);
    const VerifyReport b2 = verify_random(k2, broken, 40, 99);
    CHECK_FALSE(b1.ok);
    CHECK(b1.failing_tuples == b2.failing_tuples);
    CHECK(render_report(b1) == render_report(b2));
}

TEST_CASE("propagation rejects encoders that read absent messages") {
    NetworkCode code = worked::table1_code(2);
    // e_1's tail hears s_p1 and s_B1 but not s_p2 (columns 2, 3).
    code.encoders[0](0, 2) = 1;
    const SumNetwork net = sum_net_cons(code.matrix);
    CHECK_THROWS_AS(verify_random(net, code, 1, 1), std::logic_error);
}

TEST_CASE("dimension checks") {
    NetworkCode code = worked::table1_code(2);
    CHECK_THROWS_AS(check_dimensions(sum_net_cons(IntMatrix{{1}, {1}}, 2), code), std::invalid_argument);
    CHECK_THROWS_AS(check_dimensions(sum_net_cons(IntMatrix{{1, 1}, {1, 1}}), code), std::invalid_argument);
    code.decoders[0].inputs.push_back(100);
    CHECK_THROWS_AS(check_dimensions(sum_net_cons(code.matrix), code), std::invalid_argument);
}

TEST_CASE("property: exact verification equals enumeration and random trials are sound") {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<std::size_t> dim(1, 3);
    std::uniform_int_distribution<std::int64_t> coef(0, 2);
    std::size_t compared = 0, failed_seen = 0;
    for (int k = 0; k < 120; ++k) {
        const IntMatrix a = oracle::random_binary(rng, dim(rng), dim(rng));
        const std::uint64_t p = k % 2 ? 2 : 3;
        NetworkCode code;
        try {
            code = build_normal_code(a, PrimeField(p));
        } catch (const ConstructionError&) {
            continue;
        }
        const SumNetwork net = sum_net_cons(a);
        if (k % 3 == 0) {
            // Perturb a coefficient on the bottleneck's own point message.
            const std::size_t i = static_cast<std::size_t>(k) % code.encoders.size();
            code.encoders[i](0, i * code.m) += coef(rng) + 1;
        }
        const VerifyReport exact = verify_exact(net, code);
        if (exact.ok) CHECK(verify_random(net, code, 10, static_cast<std::uint64_t>(k)).ok);
        std::optional<VerifyReport> full;
        try {
            full = exhaustive_oracle(net, code, 1u << 16);
        } catch (const std::length_error&) {
            continue;
        }
        CHECK(full->ok == exact.ok);
        ++compared;
        failed_seen += !exact.ok;
    }
    CHECK(compared > 10);
    CHECK(failed_seen > 0);
}

TEST_CASE("report rendering") {
    const NetworkCode code = worked::table1_code(2);
    const std::string exact = render_report(verify_exact(sum_net_cons(code.matrix), code));
    CHECK(exact == "mode=exact-basis\nok=true\ndim=6\n");
    const std::string rnd = render_report(verify_random(sum_net_cons(code.matrix), code, 3, 4));
    CHECK(rnd == "mode=randomized\nok=true\ntrials=3\nseed=4\nfailing_tuples=0\n");
    CHECK(std::string(to_string(VerifyMode::Exhaustive)) == "exhaustive");
}
