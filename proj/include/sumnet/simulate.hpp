#pragma once

// Checking that every terminal of a sum-network decodes sum_s X_s.
//
// Random messages come from a counter-based generator so that a run is a
// pure function of the seed: coordinate j of trial t is
//   splitmix64_mix(seed + (t*D + j + 1) * 0x9E3779B97F4A7C15) mod p
// with D = m(r+c) the length of the stacked message vector and
// splitmix64_mix the standard SplitMix64 output function.

#include "sumnet/codegen.hpp"
#include "sumnet/netbuild.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sumnet {

enum class VerifyMode { ExactBasis, Randomized, Exhaustive };
const char* to_string(VerifyMode mode);

struct VerifyFailure {
    std::size_t terminal;                // 0-based terminal index
    std::vector<std::int64_t> messages;  // stacked X on which it decodes wrongly
};

struct VerifyReport {
    VerifyMode mode = VerifyMode::ExactBasis;
    bool ok = true;
    std::vector<VerifyFailure> failures;  // first witness per failing terminal
    std::size_t trials_or_dim = 0;        // basis dimension, trial count, or tuple count
    std::optional<std::uint64_t> seed;
    std::size_t failing_tuples = 0;       // randomized/exhaustive: tuples with any wrong terminal
};

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;
std::int64_t message_symbol(std::uint64_t seed, std::uint64_t trial, std::uint64_t coordinate, std::uint64_t dim,
                            std::uint64_t p) noexcept;

/// Throws std::invalid_argument when the code's r, c or alpha differ from the network's.
void check_dimensions(const SumNetwork& net, const NetworkCode& code);

/// Per-edge global maps: what each edge carries as a (alpha*n) x m(r+c) matrix over GF(p).
std::vector<IntMatrix> edge_global_maps(const SumNetwork& net, const NetworkCode& code);

/// Composes each decoder with the global maps of its inputs and compares the
/// result with [I_m | ... | I_m]. On mismatch the witness is the unit message
/// vector of the first differing column.
VerifyReport verify_exact(const SumNetwork& net, const NetworkCode& code);

/// Propagates random messages edge by edge in topological order. Each
/// bottleneck's value is computed from the messages its tail node actually
/// received; an encoder that reads anything else makes this throw
/// std::logic_error.
VerifyReport verify_random(const SumNetwork& net, const NetworkCode& code, std::size_t trials, std::uint64_t seed);

/// Every message tuple, when p^(m(r+c)) <= limit; otherwise std::length_error.
VerifyReport exhaustive_oracle(const SumNetwork& net, const NetworkCode& code, std::uint64_t limit);

/// key=value lines in a fixed order.
std::string render_report(const VerifyReport& report);

}  // namespace sumnet
