#pragma once

// Capacity tables: for each (structure, network kind, characteristic) the
// smallest available upper bound next to the rate of a verified code.

#include "sumnet/bounds.hpp"
#include "sumnet/codegen.hpp"
#include "sumnet/incidence.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sumnet {

/// Built-in instances: fano, k2, triangle, fig3, fig4a, fig6 (alias
/// star-composite), bibd13; parameterised forms sts:V, complete:N,
/// design:t-v-k-lambda, higher:REF, transpose:REF, file:PATH and
/// graph:N:u-w,u-w,... with 1-based vertices.
IncidenceStructure parse_structure_ref(const std::string& ref);

/// The 2-(13,4,1) design developed from the difference set {0,1,3,9} mod 13.
IncidenceStructure bibd_13_4_1();

struct Scenario {
    std::string label;
    IncidenceStructure structure;
    NetworkKind kind = NetworkKind::Normal;
    std::uint64_t p = 2;
    std::optional<FamilyKind> family;
    /// Structure handed to family_bound when it differs from `structure`
    /// (the underlying design of a higher incidence structure).
    std::optional<IncidenceStructure> family_source;
    /// Subset bound is computed only when r is at most this.
    std::size_t subset_limit = 16;
};

struct CapacityRow {
    std::string structure;
    std::string kind;
    std::uint64_t p = 0;
    std::optional<Rational> bound;
    std::string bound_text;
    std::string bound_via;
    std::optional<Rational> rate;  // present only for a verified code
    std::string rate_text;
    std::string construction;
    bool matched = false;
    bool bound_only = false;
    std::string note;
    std::vector<std::string> citations;
};

std::vector<CapacityRow> capacity_table(const std::vector<Scenario>& scenarios);

/// Capacity 1/(1 + t!^2 (t+1)!^(2t-1)) of the large-design family; bound only.
CapacityRow formula_row(unsigned t);

std::vector<Scenario> worked_scenarios();
std::vector<CapacityRow> worked_table();
std::vector<Scenario> sts_scenarios(const std::vector<std::size_t>& vs, const std::vector<std::uint64_t>& chars);
/// Normal and transpose networks of the higher incidence structure of `design`.
std::vector<Scenario> higher_scenarios(const std::string& design_ref, const IncidenceStructure& design,
                                       const std::vector<std::uint64_t>& chars);

std::string render_table_text(const std::vector<CapacityRow>& rows);
/// One JSON object per line with keys structure, kind, char, bound, rate,
/// matched, citations, note in that order.
std::string render_table_json(const std::vector<CapacityRow>& rows);

}  // namespace sumnet
