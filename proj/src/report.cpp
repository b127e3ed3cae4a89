#include "sumnet/report.hpp"

#include "sumnet/netbuild.hpp"
#include "sumnet/simulate.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <regex>
#include <sstream>

namespace sumnet {

IncidenceStructure bibd_13_4_1() {
    std::vector<Block> blocks;
    for (std::size_t shift = 0; shift < 13; ++shift) {
        Block b;
        for (std::size_t d : {0, 1, 3, 9}) b.push_back((d + shift) % 13);
        blocks.push_back(std::move(b));
    }
    return IncidenceStructure::from_blocks(13, std::move(blocks));
}

namespace {

std::size_t parse_count(const std::string& text, const std::string& what) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || text.size() > 9)
        throw std::invalid_argument(what + " must be a positive integer, got '" + text + "'");
    const std::size_t v = std::stoull(text);
    if (v == 0) throw std::invalid_argument(what + " must be positive");
    return v;
}

IncidenceStructure parse_graph_ref(const std::string& body) {
    const auto colon = body.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("graph reference is graph:N:u-w,u-w,...");
    const std::size_t n = parse_count(body.substr(0, colon), "vertex count");
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::istringstream list(body.substr(colon + 1));
    std::string item;
    while (std::getline(list, item, ',')) {
        const auto dash = item.find('-');
        if (dash == std::string::npos) throw std::invalid_argument("graph edge '" + item + "' is not u-w");
        const std::size_t u = parse_count(item.substr(0, dash), "vertex"), w = parse_count(item.substr(dash + 1), "vertex");
        if (u > n || w > n) throw std::invalid_argument("graph edge '" + item + "' names a vertex above " + std::to_string(n));
        edges.emplace_back(u - 1, w - 1);
    }
    return from_graph(n, edges);
}

IncidenceStructure parse_design_ref(const std::string& body) {
    static const std::regex form(R"((\d+)-(\d+)-(\d+)-(\d+))");
    std::smatch m;
    if (!std::regex_match(body, m, form)) throw std::invalid_argument("design reference is design:t-v-k-lambda");
    const std::size_t t = std::stoull(m[1]), v = std::stoull(m[2]), k = std::stoull(m[3]), lambda = std::stoull(m[4]);
    if (t == 0 || t > k || k > v) throw std::invalid_argument("design parameters need 1 <= t <= k <= v");
    if (t == 2 && k == 3 && lambda == 1) return steiner_triple(v);
    if (t == 2 && v == 13 && k == 4 && lambda == 1) return bibd_13_4_1();
    if (lambda == binomial(v - t, k - t)) return complete_design(v, k);
    throw std::invalid_argument("no built-in " + body +
                                " design: built-ins are Steiner triple systems, 2-13-4-1 and complete designs "
                                "(lambda = C(v-t,k-t)); supply others with file:PATH");
}

}  // namespace

IncidenceStructure parse_structure_ref(const std::string& ref) {
    if (ref == "fano") return fano();
    if (ref == "k2") return from_graph(2, {{0, 1}});
    if (ref == "triangle") return from_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    if (ref == "fig3") return from_graph(6, {{0, 1}, {0, 2}, {0, 3}, {4, 5}});
    if (ref == "fig4a") return from_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}});
    if (ref == "fig6" || ref == "star-composite") return star_composite();
    if (ref == "bibd13") return bibd_13_4_1();
    const auto colon = ref.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("unknown structure '" + ref + "'");
    const std::string head = ref.substr(0, colon), body = ref.substr(colon + 1);
    if (head == "sts") return steiner_triple(parse_count(body, "Steiner system order"));
    if (head == "complete") return complete_graph(parse_count(body, "complete graph order"));
    if (head == "design") return parse_design_ref(body);
    if (head == "higher") return higher_incidence(parse_structure_ref(body));
    if (head == "transpose") return transpose(parse_structure_ref(body));
    if (head == "file") return read_structure_file(body);
    if (head == "graph") return parse_graph_ref(body);
    throw std::invalid_argument("unknown structure '" + ref + "'");
}

namespace {

std::string set_text(const std::vector<std::size_t>& items, std::size_t offset = 1) {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < items.size(); ++k) os << (k ? "," : "") << items[k] + offset;
    os << '}';
    return os.str();
}

CapacityRow evaluate(const Scenario& s) {
    CapacityRow row;
    row.structure = s.label;
    row.kind = to_string(s.kind);
    row.p = s.p;
    const PrimeField field(s.p);
    try {
        const IntMatrix a = network_matrix(s.structure, s.kind);
        std::vector<std::pair<std::string, Rational>> bounds;

        const BoundResult rank = rank_bound(a, field);
        bounds.emplace_back("rank", rank.bound);
        row.citations.push_back("rank bound " + to_string(rank.bound));
        if (a.rows() <= s.subset_limit) {
            const BoundResult sub = subset_bound(a, field, {s.subset_limit, 0});
            bounds.emplace_back("subset", sub.bound);
            row.citations.push_back("subset bound " + to_string(sub.bound) + " S=" + set_text(sub.subset));
        }
        if (s.family) {
            const BoundResult fam = family_bound(s.family_source ? *s.family_source : s.structure, *s.family, field);
            if (fam.applicable) bounds.emplace_back(to_string(*s.family), fam.bound);
            row.citations.push_back(std::string(to_string(*s.family)) + " " +
                                    (fam.applicable ? to_string(fam.bound) : std::string("inapplicable")));
        }
        const auto best = std::min_element(bounds.begin(), bounds.end(),
                                           [](const auto& x, const auto& y) { return x.second < y.second; });
        row.bound = best->second;
        row.bound_text = to_string(best->second);
        row.bound_via = best->first;

        try {
            const NetworkCode code = build_best_code(s.structure, s.kind, field);
            const VerifyReport report = verify_exact(sum_net_cons(a), code);
            row.construction = code.construction;
            if (report.ok) {
                row.rate = code.rate();
                row.rate_text = code.rate_text();
                row.citations.push_back(code.construction + " code " + code.rate_text() + " verified");
                row.matched = *row.rate == *row.bound;
                if (*row.rate > *row.bound) row.note = "rate exceeds bound";
            } else {
                row.note = code.construction + " code failed verification";
            }
        } catch (const ConstructionError& e) {
            row.bound_only = true;
            row.note = e.what();
        }
    } catch (const std::exception& e) {
        row.note = std::string("error: ") + e.what();
    }
    return row;
}

}  // namespace

std::vector<CapacityRow> capacity_table(const std::vector<Scenario>& scenarios) {
    std::vector<CapacityRow> rows;
    rows.reserve(scenarios.size());
    for (const Scenario& s : scenarios) rows.push_back(evaluate(s));
    return rows;
}

CapacityRow formula_row(unsigned t) {
    CapacityRow row;
    row.structure = "large-design family t=" + std::to_string(t);
    row.kind = "normal";
    row.bound_text = "1/" + large_design_denominator(t).str();
    row.bound_via = "formula";
    row.bound_only = true;
    row.note = "formula only; no design is constructed";
    row.citations.push_back("capacity 1/(1+t!^2 (t+1)!^(2t-1))");
    return row;
}

namespace {

Scenario make(const std::string& label, const IncidenceStructure& s, NetworkKind kind, std::uint64_t p,
              std::optional<FamilyKind> family) {
    Scenario out;
    out.label = label;
    out.structure = s;
    out.kind = kind;
    out.p = p;
    out.family = family;
    return out;
}

}  // namespace

std::vector<Scenario> sts_scenarios(const std::vector<std::size_t>& vs, const std::vector<std::uint64_t>& chars) {
    std::vector<Scenario> out;
    for (std::size_t v : vs) {
        const IncidenceStructure sts = steiner_triple(v);
        for (std::uint64_t p : chars)
            out.push_back(make("sts:" + std::to_string(v), sts, NetworkKind::Normal, p, FamilyKind::BibdNormal));
    }
    return out;
}

std::vector<Scenario> higher_scenarios(const std::string& design_ref, const IncidenceStructure& design,
                                       const std::vector<std::uint64_t>& chars) {
    const IncidenceStructure higher = higher_incidence(design);
    std::vector<Scenario> out;
    for (NetworkKind kind : {NetworkKind::Normal, NetworkKind::Transpose})
        for (std::uint64_t p : chars) {
            Scenario s = make("higher:" + design_ref, higher, kind, p,
                              kind == NetworkKind::Normal ? FamilyKind::HigherNormal : FamilyKind::HigherTranspose);
            s.family_source = design;
            out.push_back(std::move(s));
        }
    return out;
}

std::vector<Scenario> worked_scenarios() {
    using NK = NetworkKind;
    std::vector<Scenario> out;
    auto add = [&](const std::string& ref, NK kind, std::vector<std::uint64_t> chars, std::optional<FamilyKind> fam) {
        const IncidenceStructure s = parse_structure_ref(ref);
        for (std::uint64_t p : chars) out.push_back(make(ref, s, kind, p, fam));
    };
    add("fano", NK::Normal, {2, 3}, FamilyKind::BibdNormal);
    add("k2", NK::Normal, {2, 3, 5}, FamilyKind::GraphNormal);
    add("triangle", NK::Normal, {2, 3}, FamilyKind::GraphNormal);
    add("fig4a", NK::Normal, {2, 3}, FamilyKind::GraphNormal);
    add("fig3", NK::Transpose, {3}, FamilyKind::GraphTranspose);
    add("fig4a", NK::Transpose, {2, 3}, FamilyKind::GraphTranspose);
    add("fig6", NK::Transpose, {2, 3, 5}, FamilyKind::GraphTranspose);
    for (const Scenario& s : sts_scenarios({7, 9, 13, 15}, {2, 3, 5})) out.push_back(s);
    add("bibd13", NK::Normal, {2, 3}, FamilyKind::BibdNormal);
    add("bibd13", NK::Transpose, {2, 3}, FamilyKind::BibdTranspose);
    for (const Scenario& s : higher_scenarios("design:2-4-3-2", parse_structure_ref("design:2-4-3-2"), {2, 3}))
        out.push_back(s);
    add("design:2-4-3-2", NK::Transpose, {3, 5}, FamilyKind::TDesignTranspose);
    return out;
}

std::vector<CapacityRow> worked_table() {
    std::vector<CapacityRow> rows = capacity_table(worked_scenarios());
    rows.push_back(formula_row(2));
    rows.push_back(formula_row(3));
    return rows;
}

namespace {

std::string status_of(const CapacityRow& row) {
    if (row.matched) return "matched";
    if (row.bound_only) return "bound only";
    if (row.note.rfind("error", 0) == 0) return "error";
    return row.rate ? "gap" : "unverified";
}

}  // namespace

std::string render_table_text(const std::vector<CapacityRow>& rows) {
    const std::vector<std::string> header{"structure", "kind", "char", "bound", "via", "rate", "construction", "status"};
    std::vector<std::vector<std::string>> cells{header};
    for (const CapacityRow& row : rows)
        cells.push_back({row.structure, row.kind, row.p ? std::to_string(row.p) : "-", row.bound_text.empty() ? "-" : row.bound_text,
                         row.bound_via.empty() ? "-" : row.bound_via, row.rate ? row.rate_text : "-",
                         row.construction.empty() ? "-" : row.construction, status_of(row)});
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& line : cells)
        for (std::size_t k = 0; k < line.size(); ++k) width[k] = std::max(width[k], line[k].size());
    std::ostringstream os;
    for (const auto& line : cells) {
        for (std::size_t k = 0; k < line.size(); ++k) {
            os << line[k];
            if (k + 1 < line.size()) os << std::string(width[k] - line[k].size() + 2, ' ');
        }
        os << '\n';
    }
    return os.str();
}

std::string render_table_json(const std::vector<CapacityRow>& rows) {
    std::ostringstream os;
    for (const CapacityRow& row : rows) {
        nlohmann::ordered_json j;
        j["structure"] = row.structure;
        j["kind"] = row.kind;
        j["char"] = row.p;
        j["bound"] = row.bound_text;
        j["rate"] = row.rate ? nlohmann::ordered_json(row.rate_text) : nlohmann::ordered_json(nullptr);
        j["matched"] = row.matched;
        j["citations"] = row.citations;
        j["note"] = row.note;
        os << j.dump() << '\n';
    }
    return os.str();
}

}  // namespace sumnet
