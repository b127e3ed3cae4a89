#include "sumnet/cli.hpp"

#include "sumnet/bounds.hpp"
#include "sumnet/code_io.hpp"
#include "sumnet/codegen.hpp"
#include "sumnet/incidence.hpp"
#include "sumnet/netbuild.hpp"
#include "sumnet/report.hpp"
#include "sumnet/simulate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace sumnet {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

struct Selector {
    bool fano = false;
    bool k2 = false;
    std::string graph;
    std::size_t sts = 0;
    std::string structure;
    bool normal = false;
    bool transpose = false;
};

struct Selected {
    std::string label;
    IncidenceStructure structure;
    NetworkKind kind = NetworkKind::Normal;
};

void add_selector(CLI::App* app, Selector& s) {
    app->add_flag("--fano", s.fano, "Fano plane");
    app->add_flag("--k2", s.k2, "single edge K2");
    app->add_option("--graph", s.graph, "built-in graph (k2, triangle, fig3, fig4a, fig6) or N:u-w,u-w,...");
    app->add_option("--sts", s.sts, "Steiner triple system on V points");
    app->add_option("--structure", s.structure, "any structure reference, e.g. design:2-4-3-2 or file:PATH");
    auto* normal = app->add_flag("--normal", s.normal, "network of A (default)");
    auto* transpose = app->add_flag("--transpose", s.transpose, "network of A^T");
    normal->excludes(transpose);
}

std::string graph_ref(const std::string& name) {
    if (!name.empty() && std::isdigit(static_cast<unsigned char>(name.front()))) return "graph:" + name;
    return name;
}

Selected resolve(const Selector& s) {
    std::vector<std::string> refs;
    if (s.fano) refs.push_back("fano");
    if (s.k2) refs.push_back("k2");
    if (!s.graph.empty()) refs.push_back(graph_ref(s.graph));
    if (s.sts) refs.push_back("sts:" + std::to_string(s.sts));
    if (!s.structure.empty()) refs.push_back(s.structure);
    if (refs.size() != 1) throw UsageError("select exactly one of --fano, --k2, --graph, --sts, --structure");
    Selected out;
    out.label = refs.front();
    out.structure = parse_structure_ref(out.label);
    if (!s.graph.empty() && !out.structure.is_graph()) throw UsageError("'" + s.graph + "' is not a graph");
    out.kind = s.transpose ? NetworkKind::Transpose : NetworkKind::Normal;
    return out;
}

std::vector<PrimeField> resolve_chars(const std::vector<std::uint64_t>& chars, std::ostream& err) {
    if (chars.empty()) throw UsageError("--char needs at least one value");
    std::vector<PrimeField> fields;
    for (std::uint64_t q : chars) {
        if (q >= 2 && is_prime(q)) {
            fields.emplace_back(q);
            continue;
        }
        const PrimeField f = PrimeField::from_order(q);
        err << "note: field order " << q << " reduced to characteristic " << f.p() << '\n';
        fields.push_back(f);
    }
    return fields;
}

std::string set_text(const std::vector<std::size_t>& items, std::size_t offset = 1) {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < items.size(); ++k) os << (k ? "," : "") << items[k] + offset;
    os << '}';
    return os.str();
}

std::vector<std::size_t> shifted(const std::vector<std::size_t>& items, std::size_t offset) {
    std::vector<std::size_t> out;
    for (std::size_t x : items) out.push_back(x + offset);
    return out;
}

bool check_format(const std::string& format) {
    if (format != "text" && format != "json") throw UsageError("--format must be text or json");
    return format == "json";
}

// ---------------------------------------------------------------- structure

struct StructureOpts {
    std::string ref;
    std::size_t number = 0;
    std::string design;
    std::string path;
    bool validate = false;
    std::string format = "text";
};

void print_structure(const IncidenceStructure& I, const StructureOpts& o, std::ostream& out) {
    if (o.validate) {
        const auto params = strongest_design(I);
        if (!params) {
            out << "not a t-design for any t >= 1 (v=" << I.num_points() << ", b=" << I.num_blocks() << ")\n";
            return;
        }
        out << params->label() << ", b=" << params->num_blocks() << ", \xCF\x81=" << params->rho << '\n';
        return;
    }
    if (o.format == "text") {
        write_matrix_text(out, I);
    } else if (o.format == "blocks") {
        out << I.num_points() << ' ' << I.num_blocks() << '\n';
        for (const Block& b : I.blocks()) {
            for (std::size_t k = 0; k < b.size(); ++k) out << (k ? " " : "") << b[k] + 1;
            out << '\n';
        }
    } else if (o.format == "json") {
        json j;
        j["points"] = I.num_points();
        j["blocks"] = json::array();
        for (const Block& b : I.blocks()) j["blocks"].push_back(shifted(b, 1));
        out << j.dump() << '\n';
    } else {
        throw UsageError("--format must be text, blocks or json");
    }
}

// ---------------------------------------------------------------- bound

struct BoundOpts {
    Selector sel;
    std::vector<std::uint64_t> chars;
    std::size_t exhaustive_limit = 20;
    std::size_t max_subset = 0;
    std::string family;
    std::string format = "text";
};

struct FamilyCandidate {
    FamilyKind kind;
    IncidenceStructure source;
};

std::vector<FamilyCandidate> family_candidates(const Selected& s, const std::string& forced) {
    std::vector<FamilyCandidate> out;
    const bool tr = s.kind == NetworkKind::Transpose;
    if (s.label.rfind("higher:", 0) == 0) {
        const IncidenceStructure design = parse_structure_ref(s.label.substr(7));
        out.push_back({tr ? FamilyKind::HigherTranspose : FamilyKind::HigherNormal, design});
    } else if (s.structure.is_graph()) {
        out.push_back({tr ? FamilyKind::GraphTranspose : FamilyKind::GraphNormal, s.structure});
    } else if (tr) {
        out.push_back({FamilyKind::BibdTranspose, s.structure});
        out.push_back({FamilyKind::TDesignTranspose, s.structure});
    } else {
        out.push_back({FamilyKind::BibdNormal, s.structure});
    }
    if (forced.empty()) return out;
    const auto kind = parse_family_kind(forced);
    if (!kind) throw UsageError("unknown family '" + forced + "'");
    if (is_transpose_kind(*kind) != tr)
        throw UsageError(std::string("family ") + to_string(*kind) + " belongs to the " + (tr ? "normal" : "transpose") +
                         " network");
    for (const FamilyCandidate& c : out)
        if (c.kind == *kind) return {c};
    return {{*kind, s.structure}};
}

int cmd_bound(const BoundOpts& o, std::ostream& out, std::ostream& err) {
    const bool as_json = check_format(o.format);
    const Selected s = resolve(o.sel);
    const auto fields = resolve_chars(o.chars, err);
    const IntMatrix a = network_matrix(s.structure, s.kind);
    const auto families = family_candidates(s, o.family);
    for (const PrimeField& field : fields) {
        const BoundResult rank = rank_bound(a, field);
        Rational best = rank.bound;

        std::optional<BoundResult> subset;
        std::string refused;
        try {
            subset = subset_bound(a, field, {o.exhaustive_limit, o.max_subset});
            best = std::min(best, subset->bound);
        } catch (const ExactModeRefused& e) {
            refused = e.what();
        }

        std::vector<BoundResult> fam;
        std::vector<FamilyKind> fam_kinds;
        for (const FamilyCandidate& c : families) {
            try {
                fam.push_back(family_bound(c.source, c.kind, field));
                fam_kinds.push_back(c.kind);
                if (fam.back().applicable) best = std::min(best, fam.back().bound);
            } catch (const std::invalid_argument& e) {
                if (!o.family.empty()) throw;
            }
        }

        if (as_json) {
            json j;
            j["structure"] = s.label;
            j["kind"] = to_string(s.kind);
            j["char"] = field.p();
            j["bound"] = to_string(best);
            j["rank"] = to_string(rank.bound);
            if (subset) {
                j["subset"] = to_string(subset->bound);
                j["subset_exact"] = subset->exact;
                j["S"] = shifted(subset->subset, 1);
                j["closure"] = shifted(subset->closure, a.rows() + 1);
                j["x_S"] = subset->x_s;
            } else {
                j["subset"] = nullptr;
                j["subset_refused"] = refused;
            }
            j["families"] = json::array();
            for (std::size_t k = 0; k < fam.size(); ++k) {
                json f;
                f["family"] = to_string(fam_kinds[k]);
                f["applicable"] = fam[k].applicable;
                f["bound"] = fam[k].applicable ? json(to_string(fam[k].bound)) : json(nullptr);
                if (!fam[k].family_points.empty()) f["points"] = shifted(fam[k].family_points, 1);
                if (!fam[k].family_blocks.empty()) f["blocks"] = shifted(fam[k].family_blocks, 1);
                f["note"] = fam[k].note;
                j["families"].push_back(f);
            }
            out << j.dump() << '\n';
            continue;
        }

        out << s.label << ' ' << to_string(s.kind) << " char " << field.p() << ": bound " << to_string(best) << '\n';
        out << "  ";
        if (subset) {
            out << "subset " << to_string(subset->bound) << " (S=" << set_text(subset->subset);
            if (!subset->exact) out << ", |S| capped at " << o.max_subset << ", not exact";
            out << "), ";
        } else {
            out << "subset refused, ";
        }
        out << "rank " << to_string(rank.bound) << '\n';
        if (subset)
            out << "  closure S''=" << set_text(subset->closure, a.rows() + 1) << " (rows of M_A), x_S=" << subset->x_s
                << '\n';
        else
            out << "  " << refused << '\n';
        for (std::size_t k = 0; k < fam.size(); ++k) {
            out << "  " << to_string(fam_kinds[k]);
            if (fam[k].applicable) out << ' ' << to_string(fam[k].bound);
            if (!fam[k].family_points.empty()) out << " (P'=" << set_text(fam[k].family_points) << ", B'=" << set_text(fam[k].family_blocks) << ')';
            if (!fam[k].note.empty()) out << "; " << fam[k].note;
            out << '\n';
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------- code

struct CodeOpts {
    Selector sel;
    std::vector<std::uint64_t> chars;
    std::size_t alpha = 1;
    std::string export_path;
    std::size_t trials = 0;
    std::uint64_t seed = 1;
    std::string format = "text";
};

int cmd_code(const CodeOpts& o, std::ostream& stdout_, std::ostream& err) {
    const bool as_json = check_format(o.format);
    // With --export - the code file owns stdout and the summary moves to stderr.
    const bool code_to_stdout = o.export_path == "-";
    std::ostream& out = code_to_stdout ? err : stdout_;
    if (o.alpha == 0) throw UsageError("--alpha must be at least 1");
    const Selected s = resolve(o.sel);
    const auto fields = resolve_chars(o.chars, err);
    if (!o.export_path.empty() && fields.size() != 1) throw UsageError("--export needs exactly one --char");
    const IntMatrix a = network_matrix(s.structure, s.kind);
    const SumNetwork net = sum_net_cons(a, o.alpha);
    int status = kExitOk;
    for (const PrimeField& field : fields) {
        const std::string head = s.label + " " + to_string(s.kind) + " char " + std::to_string(field.p());
        NetworkCode code;
        try {
            code = build_best_code(s.structure, s.kind, field);
        } catch (const ConstructionError& e) {
            err << head << ": no construction applies: " << e.what() << '\n';
            if (as_json)
                out << json{{"structure", s.label}, {"kind", to_string(s.kind)}, {"char", field.p()}, {"rate", nullptr},
                            {"verified", false}, {"error", e.what()}}
                           .dump()
                    << '\n';
            status = std::max(status, kExitNoConstruction);
            continue;
        }
        if (o.alpha > 1) code = alpha_lift(code, o.alpha);
        const VerifyReport exact = verify_exact(net, code);
        std::optional<VerifyReport> random;
        if (o.trials) random = verify_random(net, code, o.trials, o.seed);
        const bool ok = exact.ok && (!random || random->ok);
        if (!ok) status = std::max(status, kExitVerifyFailed);

        if (as_json) {
            json j;
            j["structure"] = s.label;
            j["kind"] = to_string(s.kind);
            j["char"] = field.p();
            j["rate"] = code.rate_text();
            j["construction"] = code.construction;
            j["m"] = code.m;
            j["n"] = code.n;
            j["alpha"] = code.alpha;
            j["verified"] = exact.ok;
            if (random) j["random_ok"] = random->ok;
            out << j.dump() << '\n';
        } else {
            out << head << ": rate " << code.rate_text() << " (" << code.construction << "), "
                << (exact.ok ? "verified" : "FAILED verification") << '\n';
            out << "  m=" << code.m << " n=" << code.n << " alpha=" << code.alpha << " symbols/edge=" << code.symbols_per_edge()
                << '\n';
            if (random)
                out << "  random trials=" << o.trials << " seed=" << o.seed << ": "
                    << (random->ok ? "ok" : std::to_string(random->failing_tuples) + " failing") << '\n';
        }
        if (code_to_stdout) {
            write_code(stdout_, code);
        } else if (!o.export_path.empty()) {
            std::ofstream file(o.export_path);
            if (!file) throw UsageError("cannot write " + o.export_path);
            write_code(file, code);
        }
    }
    return status;
}

// ---------------------------------------------------------------- network

struct NetworkOpts {
    Selector sel;
    std::size_t alpha = 1;
    std::string export_path;
    std::string import_path;
    bool min_cuts = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int cmd_network(const NetworkOpts& o, std::ostream& out, std::ostream&) {
    if (o.alpha == 0) throw UsageError("--alpha must be at least 1");
    std::optional<SumNetwork> net;
    if (!o.import_path.empty()) {
        net = import_graph(slurp(o.import_path));
    } else {
        const Selected s = resolve(o.sel);
        net = sum_net_cons(network_matrix(s.structure, s.kind), o.alpha);
    }
    const std::string problem = check_structure(*net);
    if (o.export_path == "-") {
        out << export_graph(*net);
    } else {
        out << "network r=" << net->r() << " c=" << net->c() << " alpha=" << net->alpha() << ": nodes "
            << net->nodes().size() << ", edges " << net->edges().size() << " (expected "
            << expected_edge_count(net->matrix()) << "), structure " << (problem.empty() ? "ok" : problem) << '\n';
        if (!o.export_path.empty()) {
            std::ofstream file(o.export_path);
            if (!file) throw UsageError("cannot write " + o.export_path);
            file << export_graph(*net);
        }
    }
    if (o.min_cuts) {
        std::size_t smallest = 0;
        bool first = true;
        for (std::size_t s = 0; s < net->num_sources(); ++s)
            for (std::size_t t = 0; t < net->num_sources(); ++t) {
                const std::size_t cut = min_cut(*net, net->source(s), net->terminal(t));
                out << "min-cut " << net->node_label(net->source(s)) << " -> " << net->node_label(net->terminal(t)) << ": "
                    << cut << '\n';
                smallest = first ? cut : std::min(smallest, cut);
                first = false;
            }
        out << "smallest source-terminal cut: " << smallest << '\n';
    }
    return problem.empty() ? kExitOk : kExitUsage;
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
    std::string path;
    std::size_t trials = 0;
    std::uint64_t seed = 1;
    std::uint64_t exhaustive = 0;
};

int cmd_verify(const VerifyOpts& o, std::ostream& out, std::ostream&) {
    const NetworkCode code = read_code(slurp(o.path));
    const SumNetwork net = sum_net_cons(code.matrix, code.alpha);
    check_dimensions(net, code);
    const VerifyReport exact = verify_exact(net, code);
    out << render_report(exact);
    bool ok = exact.ok;
    if (o.trials) {
        const VerifyReport random = verify_random(net, code, o.trials, o.seed);
        out << render_report(random);
        ok = ok && random.ok;
    }
    if (o.exhaustive) {
        try {
            const VerifyReport full = exhaustive_oracle(net, code, o.exhaustive);
            out << render_report(full);
            ok = ok && full.ok;
        } catch (const std::length_error& e) {
            throw UsageError(e.what());
        }
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------- table

struct TableOpts {
    std::vector<std::size_t> vs{7, 9, 13, 15};
    std::vector<std::uint64_t> chars{2, 3, 5};
    std::string design = "2-4-3-2";
    std::vector<unsigned> ts{2, 3};
    std::string format = "text";
};

int emit_table(const std::vector<CapacityRow>& rows, const std::string& format, std::ostream& out) {
    out << (check_format(format) ? render_table_json(rows) : render_table_text(rows));
    for (const CapacityRow& row : rows)
        if (row.note.rfind("error", 0) == 0) return kExitUsage;
    return kExitOk;
}

std::vector<std::uint64_t> table_chars(const std::vector<std::uint64_t>& chars, std::ostream& err) {
    std::vector<std::uint64_t> out;
    for (const PrimeField& f : resolve_chars(chars, err)) out.push_back(f.p());
    return out;
}

std::string design_ref(const std::string& text) {
    if (text.find(':') == std::string::npos && !text.empty() && std::isdigit(static_cast<unsigned char>(text.front())))
        return "design:" + text;
    return text;
}

void add_format(CLI::App* app, std::string& format, const std::string& help = "text or json") {
    app->add_option("--format", format, help);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"sum-network capacity bounds, code construction and verification", "sumnet"};
    app.require_subcommand(1, 1);

    // structure
    StructureOpts so;
    auto* structure = app.add_subcommand("structure", "build, validate and print incidence structures");
    structure->require_subcommand(1, 1);
    auto* st_fano = structure->add_subcommand("fano", "Fano plane");
    auto* st_sts = structure->add_subcommand("sts", "Steiner triple system");
    st_sts->add_option("v", so.number, "number of points")->required();
    auto* st_graph = structure->add_subcommand("graph", "graph by name or N:u-w,...");
    st_graph->add_option("name", so.ref, "graph")->required();
    auto* st_complete = structure->add_subcommand("complete", "complete graph K_N");
    st_complete->add_option("n", so.number, "vertices")->required();
    auto* st_star = structure->add_subcommand("star-composite", "three stars joined at their centres");
    auto* st_higher = structure->add_subcommand("higher", "higher incidence structure of a design");
    st_higher->add_option("--design", so.design, "design reference, e.g. 2-4-3-2 or fano")->required();
    auto* st_transpose = structure->add_subcommand("transpose", "transpose of a structure");
    st_transpose->add_option("ref", so.ref, "structure reference")->required();
    auto* st_file = structure->add_subcommand("from-file", "matrix or block-list file");
    st_file->add_option("path", so.path, "file")->required();
    auto* st_show = structure->add_subcommand("show", "any structure reference");
    st_show->add_option("ref", so.ref, "structure reference")->required();
    for (auto* sub : {st_fano, st_sts, st_graph, st_complete, st_star, st_higher, st_transpose, st_file, st_show}) {
        sub->add_flag("--validate", so.validate, "print design parameters instead of the matrix");
        add_format(sub, so.format, "text (matrix), blocks or json");
    }

    // bound
    BoundOpts bo;
    auto* bound = app.add_subcommand("bound", "capacity upper bounds");
    add_selector(bound, bo.sel);
    bound->add_option("--char", bo.chars, "characteristics (prime powers are reduced)")->delimiter(',')->required();
    bound->add_option("--exhaustive-limit", bo.exhaustive_limit, "largest r for the full subset search");
    bound->add_option("--max-subset", bo.max_subset, "only try |S| up to this (result is not exact)");
    bound->add_option("--family", bo.family, "use only this family bound");
    add_format(bound, bo.format);

    // code
    CodeOpts co;
    auto* code = app.add_subcommand("code", "build and verify a linear network code");
    add_selector(code, co.sel);
    code->add_option("--char", co.chars, "characteristics")->delimiter(',')->required();
    code->add_option("--alpha", co.alpha, "edge multiplicity of the lifted network");
    code->add_option("--export", co.export_path, "write the code file here ('-' for stdout)");
    code->add_option("--trials", co.trials, "also run this many random trials");
    code->add_option("--seed", co.seed, "seed for random trials");
    add_format(code, co.format);

    // network
    NetworkOpts no;
    auto* network = app.add_subcommand("network", "build, export and inspect a sum-network");
    add_selector(network, no.sel);
    network->add_option("--alpha", no.alpha, "edge multiplicity");
    network->add_option("--export", no.export_path, "write DOT here ('-' for stdout)");
    network->add_option("--import", no.import_path, "read DOT written by --export");
    network->add_flag("--min-cuts", no.min_cuts, "print every source-terminal min-cut");

    // verify
    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "verify a code file");
    verify->add_option("file", vo.path, "code file")->required();
    verify->add_option("--trials", vo.trials, "random trials");
    verify->add_option("--seed", vo.seed, "seed for random trials");
    verify->add_option("--exhaustive", vo.exhaustive, "enumerate all tuples when at most this many");

    // table
    TableOpts to;
    auto* table = app.add_subcommand("table", "capacity tables");
    table->require_subcommand(1, 1);
    auto* t_all = table->add_subcommand("paper-all", "every worked example");
    auto* t_sts = table->add_subcommand("sts", "Steiner triple systems");
    t_sts->add_option("--v", to.vs, "orders")->delimiter(',');
    t_sts->add_option("--char", to.chars, "characteristics")->delimiter(',');
    auto* t_higher = table->add_subcommand("higher", "higher incidence structure of a design");
    t_higher->add_option("--design", to.design, "design reference");
    t_higher->add_option("--char", to.chars, "characteristics")->delimiter(',');
    auto* t_formula = table->add_subcommand("formula", "closed-form capacities of the large-design family");
    t_formula->add_option("--t", to.ts, "values of t")->delimiter(',');
    for (auto* sub : {t_all, t_sts, t_higher, t_formula}) add_format(sub, to.format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code_ = app.exit(e, out, err);
        return code_ == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (structure->parsed()) {
            IncidenceStructure I;
            if (st_fano->parsed()) I = fano();
            else if (st_sts->parsed()) I = steiner_triple(so.number);
            else if (st_graph->parsed()) I = parse_structure_ref(graph_ref(so.ref));
            else if (st_complete->parsed()) I = complete_graph(so.number);
            else if (st_star->parsed()) I = star_composite();
            else if (st_higher->parsed()) I = higher_incidence(parse_structure_ref(design_ref(so.design)));
            else if (st_transpose->parsed()) I = transpose(parse_structure_ref(so.ref));
            else if (st_file->parsed()) I = read_structure_file(so.path);
            else I = parse_structure_ref(so.ref);
            print_structure(I, so, out);
            return kExitOk;
        }
        if (bound->parsed()) return cmd_bound(bo, out, err);
        if (code->parsed()) return cmd_code(co, out, err);
        if (network->parsed()) return cmd_network(no, out, err);
        if (verify->parsed()) return cmd_verify(vo, out, err);
        if (table->parsed()) {
            if (t_all->parsed()) return emit_table(worked_table(), to.format, out);
            if (t_sts->parsed()) return emit_table(capacity_table(sts_scenarios(to.vs, table_chars(to.chars, err))), to.format, out);
            if (t_higher->parsed()) {
                const std::string ref = design_ref(to.design);
                return emit_table(capacity_table(higher_scenarios(ref, parse_structure_ref(ref), table_chars(to.chars, err))),
                                  to.format, out);
            }
            std::vector<CapacityRow> rows;
            for (unsigned t : to.ts) rows.push_back(formula_row(t));
            return emit_table(rows, to.format, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace sumnet
