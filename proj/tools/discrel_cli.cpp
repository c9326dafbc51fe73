// discrel: command-line front end.
//
// Exit codes: 0 success, 1 incompatible system (base), 2 usage or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "discrel/discrel.hpp"

using namespace discrel;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_incompatible = 1;
constexpr int exit_usage = 2;

using Attributes = std::vector<std::pair<std::string, std::string>>;

struct Globals {
    std::string format = "text";
    std::uint64_t seed = 1;

    [[nodiscard]] bool records() const { return format == "records"; }
};

std::string braces(const std::vector<std::string>& pts) {
    std::string out = "{";
    for (std::size_t i = 0; i < pts.size(); ++i) out += (i ? "," : "") + pts[i];
    return out + "}";
}

std::string spaced(const std::vector<std::string>& pts) {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) out += (i ? " " : "") + pts[i];
    return out;
}

std::string simplices_text(const std::vector<std::vector<std::string>>& simplices, bool records) {
    std::string out;
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        if (i) out += records ? "; " : " ";
        out += records ? spaced(simplices[i]) : braces(simplices[i]);
    }
    return out;
}

std::vector<Relation> load_all(const std::vector<std::string>& paths) {
    std::vector<Relation> out;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        try {
            for (auto& rec : read_relations(in)) out.push_back(std::move(rec.relation));
        } catch (const FormatError& e) {
            throw FormatError(path + ": " + e.what());
        }
    }
    return out;
}

Relation load_one(const std::string& path) {
    auto all = load_all({path});
    if (all.size() != 1)
        throw FormatError(path + ": expected exactly one record, found " + std::to_string(all.size()));
    return std::move(all.front());
}

struct AnalyzeOptions {
    bool poly = false;
    bool topology = false;
    bool all_faces = false;
};

// Shared report for `rule` and `analyze`.
void report_relation(std::ostream& out, const Relation& r, Attributes head, const AnalyzeOptions& opt,
                     const Globals& g) {
    const auto status = classify(r);
    head.emplace_back("status", std::string(to_string(status)));
    const bool informative = status != Status::empty && status != Status::trivial;
    std::vector<ConsequenceEntry> cons;
    std::optional<Relation> factor;
    std::optional<SimplicialComplex> topo;
    if (informative) {
        cons = proper_consequences(r, opt.all_faces ? FaceScope::all : FaceScope::codimension_one);
        factor = principal_factor(r, proper_consequences(r, FaceScope::codimension_one));
        if (opt.topology) topo = impose_topology(r);
    }
    std::optional<std::string> poly;
    if (opt.poly) poly = to_string(relation_to_polynomial(r));

    if (g.records()) {
        head.emplace_back("kind", "relation");
        if (topo) head.emplace_back("topology", simplices_text(topo->maximal_simplices(), true));
        if (poly) head.emplace_back("polynomial", *poly);
        write_relation(out, r, head);
        for (const auto& c : cons) {
            out << '\n';
            const Attributes a{{"kind", "consequence"}};
            write_relation(out, c.relation, a);
        }
        if (factor) {
            out << '\n';
            const Attributes a{{"kind", "principal_factor"}};
            write_relation(out, *factor, a);
        }
        return;
    }
    for (const auto& [k, v] : head) out << k << ": " << v << '\n';
    out << "points: " << spaced(r.points()) << '\n';
    out << "bits: " << r.to_string() << '\n';
    if (informative) {
        out << (opt.all_faces ? "proper consequences:" : "consequences on codimension-1 faces:");
        if (cons.empty()) out << " none";
        out << '\n';
        for (const auto& c : cons) out << "  " << braces(c.face().points()) << ": " << c.relation.to_string() << '\n';
        out << "principal factor: " << factor->to_string() << '\n';
    }
    if (topo) out << "topology: " << simplices_text(topo->maximal_simplices(), false) << '\n';
    if (poly) out << "polynomial: " << *poly << '\n';
}

int cmd_classify_all(std::ostream& out, bool expect_paper, bool list_1101, bool conjugate, const Globals& g) {
    const auto summary = classify_all_rules();
    if (g.records()) {
        for (const auto& rc : summary.rules) {
            const Attributes a{{"rule", std::to_string(rc.number)},
                               {"status", std::string(to_string(rc.status))},
                               {"topology", simplices_text(rc.maximal_simplices, true)}};
            write_relation(out, wolfram_relation(rc.number).relation, a);
            out << '\n';
        }
        out << "# reducible: " << summary.reducible << ", irreducible: " << summary.irreducible
            << ", prime: " << summary.primes.size() << '\n';
    } else {
        out << "reducible: " << summary.reducible << ", irreducible: " << summary.irreducible
            << ", prime: " << summary.primes.size() << " (";
        for (std::size_t i = 0; i < summary.primes.size(); ++i) out << (i ? ", " : "") << summary.primes[i];
        out << ")\n";
    }

    if (list_1101) {
        auto computed = rules_with_face_consequence("1101", neighbor_output_faces());
        if (conjugate) {
            auto more = rules_with_face_consequence("1011", neighbor_output_faces());
            std::vector<int> merged;
            std::set_union(computed.begin(), computed.end(), more.begin(), more.end(), std::back_inserter(merged));
            computed = std::move(merged);
        }
        const auto reported = reported_1101_rules();
        std::vector<int> missing, extra;
        std::set_difference(reported.begin(), reported.end(), computed.begin(), computed.end(),
                            std::back_inserter(missing));
        std::set_difference(computed.begin(), computed.end(), reported.begin(), reported.end(),
                            std::back_inserter(extra));
        auto join = [](const std::vector<int>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
            return s;
        };
        const char* lead = g.records() ? "# " : "";
        out << lead << "consequence " << (conjugate ? "1101 or 1011" : "1101") << " on {p,s} {q,s} {r,s}: "
            << computed.size() << " rules\n";
        out << lead << "rules: " << join(computed) << '\n';
        out << lead << "reported list: " << reported.size() << " rules\n";
        out << lead << "reported but not computed: " << (missing.empty() ? "none" : join(missing)) << '\n';
        out << lead << "computed but not reported: " << (extra.empty() ? "none" : join(extra)) << '\n';
    }

    if (expect_paper) {
        const bool match = summary.reducible == 118 && summary.irreducible == 138 &&
                           summary.primes == std::vector<int>{105, 150};
        if (!match) {
            std::cerr << "classification differs from the expected counts 118/138/2\n";
            return exit_usage;
        }
    }
    return exit_ok;
}

int cmd_life(std::ostream& out, bool decompose, bool poly, const std::vector<std::string>& symmetric,
             const Globals& g) {
    const auto life = life_relation();
    const auto cons = proper_consequences(life, FaceScope::codimension_one);
    if (g.records()) {
        const Attributes a{{"kind", "life"}, {"cardinality", std::to_string(life.cardinality())}};
        write_relation(out, life, a, BitEncoding::hex);
    } else {
        out << "points: " << spaced(life.points()) << '\n';
        out << "cardinality: " << life.cardinality() << '\n';
        out << "status: " << to_string(classify(life)) << '\n';
        out << "consequences on codimension-1 faces: " << cons.size() << '\n';
    }
    if (!symmetric.empty()) {
        const auto classes = group_by_symmetry(cons, symmetric);
        if (g.records()) {
            for (const auto& cls : classes) {
                out << '\n';
                const Attributes a{{"kind", "consequence_class"}, {"members", std::to_string(cls.size())}};
                write_relation(out, cls.front().relation, a, BitEncoding::hex);
            }
        } else {
            out << "classes under permutations of " << braces(symmetric) << ": " << classes.size() << '\n';
            for (const auto& cls : classes)
                out << "  " << cls.size() << " x " << braces(cls.front().face().points()) << '\n';
        }
    }
    if (decompose) {
        int holds = 0;
        for (int omitted = 0; omitted < 8; ++omitted) holds += life_reconstructs(life, omitted) ? 1 : 0;
        const DecompositionTree tree(life);
        const auto leaves = tree.prime_leaves();
        if (g.records()) {
            for (const auto& leaf : leaves) {
                out << '\n';
                const Attributes a{{"kind", "prime_leaf"}};
                write_relation(out, leaf->relation, a);
            }
            out << "# reconstruction: " << holds << "/8, prime leaves: " << leaves.size() << '\n';
        } else {
            out << "reconstruction from the faces without x8 and without 7 of x0..x7: "
                << (holds == 8 ? "ok" : "FAILED") << " (" << holds << "/8 choices)\n";
            out << "decomposition tree: " << tree.nodes().size() << " nodes, depth " << tree.depth() << '\n';
            out << "prime leaves: " << leaves.size() << '\n';
            for (const auto& leaf : leaves)
                out << "  " << braces(leaf->relation.points()) << ": " << leaf->relation.to_string() << '\n';
        }
    }
    if (poly) {
        const auto p = relation_to_polynomial(life);
        const auto text = symmetric.empty() ? to_string(p) : to_symmetric_string(p, symmetric);
        out << (g.records() ? "# polynomial: " : "polynomial: ") << text << '\n';
    }
    return exit_ok;
}

int cmd_base(std::ostream& out, const std::vector<std::string>& files, const Globals& g) {
    const auto rels = load_all(files);
    const auto base = base_relation(rels);
    if (g.records()) {
        const Attributes a{{"kind", "base"}, {"compatible", base.is_empty() ? "no" : "yes"}};
        write_relation(out, base, a);
    } else {
        out << (base.is_empty() ? "incompatible" : "compatible") << '\n';
        out << "points: " << spaced(base.points()) << '\n';
        out << "bits: " << base.to_string() << '\n';
    }
    return base.is_empty() ? exit_incompatible : exit_ok;
}

int cmd_project(std::ostream& out, const std::string& file, const std::string& onto, const Globals& g) {
    const auto r = load_one(file);
    const auto face = split_names(onto);
    const auto p = project(r, face);
    if (g.records()) {
        const Attributes a{{"kind", "projection"}};
        write_relation(out, p, a);
    } else {
        out << braces(p.points()) << ": " << p.to_string() << '\n';
    }
    return exit_ok;
}

std::vector<std::uint8_t> parse_row(std::string_view text) {
    std::vector<std::uint8_t> row;
    for (char c : text) {
        if (c == '0' || c == '1')
            row.push_back(static_cast<std::uint8_t>(c - '0'));
        else if (!std::isspace(static_cast<unsigned char>(c)))
            throw FormatError(std::string("row contains '") + c + "', expected 0 or 1");
    }
    return row;
}

// First non-comment line of a trajectory file.
std::vector<std::uint8_t> read_first_row(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty() || line[0] == '#') continue;
        try {
            return parse_row(line);
        } catch (const FormatError& e) {
            throw FormatError(path + ": line " + std::to_string(n) + ": " + e.what());
        }
    }
    throw FormatError(path + ": no row found");
}

struct SimulateOptions {
    int rule = 0;
    std::size_t width = 31;
    std::size_t steps = 16;
    std::string init;
    std::string init_file;
    bool check = false;
};

int cmd_simulate(std::ostream& out, const SimulateOptions& opt, const Globals& g) {
    const auto rule = wolfram_relation(opt.rule);
    std::vector<std::uint8_t> init;
    if (!opt.init.empty()) {
        init = parse_row(opt.init);
    } else if (!opt.init_file.empty()) {
        init = read_first_row(opt.init_file);
    } else {
        std::mt19937_64 rng(g.seed);
        init = random_row(opt.width, rng);
    }
    const auto traj = simulate(rule, init, opt.steps);
    out << "# rule " << opt.rule << ", width " << traj.width << ", steps " << traj.steps << '\n';
    for (const auto& row : traj.grid) {
        for (auto c : row) out << static_cast<char>('0' + c);
        out << '\n';
    }
    if (opt.check) {
        const auto cons = proper_consequences(rule.relation);
        const auto report = check_trajectory(rule, traj, cons);
        out << "# windows checked: " << report.windows_checked << ", violations: " << report.violations.size()
            << '\n';
    }
    return exit_ok;
}

int cmd_topology(std::ostream& out, const std::string& file, const Globals& g) {
    const auto r = load_one(file);
    const auto topo = impose_topology(r);
    if (g.records())
        out << "topology = " << simplices_text(topo.maximal_simplices(), true) << '\n';
    else
        out << "maximal simplices: " << simplices_text(topo.maximal_simplices(), false) << '\n';
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Set-theoretic analysis of discrete relations and cellular automata"};
    app.require_subcommand(1, 1);
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "records"}));
    app.add_option("--seed", g.seed, "Seed for random initial rows");

    int rule_n = 0;
    AnalyzeOptions aopt;
    auto* rule = app.add_subcommand("rule", "Analyze an elementary rule");
    rule->add_option("n", rule_n, "Rule number")->required()->check(CLI::Range(0, 255));
    rule->add_flag("--poly", aopt.poly, "Print the GF(2) polynomial");
    rule->add_flag("--topology", aopt.topology, "Print the imposed topology");
    rule->add_flag("--all-faces", aopt.all_faces, "List consequences on every proper face");

    std::string analyze_file;
    auto* analyze = app.add_subcommand("analyze", "Analyze a relation file");
    analyze->add_option("file", analyze_file)->required();
    analyze->add_flag("--poly", aopt.poly);
    analyze->add_flag("--topology", aopt.topology);
    analyze->add_flag("--all-faces", aopt.all_faces);

    bool expect_paper = false, list_1101 = false, conjugate = false;
    auto* classify_cmd = app.add_subcommand("classify-all", "Classify all 256 elementary rules");
    classify_cmd->add_flag("--expect-paper", expect_paper, "Exit nonzero unless counts are 118/138/2");
    classify_cmd->add_flag("--consequence-1101", list_1101, "List rules with a 1101 neighbor/output consequence");
    classify_cmd->add_flag("--up-to-conjugation", conjugate, "Also accept the conjugate table 1011");

    bool decompose = false, life_poly = false;
    std::vector<std::string> symmetric;
    std::string symmetric_text;
    auto* life = app.add_subcommand("life", "Analyze the local rule of Life");
    life->add_flag("--decompose", decompose, "Check the reconstruction and list prime leaves");
    life->add_flag("--poly", life_poly, "Print the polynomial");
    life->add_option("--symmetric", symmetric_text, "Interchangeable points, e.g. x0,x1,...,x7");

    std::vector<std::string> base_files;
    auto* base = app.add_subcommand("base", "Base relation of a system of relation files");
    base->add_option("files", base_files)->required()->check(CLI::ExistingFile);

    std::string project_file, onto;
    auto* proj = app.add_subcommand("project", "Project a relation onto a face");
    proj->add_option("file", project_file)->required()->check(CLI::ExistingFile);
    proj->add_option("--onto", onto, "Face points, comma separated")->required();

    SimulateOptions sopt;
    auto* sim = app.add_subcommand("simulate", "Simulate an elementary rule on a periodic lattice");
    sim->add_option("--rule", sopt.rule)->required()->check(CLI::Range(0, 255));
    sim->add_option("--width", sopt.width, "Width of a random initial row");
    sim->add_option("--steps", sopt.steps);
    auto* init_opt = sim->add_option("--init", sopt.init, "Initial row as 0/1 characters");
    sim->add_option("--init-file", sopt.init_file, "Trajectory file whose first row is used")
        ->check(CLI::ExistingFile)
        ->excludes(init_opt);
    sim->add_flag("--check", sopt.check, "Check every window against the rule and its consequences");

    std::string topo_file;
    auto* topo = app.add_subcommand("topology", "Maximal simplices imposed by a relation");
    topo->add_option("file", topo_file)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        auto& out = std::cout;
        if (rule->parsed()) {
            const Attributes head{{"rule", std::to_string(rule_n)}};
            report_relation(out, wolfram_relation(rule_n).relation, head, aopt, g);
            return exit_ok;
        }
        if (analyze->parsed()) {
            const Attributes head{{"file", analyze_file}};
            report_relation(out, load_one(analyze_file), head, aopt, g);
            return exit_ok;
        }
        if (classify_cmd->parsed()) return cmd_classify_all(out, expect_paper, list_1101, conjugate, g);
        if (life->parsed()) {
            if (!symmetric_text.empty()) symmetric = split_names(symmetric_text);
            return cmd_life(out, decompose, life_poly, symmetric, g);
        }
        if (base->parsed()) return cmd_base(out, base_files, g);
        if (proj->parsed()) return cmd_project(out, project_file, onto, g);
        if (sim->parsed()) return cmd_simulate(out, sopt, g);
        if (topo->parsed()) return cmd_topology(out, topo_file, g);
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
