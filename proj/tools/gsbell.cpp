// gsbell: build graph-state Bell inequalities and check their bounds.
//
// Exit codes: 0 success, 2 invalid input or failed precondition, 3 a size cap
// was exceeded.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsbell/cli.hpp"

namespace {

using namespace gsbell;
using namespace gsbell::cli;

struct GraphFlags {
    std::string file;
    std::string family;
    int n = 0;
    int rows = 0;
    int cols = 0;

    void attach(CLI::App* app) {
        app->add_option("--graph", file, "Graph file: vertex count, then one 1-based edge per line");
        app->add_option("--family", family, "Graph family: LC, RC, ST, FC or GRID");
        app->add_option("--n", n, "Vertex count for --family");
        app->add_option("--rows", rows, "GRID rows");
        app->add_option("--cols", cols, "GRID columns");
    }

    std::optional<GraphSource> source() const {
        if (file.empty() && family.empty()) return std::nullopt;
        GraphSource s;
        if (!file.empty()) s.file = file;
        if (!family.empty()) s.family = family;
        s.n = n;
        s.rows = rows;
        s.cols = cols;
        return s;
    }
};

struct SelectorFlags {
    bool theorem1 = false;
    bool ardehali = false;
    bool composite = false;
    bool blocks = false;
    bool nontrivial = false;
    std::vector<int> triangle;
    int lc4 = 0;
    int center = 0;
    std::vector<int> set;
    std::string condition;

    void attach(CLI::App* app) {
        app->add_flag("--theorem1", theorem1, "Vertex-neighbourhood operator B(i, I) (needs -i and -I)");
        app->add_flag("--ardehali", ardehali, "Ardehali-type expression on (i, I)");
        app->add_option("--triangle", triangle, "Triangle operator on three vertices a,b,c")->delimiter(',')->expected(3);
        app->add_option("--lc4", lc4, "Member 1..8 of the four-qubit cluster set");
        app->add_flag("--composite", composite, "Composite used for the family violation table");
        app->add_flag("--blocks", blocks, "Composite of greedily selected blocks");
        app->add_flag("--nontrivial", nontrivial, "Factor-two inequality for any graph with a vertex of degree >= 2");
        app->add_option("-i", center, "Centre vertex (1-based)");
        app->add_option("-I", set, "Neighbour set (1-based, comma separated)")->delimiter(',');
        app->add_option("--condition", condition, "Z outcomes to condition on, e.g. 4=+1,5=-1");
    }

    void fill(InequalityConfig& cfg) const {
        const int chosen = theorem1 + ardehali + composite + blocks + nontrivial + !triangle.empty() + (lc4 != 0);
        if (chosen != 1) throw PreconditionError("choose exactly one inequality construction");
        if (theorem1) cfg.construction = Construction::Theorem1;
        if (ardehali) cfg.construction = Construction::Ardehali;
        if (composite) cfg.construction = Construction::Composite;
        if (blocks) cfg.construction = Construction::Blocks;
        if (nontrivial) cfg.construction = Construction::Nontrivial;
        if (!triangle.empty()) {
            cfg.construction = Construction::Triangle;
            cfg.set = triangle;
        }
        if (lc4 != 0) cfg.construction = Construction::Lc4;
        if (theorem1 || ardehali) {
            if (center == 0 || set.empty()) throw PreconditionError("--theorem1 and --ardehali need -i and -I");
            cfg.center = center;
            cfg.set = set;
        }
        cfg.lc4_member = lc4;
        if (!condition.empty()) cfg.condition = parse_outcomes(condition);
    }

    bool any() const { return theorem1 || ardehali || composite || blocks || nontrivial || !triangle.empty() || lc4 != 0; }
};

int run(int argc, char** argv) {
    CLI::App app{"Two-setting Bell inequalities for graph states"};
    app.require_subcommand(1);
    unsigned workers = default_workers();
    app.add_option("--workers", workers, "Search threads (default: hardware concurrency)");

    GraphFlags ineq_graph;
    SelectorFlags ineq_sel;
    bool no_lemma1 = false;
    bool dense = false;
    auto* ineq = app.add_subcommand("inequality", "Construct an inequality and report its bounds as JSON");
    ineq_graph.attach(ineq);
    ineq_sel.attach(ineq);
    ineq->add_flag("--no-lemma1", no_lemma1, "Search Z variables too instead of pinning them to +1");
    ineq->add_flag("--dense", dense, "Add a dense spectrum cross-check (n <= 10)");
    ineq->add_option("--workers", workers, "Search threads");

    int max_n = 12;
    std::string format = "csv";
    auto* table = app.add_subcommand("table1", "Violation table for the LC, RC and ST families");
    table->add_option("--max-n", max_n, "Largest n (3..12)");
    table->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--workers", workers, "Search threads");

    auto* lc4 = app.add_subcommand("verify-lc4", "Check the four-qubit cluster-state inequality set");
    lc4->add_option("--workers", workers, "Search threads");

    GraphFlags facet_graph;
    SelectorFlags facet_sel;
    std::string pattern, expression;
    int parties = 0;
    double bound = 0.0;
    auto* facet = app.add_subcommand("facet", "Test whether an expression defines a facet of the correlation polytope");
    facet->add_option("--pattern", pattern, "mermin, ardehali or chsh")->check(CLI::IsMember({"mermin", "ardehali", "chsh"}));
    facet->add_option("--parties", parties, "Party count for --pattern");
    facet->add_option("--expression", expression, "Words over A/B, e.g. AA,AB,BA,-BB");
    auto* bound_opt = facet->add_option("--bound", bound, "Classical bound of the expression");
    facet_graph.attach(facet);
    facet_sel.attach(facet);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*ineq) {
            InequalityConfig cfg;
            cfg.graph = ineq_graph.source();
            ineq_sel.fill(cfg);
            if (!cfg.graph && cfg.construction == Construction::Lc4) cfg.graph = GraphSource{std::nullopt, "LC", 4};
            cfg.lemma1 = !no_lemma1;
            cfg.dense = dense;
            cfg.workers = workers;
            std::cout << cmd_inequality(cfg).dump(2) << "\n";
        } else if (*table) {
            std::cout << cmd_table1(max_n, format == "json" ? Format::Json : Format::Csv, workers);
        } else if (*lc4) {
            const Json report = cmd_verify_lc4(workers);
            std::cout << report.dump(2) << "\n";
            if (!report["pass"].get<bool>()) return 1;
        } else if (*facet) {
            FacetConfig cfg;
            if (!pattern.empty()) {
                cfg.pattern = pattern;
                cfg.parties = parties;
            }
            if (!expression.empty()) cfg.expression = expression;
            if (bound_opt->count() > 0) cfg.bound = bound;
            if (facet_sel.any()) {
                InequalityConfig ic;
                ic.graph = facet_graph.source();
                facet_sel.fill(ic);
                if (!ic.graph && ic.construction == Construction::Lc4) ic.graph = GraphSource{std::nullopt, "LC", 4};
                cfg.inequality = ic;
            }
            std::cout << cmd_facet(cfg).dump(2) << "\n";
        }
    } catch (const ResourceError& e) {
        std::cerr << "gsbell: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "gsbell: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
