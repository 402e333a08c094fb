#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "optin/blossom.hpp"
#include "optin/decomposition.hpp"
#include "optin/errors.hpp"
#include "optin/experiments.hpp"
#include "optin/generators.hpp"
#include "optin/mechanisms.hpp"
#include "optin/ownership.hpp"
#include "optin/solver.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolverLimit = 3;

optin::Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw optin::ValidationError(fmt::format("cannot open '{}'", path));
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return optin::parse_graph(text.str());
    } catch (const optin::ParseError& e) {
        throw optin::ValidationError(fmt::format("{}: {}", path, e.what()));
    }
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw optin::ValidationError(fmt::format("cannot write '{}'", path));
    out << content;
}

std::string cycle_line(const optin::Cycle& c) {
    std::string line = "cycle";
    for (const optin::Vertex v : c.vertices()) line += fmt::format(" {}", v);
    return line;
}

optin::PlayerProfile make_profile(const std::string& probs, std::size_t players) {
    if (!probs.empty() && players != 0) {
        throw optin::ValidationError("give either --probs or --players, not both");
    }
    if (!probs.empty()) return optin::PlayerProfile::parse(probs);
    return optin::PlayerProfile::uniform(players == 0 ? 2 : players);
}

struct SourceArgs {
    std::string graph;
    std::string instance;
    std::size_t n = 0;
    std::size_t copies = 1;
};

void add_source_options(CLI::App* cmd, SourceArgs& src, bool allow_instance) {
    auto* g = cmd->add_option("--graph", src.graph, "graph file");
    if (allow_instance) {
        auto* i = cmd->add_option("--instance", src.instance, "generated instance name");
        g->excludes(i);
        cmd->add_option("--n", src.n, "size parameter for sized instances");
        cmd->add_option("--copies", src.copies, "disjoint copies of the instance");
    } else {
        g->required();
    }
}

// Loads the graph; returns the instance's own cap when one is named.
optin::NamedInstance resolve_source(const SourceArgs& src) {
    if (!src.instance.empty()) return optin::make_instance(src.instance, src.n, src.copies);
    if (src.graph.empty()) throw optin::ValidationError("one of --graph or --instance is required");
    optin::NamedInstance inst;
    inst.name = src.graph;
    inst.graph = load_graph(src.graph);
    if (src.copies > 1) inst.graph = optin::replicate(inst.graph, src.copies);
    return inst;
}

int cmd_solve(const SourceArgs& src, std::size_t cap, std::uint64_t node_limit, bool chain) {
    const optin::NamedInstance inst = resolve_source(src);
    if (chain) {
        const optin::Chain c = optin::longest_chain_dag(inst.graph);
        std::string line = "chain";
        for (const optin::Vertex v : c.vertices) line += fmt::format(" {}", v);
        std::cout << fmt::format("length {}\n{}\n", c.length(), line);
        return 0;
    }
    optin::SolveOptions opts;
    opts.cycle_cap = cap;
    opts.node_limit = node_limit;
    const optin::Matching m = optin::max_cycle_cover(inst.graph, opts);
    std::cout << fmt::format("matched {}\ncycles {}\n", m.size(), m.cycles().size());
    for (const optin::Cycle& c : m.cycles()) std::cout << cycle_line(c) << '\n';
    return 0;
}

std::string vertex_list(const std::vector<optin::Vertex>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) out += fmt::format("{}{}", i ? " " : "", vs[i]);
    return out;
}

int cmd_decompose(const SourceArgs& src) {
    const optin::NamedInstance inst = resolve_source(src);
    const optin::UndirectedGraph ug = optin::to_undirected(inst.graph);
    const optin::EGDecomposition eg = optin::edmonds_gallai(ug);
    const optin::EdgePartition parts = optin::build_partition(ug, eg);
    const optin::Claim1Report claim = optin::verify_claim1(ug, parts);

    std::cout << fmt::format("vertices {}\nedges {}\nnu {}\n", ug.vertex_count(), ug.edge_count(),
                             optin::matching_number(ug));
    std::cout << fmt::format("A {}\nC {}\nD {}\n", vertex_list(eg.a), vertex_list(eg.c),
                             vertex_list(eg.d));
    for (const auto& comp : eg.d_components) {
        std::cout << fmt::format("d_component {}\n", vertex_list(comp));
    }
    std::cout << "part,kind,anchor,vertices,edges,opt\n";
    for (std::size_t i = 0; i < parts.parts.size(); ++i) {
        const optin::Part& p = parts.parts[i];
        std::cout << fmt::format("{},{},{},{},{},{}\n", i + 1, optin::to_string(p.kind), p.anchor,
                                 p.vertices.size(), p.edges.size(), claim.part_sizes[i]);
    }
    std::cout << fmt::format("claim1 {} {} {}\n", claim.lhs, claim.rhs,
                             claim.holds() ? "holds" : "violates");
    return 0;
}

int cmd_generate(const std::string& name, std::size_t n, std::size_t copies,
                 const std::string& out) {
    const optin::NamedInstance inst = optin::make_instance(name, n, copies);
    std::string text = fmt::format("# {}: {}\n# cap {} known_opt {}\n", inst.name, inst.notes,
                                   inst.cycle_cap, inst.known_opt);
    text += optin::serialize_graph(inst.graph);
    write_output(out, text);
    return 0;
}

int cmd_mechanism(const std::string& which, const SourceArgs& src, std::size_t cap,
                  const optin::PlayerProfile& profile, std::uint64_t seed, std::uint64_t trial,
                  std::uint64_t node_limit) {
    const optin::NamedInstance inst = resolve_source(src);
    const optin::OwnershipAssignment a = optin::sample_ownership(inst.graph, profile, seed, trial);
    std::cout << "owners";
    for (const std::uint32_t o : a.owner) std::cout << ' ' << o + 1;
    std::cout << '\n';

    if (which == "augment") {
        const optin::Matching m = optin::augment_mechanism(inst.graph, a);
        std::cout << fmt::format("matched {}\n", m.size());
        for (const optin::Cycle& c : m.cycles()) std::cout << cycle_line(c) << '\n';
        return 0;
    }
    optin::SolveOptions opts;
    opts.cycle_cap = cap;
    opts.node_limit = node_limit;
    const optin::MechanismOutcome out = optin::veto_mechanism(inst.graph, a, opts);
    std::cout << fmt::format("accepted {}\nmatched {}\n", out.accepted ? 1 : 0,
                             out.final_matching.size());
    std::cout << "player,internal_opt,share,gap,final_allocation\n";
    for (std::size_t i = 0; i < out.per_player.size(); ++i) {
        const optin::PlayerOutcome& po = out.per_player[i];
        std::cout << fmt::format("{},{},{},{},{}\n", i + 1, po.internal_opt, po.share,
                                 static_cast<long long>(po.internal_opt) -
                                     static_cast<long long>(po.share),
                                 po.final_allocation);
    }
    for (const optin::Cycle& c : out.final_matching.cycles()) std::cout << cycle_line(c) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cycle packing, individually rational mechanisms and Monte Carlo experiments"};
    app.require_subcommand(1);

    SourceArgs src;
    std::size_t cap = 0;
    std::uint64_t node_limit = optin::SolveOptions{}.node_limit;
    std::string probs;
    std::size_t players = 0;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::string out;

    auto* solve = app.add_subcommand("solve", "maximum cycle packing");
    add_source_options(solve, src, true);
    solve->add_option("--cap", cap, "maximum cycle length (default 3, or the instance's)");
    solve->add_option("--node-limit", node_limit, "branch-and-bound node limit");
    bool chain = false;
    solve->add_flag("--chain", chain, "longest chain from the altruist of an acyclic graph");

    auto* decompose = app.add_subcommand("decompose", "Edmonds-Gallai decomposition of the 2-cycle graph");
    add_source_options(decompose, src, true);

    auto* generate = app.add_subcommand("generate", "write a generated instance");
    std::string gen_name;
    generate->add_option("name", gen_name, "instance name")
        ->required()
        ->check(CLI::IsMember(optin::instance_names()));
    generate->add_option("--n", src.n, "size parameter");
    generate->add_option("--copies", src.copies, "disjoint copies");
    generate->add_option("--out", out, "output file (stdout when omitted)");

    auto* mechanism = app.add_subcommand("mechanism", "run a mechanism on one sampled assignment");
    std::string mech_name;
    mechanism->add_option("which", mech_name, "veto or augment")
        ->required()
        ->check(CLI::IsMember({"veto", "augment"}));
    add_source_options(mechanism, src, true);
    mechanism->add_option("--cap", cap, "maximum cycle length");
    mechanism->add_option("--probs", probs, "player probabilities, e.g. 0.5,0.5 or 1/3,2/3");
    mechanism->add_option("--players", players, "k players with probability 1/k each");
    mechanism->add_option("--seed", seed, "random seed");
    mechanism->add_option("--trial", trial, "trial index");
    mechanism->add_option("--node-limit", node_limit, "branch-and-bound node limit");

    auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiment");
    std::string exp_name;
    experiment->add_option("name", exp_name, "experiment")
        ->required()
        ->check(CLI::IsMember({"lemma1", "concentration", "theorem1", "veto", "appc", "layered"}));
    add_source_options(experiment, src, true);
    optin::ExperimentConfig config;
    experiment->add_option("--cap", cap, "maximum cycle length");
    experiment->add_option("--probs", probs, "player probabilities");
    experiment->add_option("--players", players, "k players with probability 1/k each");
    experiment->add_option("--trials", config.trials, "number of trials")->capture_default_str();
    experiment->add_option("--seed", config.seed, "random seed")->capture_default_str();
    experiment->add_option("--delta", config.delta, "failure probability")->capture_default_str();
    experiment->add_option("--workers", config.workers, "worker threads")->capture_default_str();
    experiment->add_option("--node-limit", config.node_limit, "branch-and-bound node limit");
    experiment->add_option("--out", out, "CSV output (stdout when omitted)");
    std::string plot;
    experiment->add_option("--plot", plot, "plot-data output");
    experiment->add_flag("--exact", config.exact, "lemma1: add exact expectations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*solve) {
            const std::size_t use_cap = cap != 0 ? cap
                                        : !src.instance.empty()
                                            ? optin::make_instance(src.instance, src.n, src.copies).cycle_cap
                                            : 3;
            return cmd_solve(src, use_cap == 0 ? 3 : use_cap, node_limit, chain);
        }
        if (*decompose) return cmd_decompose(src);
        if (*generate) return cmd_generate(gen_name, src.n, src.copies, out);
        if (*mechanism) {
            return cmd_mechanism(mech_name, src, cap == 0 ? 3 : cap, make_profile(probs, players),
                                 seed, trial, node_limit);
        }
        if (*experiment) {
            const optin::NamedInstance inst = resolve_source(src);
            config.instance_name = inst.name;
            config.graph = inst.graph;
            config.cycle_cap = cap != 0 ? cap : (inst.cycle_cap >= 2 ? inst.cycle_cap : 3);
            config.profile = make_profile(probs, players);
            const optin::ExperimentReport report = optin::run_experiment(exp_name, config);
            std::ostringstream csv;
            optin::emit_report(report, csv);
            write_output(out, csv.str());
            if (!plot.empty()) {
                std::ostringstream p;
                optin::emit_plot(report, p);
                write_output(plot, p.str());
            }
            return 0;
        }
    } catch (const optin::SolverLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolverLimit;
    } catch (const optin::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
