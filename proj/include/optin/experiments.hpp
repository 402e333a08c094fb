#pragma once

// Monte Carlo harness: trial batches, aggregates against the analytic bounds,
// CSV and plot-data output.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "optin/graph.hpp"
#include "optin/ownership.hpp"
#include "optin/rational.hpp"

namespace optin {

struct ExperimentConfig {
    std::string instance_name;
    Graph graph;
    std::size_t cycle_cap = 3;
    PlayerProfile profile = PlayerProfile::uniform(2);
    std::uint64_t trials = 10'000;
    std::uint64_t seed = 0;
    double delta = 0.01;
    unsigned workers = 1;
    bool exact = false;  // lemma1: add exact expectations (n <= kExactMaxVertices)
    std::uint64_t node_limit = 10'000'000;
    // When set, every trial replays this assignment instead of sampling.
    std::optional<std::vector<std::uint32_t>> fixed_owner;
};

// Throws ValidationError on trials == 0, delta outside (0, 1), workers == 0,
// cap < 2 or a fixed assignment that does not fit the graph and profile.
void validate(const ExperimentConfig& config);

struct HypothesisFlags {
    bool two_cycle_half = false;    // cap 2 and every p_i <= 1/2
    bool integral_inverse = false;  // every 1/p_i an integer
    bool uniform = false;           // every p_i = 1/k

    bool theorem1() const noexcept { return two_cycle_half || integral_inverse; }
};

HypothesisFlags hypothesis_flags(const PlayerProfile& profile, std::size_t cap);

struct TrialRow {
    std::uint64_t trial = 0;
    std::uint32_t player = 0;  // 0-based; printed 1-based
    std::size_t internal_opt = 0;
    std::size_t share = 0;
    std::int64_t gap = 0;
    bool accepted = false;
    std::size_t final_allocation = 0;
    std::vector<std::int64_t> extra;  // values for ExperimentReport::extra_columns
};

struct PlotPoint {
    std::string series;
    double x = 0.0;
    double y = 0.0;
};

struct ExperimentReport {
    std::string experiment;
    std::vector<std::string> extra_columns;
    std::vector<TrialRow> rows;  // trial-major, then player
    std::vector<std::pair<std::string, std::string>> aggregates;
    std::vector<PlotPoint> plot;
    HypothesisFlags flags;

    void add_number(std::string key, double value);
    void add_integer(std::string key, std::int64_t value);
    void add_rational(std::string key, const Rational& value);
    void add_text(std::string key, std::string value);
    void add_flag(std::string key, bool value);

    // Throws std::out_of_range for a missing key.
    const std::string& aggregate(std::string_view key) const;
    // Numeric value of an aggregate; fractions "a/b" are accepted.
    double number(std::string_view key) const;
};

// The CSV float format: 12 significant digits.
std::string format_number(double value);

// Hoeffding half-width for the mean of `trials` independent sums whose
// summands have the given ranges: sqrt(sum r^2 ln(2/alpha) / (2 trials)).
double hoeffding_halfwidth(std::span<const double> ranges, std::uint64_t trials, double alpha);

// E|opt(H_i)| per player against p_i |opt(G)|.
ExperimentReport run_lemma1(const ExperimentConfig& config);

// Upper and lower tail frequencies of |opt(H_i)| against delta / (2k).
ExperimentReport run_concentration(const ExperimentConfig& config);

// Max-over-players gap per trial against (2L+1) sqrt(|opt(G)| ln(4k/delta)).
ExperimentReport run_theorem1(const ExperimentConfig& config);

// Veto mechanism: veto frequency, efficiency loss, IR check.
ExperimentReport run_veto(const ExperimentConfig& config);

// Long-chain instance: good layers, exact internal chain, share of the
// fixed longest chain. The graph must equal gen_long_chain(n) for n =
// vertex_count - 1.
ExperimentReport run_appc(const ExperimentConfig& config);

// Layered instance: per-layer ownership counts, closed-form internal optimum
// and the frequency of the skewed-ownership event. The graph must equal
// gen_layered(vertex_count).
ExperimentReport run_layered(const ExperimentConfig& config);

// Dispatch by name: lemma1, concentration, theorem1, veto, appc, layered.
ExperimentReport run_experiment(std::string_view name, const ExperimentConfig& config);

// CSV: header, one row per (trial, player), then "# key,value" aggregate
// lines. A report without rows prints the header only.
void emit_report(const ExperimentReport& report, std::ostream& out);

// Plot data: "series,x,y" lines.
void emit_plot(const ExperimentReport& report, std::ostream& out);

}  // namespace optin
