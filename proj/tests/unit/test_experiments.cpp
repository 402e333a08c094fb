#include <doctest.h>

#include <cmath>
#include <sstream>

#include "optin/errors.hpp"
#include "optin/experiments.hpp"
#include "optin/generators.hpp"
#include "optin/mechanisms.hpp"

using namespace optin;

namespace {

ExperimentConfig config_for(const NamedInstance& inst, const char* probs, std::uint64_t trials) {
    ExperimentConfig c;
    c.instance_name = inst.name;
    c.graph = inst.graph;
    c.cycle_cap = inst.cycle_cap >= 2 ? inst.cycle_cap : 3;
    c.profile = PlayerProfile::parse(probs);
    c.trials = trials;
    c.seed = 99;
    return c;
}

std::string csv(const ExperimentReport& r) {
    std::ostringstream out;
    emit_report(r, out);
    return out.str();
}

std::size_t count_lines(const std::string& text, char first) {
    std::size_t n = 0;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) n += !line.empty() && line[0] == first;
    return n;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("config validation") {
    ExperimentConfig c = config_for(gen_figure1(), "1/2,1/2", 10);
    c.trials = 0;
    CHECK_THROWS_AS(run_lemma1(c), ValidationError);
    c.trials = 10;
    c.delta = 1.0;
    CHECK_THROWS_AS(run_theorem1(c), ValidationError);
    c.delta = 0.01;
    c.workers = 0;
    CHECK_THROWS_AS(run_veto(c), ValidationError);
    c.workers = 1;
    c.fixed_owner = std::vector<std::uint32_t>{0, 1};
    CHECK_THROWS_AS(run_veto(c), ValidationError);
    CHECK_THROWS_AS(run_experiment("nope", config_for(gen_figure1(), "1", 1)), ValidationError);
    CHECK_THROWS_AS(run_appc(config_for(gen_figure1(), "1/2,1/2", 1)), ValidationError);
    CHECK_THROWS_AS(run_layered(config_for(gen_figure1(), "1/2,1/2", 1)), ValidationError);
}

TEST_CASE("hypothesis flags") {
    const auto h = hypothesis_flags(PlayerProfile::parse("1/2,1/4,1/4"), 2);
    CHECK(h.two_cycle_half);
    CHECK(h.integral_inverse);
    CHECK(!h.uniform);
    const auto s = hypothesis_flags(PlayerProfile::parse("2/3,1/3"), 3);
    CHECK(!s.theorem1());
    CHECK(!hypothesis_flags(PlayerProfile::parse("1/2,1/2"), 3).two_cycle_half);
}

TEST_CASE("Hoeffding half-width") {
    const std::vector<double> ranges{3.0, 4.0};
    CHECK(hoeffding_halfwidth(ranges, 100, 0.05) ==
          doctest::Approx(std::sqrt(25.0 * std::log(40.0) / 200.0)));
}

TEST_CASE("lemma1 exact mode on the triangle") {
    ExperimentConfig c = config_for(gen_appb_triangle(1), "2/3,1/3", 50);
    c.exact = true;
    const ExperimentReport r = run_lemma1(c);
    CHECK(r.aggregate("exact_internal_opt_p1") == "40/27");
    CHECK(r.aggregate("exact_proportional_share_p1") == "4/3");
    CHECK(r.aggregate("verdict_exact_p1") == "violates");
    CHECK(r.aggregate("within_hypothesis") == "false");
    CHECK(r.aggregate("verdict_exact_p2") == "holds");
}

TEST_CASE("lemma1 with one player is exact") {
    ExperimentConfig c = config_for(gen_figure1(), "1.0", 20);
    c.exact = true;
    const ExperimentReport r = run_lemma1(c);
    CHECK(r.number("mean_internal_opt_p1") == 6.0);
    CHECK(r.aggregate("exact_internal_opt_p1") == "6");
}

TEST_CASE("lemma1 on fifty copies stays under 9/8 per copy") {
    const ExperimentReport r = run_lemma1(config_for(make_instance("figure1", 0, 50), "1/2,1/2", 1000));
    const double ci = r.number("ci_halfwidth");
    for (const char* key : {"mean_internal_opt_p1", "mean_internal_opt_p2"}) {
        CHECK(r.number(key) / 50.0 <= 9.0 / 8.0 + ci / 50.0);
    }
    CHECK(r.aggregate("verdict_ci_p1") == "holds");
    // per-component ranges: 50 components of optimum 6
    CHECK(ci == doctest::Approx(std::sqrt(50 * 36.0 * std::log(2.0 / 0.01) / 2000.0)));
}

TEST_CASE("concentration degenerate and grid endpoints") {
    const ExperimentReport one = run_concentration(config_for(gen_figure1(), "1/2,1/2", 1));
    for (const char* key : {"upper_frequency_p1", "lower_frequency_p1", "upper_frequency_p2"}) {
        const double f = one.number(key);
        CHECK((f == 0.0 || f == 1.0));
    }
    const ExperimentReport r = run_concentration(config_for(make_instance("figure1", 0, 10), "1/2,1/2", 400));
    CHECK(r.number("upper_tail_bound_at_eps0") == 1.0);
    bool found = false;
    for (const PlotPoint& p : r.plot) {
        if (p.series == "upper_tail_bound_p1" && p.x == 0.0) {
            CHECK(p.y == 1.0);
            found = true;
        }
    }
    CHECK(found);
    CHECK(r.number("tail_target") == doctest::Approx(0.01 / 4.0));
}

TEST_CASE("theorem1 with one player has zero gaps") {
    const ExperimentReport r = run_theorem1(config_for(gen_figure1(), "1", 30));
    for (const TrialRow& row : r.rows) CHECK(row.gap == 0);
    CHECK(r.number("max_gap_max") == 0.0);
    CHECK(r.number("theorem1_bound") == doctest::Approx(theorem1_bound(6, 3, 1, 0.01)));
}

TEST_CASE("veto: one player never vetoes; the fixed blue assignment always does") {
    const ExperimentReport solo = run_veto(config_for(gen_figure1(), "1", 25));
    CHECK(solo.number("veto_frequency") == 0.0);
    CHECK(solo.number("max_loss") == 0.0);

    ExperimentConfig c = config_for(gen_figure1(), "1/2,1/2", 5);
    c.fixed_owner = figure1_blue_owner();
    const ExperimentReport r = run_veto(c);
    CHECK(r.number("veto_frequency") == 1.0);
    CHECK(r.number("mean_loss") == 3.0);
    CHECK(r.aggregate("ir_holds") == "true");
    CHECK(r.number("corollary1_bound") == doctest::Approx(corollary1_bound(6, 3, 2, 0.01)));
}

TEST_CASE("appc on a small chain graph") {
    const ExperimentReport r = run_appc(config_for(gen_long_chain(90), "1/2,1/2", 300));
    CHECK(r.number("good_layer_bound_violations") == 0.0);
    CHECK(r.number("reference_good_layers") == doctest::Approx(17.5));
    CHECK(r.number("focal_mean_good_layers") == doctest::Approx(17.5).epsilon(0.05));
    CHECK(r.number("focal_mean_share") == doctest::Approx(15.0).epsilon(0.1));
    CHECK(r.extra_columns == std::vector<std::string>{"good_layers", "owns_altruist"});
    for (std::size_t i = 0; i < r.rows.size(); i += 2) {
        CHECK(r.rows[i].extra[1] + r.rows[i + 1].extra[1] == 1);
    }
}

TEST_CASE("layered counts and closed form") {
    const ExperimentReport r = run_layered(config_for(gen_layered(64), "1/2,1/2", 50));
    for (std::size_t i = 0; i < r.rows.size(); i += 2) {
        for (std::size_t layer = 0; layer < 4; ++layer) {
            CHECK(r.rows[i].extra[layer] + r.rows[i + 1].extra[layer] == 16);
        }
        const auto& e = r.rows[i].extra;
        CHECK(r.rows[i].internal_opt ==
              layered_internal_opt(static_cast<std::size_t>(e[0]), static_cast<std::size_t>(e[1]),
                                   static_cast<std::size_t>(e[2]), static_cast<std::size_t>(e[3])));
    }
}

TEST_CASE("CSV shape") {
    ExperimentReport empty;
    CHECK(csv(empty) == "trial,player,internal_opt,share,gap,accepted,final_allocation\n");

    const ExperimentReport r = run_lemma1(config_for(gen_figure1(), "1", 10));
    const std::string text = csv(r);
    CHECK(count_lines(text, '#') == r.aggregates.size() + 1);
    std::size_t data = 0;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) data += line[0] != '#';
    CHECK(data == 10);
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("aggregates can be recomputed from the rows") {
    const ExperimentReport r = run_theorem1(config_for(make_instance("figure1", 0, 5), "1/3,1/3,1/3", 200));
    for (std::uint32_t p = 0; p < 3; ++p) {
        double gap = 0.0, positive = 0.0;
        std::size_t n = 0;
        for (const TrialRow& row : r.rows) {
            if (row.player != p) continue;
            gap += static_cast<double>(row.gap);
            positive += row.gap > 0 ? static_cast<double>(row.gap) : 0.0;
            ++n;
        }
        CHECK(r.aggregate("mean_gap_p" + std::to_string(p + 1)) == format_number(gap / static_cast<double>(n)));
        CHECK(r.aggregate("mean_positive_gap_p" + std::to_string(p + 1)) ==
              format_number(positive / static_cast<double>(n)));
    }
}

TEST_CASE("reports do not depend on the worker count") {
    for (const char* name : {"lemma1", "concentration", "theorem1", "veto"}) {
        ExperimentConfig c = config_for(make_instance("figure1", 0, 4), "1/2,1/2", 120);
        const std::string one = csv(run_experiment(name, c));
        c.workers = 8;
        CHECK(csv(run_experiment(name, c)) == one);
    }
    ExperimentConfig c = config_for(gen_long_chain(36), "1/2,1/2", 40);
    const std::string one = csv(run_appc(c));
    c.workers = 5;
    CHECK(csv(run_appc(c)) == one);
}

}  // TEST_SUITE
