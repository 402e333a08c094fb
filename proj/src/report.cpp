#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "optin/experiments.hpp"

namespace optin {

std::string format_number(double value) { return fmt::format("{:.12g}", value); }

void ExperimentReport::add_number(std::string key, double value) {
    aggregates.emplace_back(std::move(key), format_number(value));
}

void ExperimentReport::add_integer(std::string key, std::int64_t value) {
    aggregates.emplace_back(std::move(key), std::to_string(value));
}

void ExperimentReport::add_rational(std::string key, const Rational& value) {
    aggregates.emplace_back(std::move(key), to_string(value));
}

void ExperimentReport::add_text(std::string key, std::string value) {
    aggregates.emplace_back(std::move(key), std::move(value));
}

void ExperimentReport::add_flag(std::string key, bool value) {
    aggregates.emplace_back(std::move(key), value ? "true" : "false");
}

const std::string& ExperimentReport::aggregate(std::string_view key) const {
    for (const auto& [k, v] : aggregates) {
        if (k == key) return v;
    }
    throw std::out_of_range(fmt::format("no aggregate '{}'", key));
}

double ExperimentReport::number(std::string_view key) const {
    const std::string& text = aggregate(key);
    if (text.find('/') != std::string::npos) return to_double(parse_rational(text));
    return std::stod(text);
}

void emit_report(const ExperimentReport& report, std::ostream& out) {
    out << "trial,player,internal_opt,share,gap,accepted,final_allocation";
    for (const std::string& c : report.extra_columns) out << ',' << c;
    out << '\n';
    if (report.rows.empty()) return;
    for (const TrialRow& row : report.rows) {
        out << fmt::format("{},{},{},{},{},{},{}", row.trial, row.player + 1, row.internal_opt,
                           row.share, row.gap, row.accepted ? 1 : 0, row.final_allocation);
        for (const std::int64_t x : row.extra) out << ',' << x;
        out << '\n';
    }
    out << "# experiment," << report.experiment << '\n';
    for (const auto& [key, value] : report.aggregates) out << "# " << key << ',' << value << '\n';
}

void emit_plot(const ExperimentReport& report, std::ostream& out) {
    out << "series,x,y\n";
    for (const PlotPoint& p : report.plot) {
        out << p.series << ',' << format_number(p.x) << ',' << format_number(p.y) << '\n';
    }
}

}  // namespace optin
