#include "fopid/report.hpp"

#include <iomanip>
#include <sstream>

#include "fopid/errors.hpp"
#include "fopid/serialization.hpp"

namespace fopid {

using nlohmann::json;

namespace {

std::string algorithm_label(Algorithm a) { return a == Algorithm::pso ? "PSO" : "DE"; }

void parameter_table(std::ostringstream& out, std::span<const DesignReport> reports,
                     ControllerMode mode, json& rows) {
    const bool fractional = mode == ControllerMode::fractional;
    out << (fractional ? "Fractional-order PID parameters\n"
                       : "Integer-order PID parameters (lambda = delta = 1)\n");
    out << std::left << std::setw(8) << "Algo" << std::right << std::setw(12) << "Kp"
        << std::setw(12) << "Ti" << std::setw(12) << "Td";
    if (fractional) out << std::setw(10) << "lambda" << std::setw(10) << "delta";
    out << '\n';

    for (const auto& r : reports) {
        if (r.mode != mode) continue;
        out << std::left << std::setw(8) << algorithm_label(r.algorithm) << std::right;
        json row = {{"algorithm", to_string(r.algorithm)}, {"mode", to_string(mode)}};
        if (r.selected) {
            const auto& p = *r.selected;
            out << std::fixed << std::setprecision(2) << std::setw(12) << p.kp
                << std::setw(12) << p.ti << std::setw(12) << p.td;
            if (fractional) out << std::setw(10) << p.lambda << std::setw(10) << p.delta;
            out << '\n';
            row["params"] = to_json(p);
        } else {
            out << std::setw(12) << "-" << std::setw(12) << "-" << std::setw(12) << "-";
            if (fractional) out << std::setw(10) << "-" << std::setw(10) << "-";
            out << "   (" << r.diagnostic << ")\n";
            row["params"] = nullptr;
            row["diagnostic"] = r.diagnostic;
        }
        rows.push_back(std::move(row));
    }
    out << '\n';
}

} // namespace

TableReport report_tables(std::span<const DesignReport> reports) {
    if (reports.empty()) throw InputError("report: need at least one design report");

    std::ostringstream out;
    json parameters = json::array();
    bool any_fractional = false;
    bool any_integer = false;
    for (const auto& r : reports) {
        (r.mode == ControllerMode::fractional ? any_fractional : any_integer) = true;
    }
    if (any_fractional) parameter_table(out, reports, ControllerMode::fractional, parameters);
    if (any_integer) parameter_table(out, reports, ControllerMode::integer, parameters);

    json metrics = json::array();
    out << "Peak overshoot and rise time\n";
    out << std::left << std::setw(12) << "Order" << std::setw(8) << "Algo" << std::right
        << std::setw(10) << "Mp (%)" << std::setw(14) << "t_rise (s)" << std::setw(10)
        << "spec" << '\n';
    for (const auto& r : reports) {
        out << std::left << std::setw(12) << to_string(r.mode) << std::setw(8)
            << algorithm_label(r.algorithm) << std::right;
        json row = {{"mode", to_string(r.mode)}, {"algorithm", to_string(r.algorithm)}};
        if (r.selected && r.metrics) {
            const auto& m = *r.metrics;
            out << std::fixed << std::setprecision(1) << std::setw(10)
                << 100.0 * m.overshoot_fraction;
            if (m.rise_time) {
                out << std::setprecision(3) << std::setw(14) << *m.rise_time;
            } else {
                out << std::setw(14) << "none";
            }
            out << std::setw(10) << (r.spec_met ? "met" : "missed") << '\n';
            row["overshoot_percent"] = 100.0 * m.overshoot_fraction;
            row["rise_time"] = m.rise_time ? json(*m.rise_time) : json(nullptr);
            row["spec_met"] = r.spec_met;
        } else {
            out << std::setw(10) << "-" << std::setw(14) << "-" << std::setw(10) << "-"
                << "   (" << r.diagnostic << ")\n";
            row["overshoot_percent"] = nullptr;
            row["rise_time"] = nullptr;
            row["spec_met"] = false;
            row["diagnostic"] = r.diagnostic;
        }
        metrics.push_back(std::move(row));
    }

    return {out.str(), json{{"parameters", std::move(parameters)},
                            {"metrics", std::move(metrics)}}};
}

} // namespace fopid
