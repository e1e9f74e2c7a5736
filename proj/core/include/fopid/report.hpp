#pragma once

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "fopid/design.hpp"

namespace fopid {

struct TableReport {
    std::string text;
    nlohmann::json json;
};

/// Controller parameter tables (fractional and integer) and a metric table
/// with one row per report. Reports without a selection show dashes and
/// their diagnostic. Throws InputError for an empty list.
TableReport report_tables(std::span<const DesignReport> reports);

} // namespace fopid
