// SPDX-License-Identifier: Apache-2.0
//
// Tabular experiment results and their CSV / JSON serialization.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace fdmimo {

using Value = std::variant<std::int64_t, double, std::string>;

/// One experiment's output table. Every emitted row is prefixed with the
/// experiment id, the configuration digest and the master seed.
struct ExperimentResult {
    std::string experiment;
    std::string config_digest;
    std::uint64_t seed = 0;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;

    /// Appends a row; throws std::invalid_argument on a width mismatch.
    void add_row(std::vector<Value> row);

    /// Index of a value column; throws std::out_of_range when absent.
    std::size_t column(std::string_view name) const;
    double number(std::size_t row, std::string_view name) const;
    std::string text(std::size_t row, std::string_view name) const;
};

enum class Format { csv, json };

Format format_from_string(const std::string& name);

void write_csv(std::ostream& os, const ExperimentResult& r);
void write_json(std::ostream& os, const ExperimentResult& r);
nlohmann::json to_json(const ExperimentResult& r);
ExperimentResult result_from_json(const nlohmann::json& j);

/// Writes to `path`, or standard output for "-" or an empty path. Throws
/// std::runtime_error on I/O failure.
void emit(const ExperimentResult& r, Format format, const std::string& path);

/// Serialized text of `r` in the given format.
std::string render(const ExperimentResult& r, Format format);

/// FNV-1a 64-bit hash as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace fdmimo
