// SPDX-License-Identifier: Apache-2.0

#include "fdmimo/emit.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "fdmimo/format.hpp"

namespace fdmimo {

void ExperimentResult::add_row(std::vector<Value> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("ExperimentResult: row width " + std::to_string(row.size()) +
                                    " does not match " + std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

std::size_t ExperimentResult::column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::out_of_range("ExperimentResult: no column " + std::string(name));
}

double ExperimentResult::number(std::size_t row, std::string_view name) const {
    const Value& v = rows.at(row).at(column(name));
    if (const auto* d = std::get_if<double>(&v)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    throw std::invalid_argument("ExperimentResult: column " + std::string(name) + " is not numeric");
}

std::string ExperimentResult::text(std::size_t row, std::string_view name) const {
    const Value& v = rows.at(row).at(column(name));
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    throw std::invalid_argument("ExperimentResult: column " + std::string(name) + " is not text");
}

Format format_from_string(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw std::invalid_argument("unknown output format '" + name + "' (expected csv or json)");
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string cell_text(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
    return csv_field(std::get<std::string>(v));
}

}  // namespace

void write_csv(std::ostream& os, const ExperimentResult& r) {
    os << "experiment,config_digest,seed";
    for (const auto& c : r.columns) os << ',' << csv_field(c);
    os << '\n';
    const std::string prefix = csv_field(r.experiment) + ',' + csv_field(r.config_digest) + ',' + std::to_string(r.seed);
    for (const auto& row : r.rows) {
        os << prefix;
        for (const auto& v : row) os << ',' << cell_text(v);
        os << '\n';
    }
}

nlohmann::json to_json(const ExperimentResult& r) {
    nlohmann::json j;
    j["experiment"] = r.experiment;
    j["config_digest"] = r.config_digest;
    j["seed"] = r.seed;
    j["columns"] = r.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& v : row) std::visit([&](const auto& x) { jr.push_back(x); }, v);
        j["rows"].push_back(std::move(jr));
    }
    return j;
}

ExperimentResult result_from_json(const nlohmann::json& j) {
    ExperimentResult r;
    r.experiment = j.at("experiment").get<std::string>();
    r.config_digest = j.at("config_digest").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& jr : j.at("rows")) {
        std::vector<Value> row;
        for (const auto& v : jr) {
            if (v.is_string())
                row.emplace_back(v.get<std::string>());
            else if (v.is_number_integer())
                row.emplace_back(v.get<std::int64_t>());
            else if (v.is_number_float())
                row.emplace_back(v.get<double>());
            else
                throw std::invalid_argument("result_from_json: unsupported cell type");
        }
        r.add_row(std::move(row));
    }
    return r;
}

void write_json(std::ostream& os, const ExperimentResult& r) { os << to_json(r).dump(2) << '\n'; }

std::string render(const ExperimentResult& r, Format format) {
    std::ostringstream os;
    if (format == Format::csv)
        write_csv(os, r);
    else
        write_json(os, r);
    return os.str();
}

void emit(const ExperimentResult& r, Format format, const std::string& path) {
    const std::string text = render(r, format);
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw std::runtime_error("emit: failed writing to standard output");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("emit: cannot open '" + path + "' for writing");
    out << text;
    out.close();
    if (!out) throw std::runtime_error("emit: failed writing '" + path + "'");
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace fdmimo
