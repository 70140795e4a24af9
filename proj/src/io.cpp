#include "pcakit/io.hpp"

#include "pcakit/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pcakit {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

double parse_number(const std::string& field, std::size_t line_no, std::size_t column) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (!field.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (field.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw DataError("line " + std::to_string(line_no) + ", column " +
                        std::to_string(column + 1) + ": '" + field + "' is not a finite number");
    }
    return v;
}

struct RawLine {
    std::size_t number;
    std::vector<std::string> fields;
};

std::vector<RawLine> read_lines(std::istream& in) {
    std::vector<RawLine> lines;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (number == 1 && line.starts_with("\xEF\xBB\xBF")) {
            line.erase(0, 3);
        }
        if (trim(line).empty()) {
            continue;
        }
        lines.push_back({number, split(line)});
    }
    return lines;
}

PcaModel parse_model(const nlohmann::json& m) {
    auto require = [&](const char* key) -> const nlohmann::json& {
        if (!m.contains(key)) {
            throw DataError(std::string("model document is missing '") + key + "'");
        }
        return m.at(key);
    };
    const int version = require("version").get<int>();
    if (version != kModelVersion) {
        throw DataError("unsupported model version " + std::to_string(version));
    }
    PcaModel model{Vector{}, Matrix(1, 1), Vector{}, Route::eigen, Normalization::population, {}};
    model.route = parse_route(require("route").get<std::string>());
    model.normalization = parse_normalization(require("normalization").get<std::string>());
    model.names = require("names").get<std::vector<std::string>>();
    model.mean = require("mean").get<Vector>();
    model.variances = require("variances").get<Vector>();
    const auto rows = require("components").get<std::vector<Vector>>();
    if (rows.empty()) {
        throw DataError("model has no components");
    }
    model.components = Matrix::from_rows(rows);
    validate(model);
    return model;
}

} // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Dataset read_dataset_csv(std::istream& in, CsvOrientation orientation) {
    const auto lines = read_lines(in);
    if (lines.size() < 2) {
        throw DataError("no samples");
    }
    // The header of a measurements-as-rows file is ignored, so it does not
    // fix the width there.
    const bool by_sample = orientation == CsvOrientation::samples_as_rows;
    const std::size_t width = lines[by_sample ? 0 : 1].fields.size();
    for (std::size_t k = by_sample ? 0 : 1; k < lines.size(); ++k) {
        const auto& l = lines[k];
        if (l.fields.size() != width) {
            throw DataError("line " + std::to_string(l.number) + ": expected " +
                            std::to_string(width) + " fields, found " +
                            std::to_string(l.fields.size()));
        }
    }

    if (by_sample) {
        const std::vector<std::string> names = lines.front().fields;
        const std::size_t m = names.size();
        const std::size_t n = lines.size() - 1;
        for (std::size_t i = 0; i < m; ++i) {
            if (names[i].empty()) {
                throw DataError("line " + std::to_string(lines.front().number) +
                                ": empty measurement name in column " + std::to_string(i + 1));
            }
        }
        std::vector<double> data(m * n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto& l = lines[j + 1];
            for (std::size_t i = 0; i < m; ++i) {
                data[i * n + j] = parse_number(l.fields[i], l.number, i);
            }
        }
        if (n < 2) {
            throw DataError("need at least 2 samples, found " + std::to_string(n));
        }
        return Dataset(Matrix(m, n, std::move(data)), names);
    }

    const std::size_t m = lines.size() - 1;
    if (width < 2) {
        throw DataError("no samples");
    }
    const std::size_t n = width - 1;
    std::vector<std::string> names;
    std::vector<double> data(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& l = lines[i + 1];
        if (l.fields[0].empty()) {
            throw DataError("line " + std::to_string(l.number) + ": empty measurement name");
        }
        names.push_back(l.fields[0]);
        for (std::size_t j = 0; j < n; ++j) {
            data[i * n + j] = parse_number(l.fields[j + 1], l.number, j + 1);
        }
    }
    if (n < 2) {
        throw DataError("need at least 2 samples, found " + std::to_string(n));
    }
    return Dataset(Matrix(m, n, std::move(data)), std::move(names));
}

Dataset read_dataset_csv(const std::filesystem::path& path, CsvOrientation orientation) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path.string() + "'");
    }
    return read_dataset_csv(in, orientation);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header, const Matrix& columns) {
    if (header.size() != columns.rows()) {
        throw DimensionError("write_csv: " + std::to_string(header.size()) + " names for " +
                             std::to_string(columns.rows()) + " columns");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << '\n';
    for (std::size_t j = 0; j < columns.cols(); ++j) {
        for (std::size_t i = 0; i < columns.rows(); ++i) {
            out << (i ? "," : "") << format_number(columns(i, j));
        }
        out << '\n';
    }
}

void write_dataset_csv(std::ostream& out, const Dataset& d) {
    write_csv(out, d.names(), d.data());
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& d) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    write_dataset_csv(out, d);
}

nlohmann::json model_to_json(const PcaModel& model) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < model.components.rows(); ++i) {
        rows.push_back(model.components.row(i));
    }
    return nlohmann::json{
        {"version", kModelVersion},
        {"route", std::string(to_string(model.route))},
        {"normalization", std::string(to_string(model.normalization))},
        {"names", model.names},
        {"mean", model.mean},
        {"variances", model.variances},
        {"components", rows},
    };
}

PcaModel model_from_json(const nlohmann::json& doc) {
    try {
        if (doc.contains("model") && doc.at("model").is_object()) {
            return parse_model(doc.at("model"));
        }
        return parse_model(doc);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed model document: ") + e.what());
    }
}

PcaModel read_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path.string() + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
    return model_from_json(doc);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write '" + path.string() + "'");
    }
    out << doc.dump(2) << '\n';
}

} // namespace pcakit
