#ifndef PCAKIT_IO_HPP
#define PCAKIT_IO_HPP

#include "pcakit/pca.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace pcakit {

// Samples-as-rows is the usual tabular layout: a header line of measurement
// names, then one line per sample. Measurements-as-rows matches the m x n
// layout used internally: a header line (ignored), then one line per
// measurement holding its name followed by its n values.
enum class CsvOrientation { samples_as_rows, measurements_as_rows };

inline constexpr int kModelVersion = 1;

/// %.17g, enough digits to round-trip any double.
std::string format_number(double v);

/// Parses UTF-8, comma-separated, '.'-decimal text. Throws DataError with
/// the 1-based line number on malformed input, and "no samples" when the
/// input holds no data lines.
Dataset read_dataset_csv(std::istream& in, CsvOrientation orientation = CsvOrientation::samples_as_rows);
Dataset read_dataset_csv(const std::filesystem::path& path,
                         CsvOrientation orientation = CsvOrientation::samples_as_rows);

/// Writes `columns` (one row per output column, one column per sample) in
/// samples-as-rows layout under the given header.
void write_csv(std::ostream& out, const std::vector<std::string>& header, const Matrix& columns);
void write_dataset_csv(std::ostream& out, const Dataset& d);
void write_dataset_csv(const std::filesystem::path& path, const Dataset& d);

/// {version, route, normalization, names, mean, variances, components};
/// components are the rows of P.
nlohmann::json model_to_json(const PcaModel& model);

/// Accepts a model document or a report that embeds one under "model".
/// Validates the model invariants; throws DataError otherwise.
PcaModel model_from_json(const nlohmann::json& doc);

PcaModel read_model(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

} // namespace pcakit

#endif
