#include "canfis/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "canfis/errors.hpp"
#include "canfis/format.hpp"

namespace canfis {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Train: return "train";
    case Role::CrossValidation: return "cv";
    case Role::Test: return "test";
  }
  return "unknown";
}

Role role_from_string(std::string_view text) {
  if (text == "train") return Role::Train;
  if (text == "cv") return Role::CrossValidation;
  if (text == "test") return Role::Test;
  throw ConfigError("unknown dataset role '" + std::string(text) + "'");
}

void Dataset::validate() const {
  if (samples.empty()) throw DataError("dataset '" + name + "' is empty");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.s) || !std::isfinite(s.c))
      throw DataError("dataset '" + name + "' has a non-finite entry in sample " + std::to_string(i + 1));
  }
}

void Dataset::validate_binary() const {
  validate();
  const auto binary = [](double v) { return v == 0.0 || v == 1.0; };
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (!binary(samples[i].s) || !binary(samples[i].c))
      throw DataError("dataset '" + name + "' has a non-binary target in sample " + std::to_string(i + 1));
}

Dataset builtin_training() {
  Dataset d{"builtin_training", Role::Train,
            {
                {0, 0, 0, 0},
                {0, 1, 1, 0},
                {1, 0, 1, 0},
                {1, 1, 0, 1},
            }};
  d.validate_binary();
  return d;
}

Dataset builtin_cv() {
  // Row 3 (y = 1.06) is kept exactly as published.
  Dataset d{"builtin_cv", Role::CrossValidation,
            {
                {0.05, 0.03, 0, 0},
                {0.09, 0.98, 1, 0},
                {0.06, 1.06, 1, 0},
                {1.02, 0.96, 0, 1},
                {0.97, 0.035, 1, 0},
                {0.99, 0.97, 0, 1},
                {0.055, 0.98, 1, 0},
                {1.01, 0.03, 1, 0},
                {1.04, 0.99, 0, 1},
            }};
  d.validate_binary();
  return d;
}

Dataset builtin_test() {
  Dataset d{"builtin_test", Role::Test,
            {
                {0.07, 0.02, 0, 0},
                {0.09, 0.99, 1, 0},
                {1.045, 0.03, 1, 0},
                {0.08, 0.01, 0, 0},
                {0.98, 0.02, 1, 0},
                {0.975, 0.98, 0, 1},
            }};
  d.validate_binary();
  return d;
}

Dataset load_csv(const std::filesystem::path& path, Role role) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError(CsvError::Kind::MissingFile, 0, 0, "cannot open dataset file: " + path.string());

  std::string line;
  if (!std::getline(in, line))
    throw CsvError(CsvError::Kind::MalformedHeader, 1, 0, path.string() + ": missing header");
  const auto header = split_csv_line(line);
  const std::vector<std::string> expected{"X", "Y", "S", "C"};
  if (header != expected)
    throw CsvError(CsvError::Kind::MalformedHeader, 1, 0,
                   path.string() + ": header must be exactly X,Y,S,C (got '" + line + "')");

  Dataset data{path.stem().string(), role, {}};
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4)
      throw CsvError(CsvError::Kind::WrongFieldCount, row, 0,
                     path.string() + ": row " + std::to_string(row) + " has " +
                         std::to_string(fields.size()) + " fields, expected 4");
    double v[4];
    for (std::size_t col = 0; col < 4; ++col)
      if (!parse_real(fields[col], v[col]) || !std::isfinite(v[col]))
        throw CsvError(CsvError::Kind::ParseError, row, col + 1,
                       path.string() + ": row " + std::to_string(row) + ", column " + std::to_string(col + 1) +
                           ": '" + fields[col] + "' is not a finite number");
    data.samples.push_back({v[0], v[1], v[2], v[3]});
  }
  if (data.samples.empty())
    throw CsvError(CsvError::Kind::EmptyBody, row, 0, path.string() + ": no data rows");
  return data;
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "X,Y,S,C\n";
  for (const auto& s : data.samples)
    out << format_real(s.x) << ',' << format_real(s.y) << ',' << format_real(s.s) << ',' << format_real(s.c) << '\n';
  write_text_file(path, out.str());
}

}  // namespace canfis
