#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace canfis {

/// One exemplar: inputs (x, y) and desired sum/carry outputs (s, c).
struct Sample {
  double x = 0.0;
  double y = 0.0;
  double s = 0.0;
  double c = 0.0;

  Eigen::Vector2d desired() const { return {s, c}; }
  friend bool operator==(const Sample&, const Sample&) = default;
};

enum class Role { Train, CrossValidation, Test };

std::string_view to_string(Role role);
Role role_from_string(std::string_view text);

struct Dataset {
  std::string name;
  Role role = Role::Train;
  std::vector<Sample> samples;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }

  /// Throws DataError when empty or when any entry is non-finite.
  void validate() const;
  /// validate() plus desired outputs restricted to {0, 1}.
  void validate_binary() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Half-adder truth table, used for training.
Dataset builtin_training();
/// Noisy approximations of the four input combinations, used for cross validation.
Dataset builtin_cv();
/// Held-out testing data.
Dataset builtin_test();

/// Reads `X,Y,S,C` CSV. The dataset name is the file stem.
Dataset load_csv(const std::filesystem::path& path, Role role);
/// Writes `X,Y,S,C` CSV using shortest round-trip decimal text.
void save_csv(const Dataset& data, const std::filesystem::path& path);

}  // namespace canfis
