#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "canfis/network.hpp"

namespace canfis {

/// Network parameters as a JSON document: a config header (fixed architecture
/// fields, n_mf, seed) plus the flat parameter vector in get_params order.
std::string params_to_json(const CanfisNetwork<double>& net, std::uint64_t seed);

/// Rebuilds a network from params_to_json output. Throws ConfigError on a
/// malformed document or architecture mismatch, DimensionError on a wrong
/// vector length.
CanfisNetwork<double> params_from_json(const std::string& text);

void save_params(const CanfisNetwork<double>& net, std::uint64_t seed, const std::filesystem::path& path);
CanfisNetwork<double> load_params(const std::filesystem::path& path);

}  // namespace canfis
