#include "canfis/serialize.hpp"

#include "json.hpp"

#include "canfis/errors.hpp"
#include "canfis/format.hpp"

namespace canfis {

namespace {
constexpr const char* kFormat = "canfis-params/1";
constexpr const char* kLayout =
    "mf: input-major, mf-major, (a,b,c); consequents: rule-major, output-major, (p,q,r_bias)";
}  // namespace

std::string params_to_json(const CanfisNetwork<double>& net, std::uint64_t seed) {
  nlohmann::ordered_json doc;
  doc["format"] = kFormat;
  doc["config"] = {
      {"n_inputs", NetworkConfig::kInputs},
      {"n_outputs", NetworkConfig::kOutputs},
      {"n_mf", net.n_mf()},
      {"mf_shape", NetworkConfig::kMfShape},
      {"fuzzy_model", NetworkConfig::kFuzzyModel},
      {"output_transfer", NetworkConfig::kOutputTransfer},
      {"seed", seed},
  };
  doc["layout"] = kLayout;
  const Eigen::VectorXd p = get_params(net);
  doc["params"] = std::vector<double>(p.data(), p.data() + p.size());
  return doc.dump(2) + "\n";
}

CanfisNetwork<double> params_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("parameter document is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != kFormat) throw ConfigError("unsupported parameter document format");
    const auto& cfg = doc.at("config");
    if (cfg.at("n_inputs").get<int>() != NetworkConfig::kInputs ||
        cfg.at("n_outputs").get<int>() != NetworkConfig::kOutputs ||
        cfg.at("mf_shape").get<std::string>() != NetworkConfig::kMfShape ||
        cfg.at("fuzzy_model").get<std::string>() != NetworkConfig::kFuzzyModel ||
        cfg.at("output_transfer").get<std::string>() != NetworkConfig::kOutputTransfer)
      throw ConfigError("parameter document describes a different architecture");
    auto net = make_network<double>(cfg.at("n_mf").get<int>());
    const auto values = doc.at("params").get<std::vector<double>>();
    set_params(net, Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
    net.validate();
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed parameter document: ") + e.what());
  }
}

void save_params(const CanfisNetwork<double>& net, std::uint64_t seed, const std::filesystem::path& path) {
  write_text_file(path, params_to_json(net, seed));
}

CanfisNetwork<double> load_params(const std::filesystem::path& path) {
  return params_from_json(read_text_file(path));
}

}  // namespace canfis
