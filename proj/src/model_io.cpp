#include "kanpinn/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kanpinn/error.hpp"

namespace kpinn {

using nlohmann::json;

std::string model_to_json(const NetworkModel& model) {
  validate(model);
  json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["backend"] = to_string(model.backend);
  doc["layer_widths"] = model.layer_widths;
  if (model.kan) {
    doc["kan_hyper"] = {{"grid_size", model.kan->grid_size},
                        {"spline_order", model.kan->spline_order},
                        {"grid_range", {model.kan->grid_lo, model.kan->grid_hi}}};
  } else {
    doc["kan_hyper"] = nullptr;
  }
  // nlohmann serialises doubles with the shortest representation that
  // parses back to the same bits.
  doc["params"] = model.params;
  doc["seed"] = model.seed;
  return doc.dump(2) + "\n";
}

NetworkModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), 0);
  }
  NetworkModel model;
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion)
      throw ParseError("unsupported model format_version " + std::to_string(version), 0);
    model.backend = backend_from_string(doc.at("backend").get<std::string>());
    model.layer_widths = doc.at("layer_widths").get<std::vector<int>>();
    const auto& kan = doc.at("kan_hyper");
    if (!kan.is_null()) {
      KanHyper h;
      h.grid_size = kan.at("grid_size").get<int>();
      h.spline_order = kan.at("spline_order").get<int>();
      const auto range = kan.at("grid_range").get<std::vector<double>>();
      if (range.size() != 2) throw ParseError("kan_hyper.grid_range must have two entries", 0);
      h.grid_lo = range[0];
      h.grid_hi = range[1];
      model.kan = h;
    }
    model.params = doc.at("params").get<std::vector<double>>();
    model.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), 0);
  }
  validate(model);
  return model;
}

void save_model(const NetworkModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << model_to_json(model);
}

NetworkModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace kpinn
