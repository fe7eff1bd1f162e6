#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kanpinn/error.hpp"
#include "kanpinn/evaluation.hpp"
#include "kanpinn/model_io.hpp"
#include "kanpinn/oracle.hpp"

namespace kpinn::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  writer(out);
  if (!out) throw ConfigError("error while writing " + path.string());
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

GridField load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  try {
    return read_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

bool heatmap_enabled(const std::string& flag) { return flag == "on"; }

}  // namespace

RunConfig apply_config_json(const std::string& text, RunConfig c) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  auto& t = c.train;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "backend") t.backend = backend_from_string(value.get<std::string>());
      else if (key == "steps") t.steps = value.get<int>();
      else if (key == "learning_rate") t.learning_rate = value.get<double>();
      else if (key == "alpha") t.alpha = value.get<double>();
      else if (key == "n_interior") t.n_interior = value.get<int>();
      else if (key == "per_side") t.per_side = value.get<int>();
      else if (key == "seed") t.seed = value.get<std::uint64_t>();
      else if (key == "adam_beta1") t.adam_beta1 = value.get<double>();
      else if (key == "adam_beta2") t.adam_beta2 = value.get<double>();
      else if (key == "adam_epsilon") t.adam_epsilon = value.get<double>();
      else if (key == "log_every") t.log_every = value.get<int>();
      else if (key == "out") c.out = value.get<std::string>();
      else if (key == "grid") c.grid = value.get<int>();
      else if (key == "n_terms") c.n_terms = value.get<int>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const json::type_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

std::string config_to_json(const RunConfig& c) {
  const auto& t = c.train;
  json doc = {
      {"backend", to_string(t.backend)},
      {"steps", t.steps},
      {"learning_rate", t.learning_rate},
      {"alpha", t.alpha},
      {"n_interior", t.n_interior},
      {"per_side", t.per_side},
      {"seed", t.seed},
      {"adam_beta1", t.adam_beta1},
      {"adam_beta2", t.adam_beta2},
      {"adam_epsilon", t.adam_epsilon},
      {"log_every", t.log_every},
      {"out", c.out},
      {"grid", c.grid},
      {"n_terms", c.n_terms},
  };
  return doc.dump(2) + "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"PINN solver for the 2D electrostatic box (MLP and KAN backends)", "kanpinn"};
  app.require_subcommand(1);

  // Shared option storage; `count()` tells whether a flag was given explicitly.
  std::string config_path, backend, out_dir, model_path, field_a, field_b, heatmap = "on";
  std::uint64_t seed = 0;
  int steps = 0, grid = 0, n_terms = 0;
  double lr = 0.0, alpha = 0.0, gate = 0.1;

  auto* train = app.add_subcommand("train", "Train a PINN and write model.json, history.csv, config.json");
  auto* o_config = train->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* o_backend = train->add_option("--backend", backend, "mlp or kan")->check(CLI::IsMember({"mlp", "kan"}));
  auto* o_seed = train->add_option("--seed", seed, "Seed for initialisation and interior sampling");
  auto* o_steps = train->add_option("--steps", steps, "Adam steps");
  auto* o_lr = train->add_option("--lr", lr, "Learning rate");
  auto* o_alpha = train->add_option("--alpha", alpha, "Interior loss weight");
  auto* o_out = train->add_option("--out", out_dir, "Output directory");

  auto* oracle = app.add_subcommand("oracle", "Write the analytic reference field truth.csv (+ truth.pgm)");
  auto* oo_config = oracle->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* oo_grid = oracle->add_option("--grid", grid, "Nodes per axis (default 101)");
  auto* oo_terms = oracle->add_option("--n-terms", n_terms, "Odd harmonics in the series (default 200)");
  auto* oo_out = oracle->add_option("--out", out_dir, "Output directory");
  oracle->add_option("--heatmap", heatmap, "on|off")->check(CLI::IsMember({"on", "off"}));

  auto* eval = app.add_subcommand("eval", "Evaluate a model on the grid: field.csv (+ field.pgm)");
  eval->add_option("--model", model_path, "model.json written by train")->required()->check(CLI::ExistingFile);
  auto* eo_config = eval->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* eo_grid = eval->add_option("--grid", grid, "Nodes per axis (default 101)");
  auto* eo_out = eval->add_option("--out", out_dir, "Output directory");
  eval->add_option("--heatmap", heatmap, "on|off")->check(CLI::IsMember({"on", "off"}));

  auto* compare = app.add_subcommand("compare", "Absolute difference of two field CSVs: diff.csv (+ diff.pgm)");
  compare->add_option("--a", field_a, "First field CSV")->required()->check(CLI::ExistingFile);
  compare->add_option("--b", field_b, "Second field CSV")->required()->check(CLI::ExistingFile);
  auto* co_out = compare->add_option("--out", out_dir, "Output directory (default .)");
  compare->add_option("--gate", gate, "Pass threshold on max_abs_below_y95 (default 0.1)");
  compare->add_option("--heatmap", heatmap, "on|off")->check(CLI::IsMember({"on", "off"}));

  std::vector<std::string> argv_storage{"kanpinn"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  auto resolve = [&](CLI::Option* config_opt) {
    RunConfig c;
    if (config_opt && config_opt->count()) c = apply_config_json(read_file(config_path), c);
    return c;
  };

  try {
    if (train->parsed()) {
      RunConfig c = resolve(o_config);
      if (o_backend->count()) c.train.backend = backend_from_string(backend);
      if (o_seed->count()) c.train.seed = seed;
      if (o_steps->count()) c.train.steps = steps;
      if (o_lr->count()) c.train.learning_rate = lr;
      if (o_alpha->count()) c.train.alpha = alpha;
      if (o_out->count()) c.out = out_dir;
      validate(c.train);
      const fs::path dir = prepare_dir(c.out);
      write_file(dir / "config.json", [&](std::ostream& f) { f << config_to_json(c); });

      const int log_every = c.train.log_every;
      const int steps_total = c.train.steps;
      const auto result = kpinn::train(c.train, init_default_model(c.train.backend, c.train.seed),
                                       [&](const HistoryRecord& r) {
                                         if (r.step % (log_every * 10) == 0 || r.step == steps_total)
                                           err << "step " << r.step << " total=" << r.total << "\n";
                                       });
      save_model(result.model, dir / "model.json");
      write_file(dir / "history.csv", [&](std::ostream& f) { write_history_csv(result.history, f); });
      char line[160];
      std::snprintf(line, sizeof line, "backend=%s params=%zu initial_total=%.9g final_total=%.9g\n",
                    to_string(c.train.backend).c_str(), result.model.params.size(), result.initial.total,
                    result.final.total);
      out << line;
      return kOk;
    }

    if (oracle->parsed()) {
      RunConfig c = resolve(oo_config);
      if (oo_grid->count()) c.grid = grid;
      if (oo_terms->count()) c.n_terms = n_terms;
      c.out = oo_out->count() ? out_dir : (oo_config->count() ? c.out : ".");
      const GridField truth = oracle_grid(c.grid, c.n_terms);
      const fs::path dir = prepare_dir(c.out);
      write_file(dir / "config.json", [&](std::ostream& f) { f << config_to_json(c); });
      write_file(dir / "truth.csv", [&](std::ostream& f) { write_csv(truth, f); });
      if (heatmap_enabled(heatmap))
        write_file(dir / "truth.pgm", [&](std::ostream& f) { write_heatmap(truth, f, std::pair{0.0, 1.0}); });
      return kOk;
    }

    if (eval->parsed()) {
      RunConfig c = resolve(eo_config);
      if (eo_grid->count()) c.grid = grid;
      c.out = eo_out->count() ? out_dir : (eo_config->count() ? c.out : ".");
      const NetworkModel model = load_model(model_path);
      const GridField field = eval_grid(model, c.grid);
      const fs::path dir = prepare_dir(c.out);
      write_file(dir / "field.csv", [&](std::ostream& f) { write_csv(field, f); });
      if (heatmap_enabled(heatmap))
        write_file(dir / "field.pgm", [&](std::ostream& f) { write_heatmap(field, f, std::pair{0.0, 1.0}); });
      return kOk;
    }

    // compare
    const GridField a = load_field(field_a);
    const GridField b = load_field(field_b);
    const DiffResult diff = abs_diff(a, b);
    const fs::path dir = prepare_dir(co_out->count() ? out_dir : ".");
    write_file(dir / "diff.csv", [&](std::ostream& f) { write_csv(diff.field, f); });
    if (heatmap_enabled(heatmap))
      write_file(dir / "diff.pgm", [&](std::ostream& f) { write_heatmap(diff.field, f, std::nullopt); });
    char line[160];
    std::snprintf(line, sizeof line, "max_abs=%.9g mean_abs=%.9g max_abs_below_y95=%.9g\n", diff.stats.max_abs,
                  diff.stats.mean_abs, diff.stats.max_abs_below_y95);
    out << line;
    return diff.stats.max_abs_below_y95 <= gate ? kOk : kGateExceeded;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kDiverged;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace kpinn::cli
