#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "priv/attacks/report.hpp"
#include "priv/cli/eval.hpp"
#include "priv/cli/plot.hpp"
#include "priv/errors.hpp"
#include "priv/gw/config.hpp"
#include "priv/gw/server.hpp"
#include "priv/nn/checkpoint.hpp"
#include "priv/nn/train.hpp"
#include "priv/synth/synthdata.hpp"

namespace {

using priv::FormatError;
using priv::StateError;

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw StateError("cannot open " + path);
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& body) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  os << body;
  os.flush();
  if (!os) throw StateError("cannot write " + path);
}

priv::cli::EvalConfig load_eval_config(const std::string& config_path) {
  if (config_path.empty()) return priv::cli::EvalConfig{};
  return priv::cli::eval_config_from_json(read_json_file(config_path));
}

struct GenArgs {
  std::size_t n = 1000;
};

struct TrainArgs {
  std::string model = "classifier";
  std::size_t n = 400;
  std::size_t epochs = 30;
};

struct AttackArgs {
  bool defended = false;
};

struct EvalArgs {
  std::vector<std::uint64_t> seeds;
};

struct ServeArgs {
  std::string config_path;
};

struct PlotArgs {
  std::string report_path;
};

void run_gen(const GenArgs& a, std::uint64_t seed, const std::string& out_dir, bool as_json) {
  const priv::synth::Dataset ds = priv::synth::generate(a.n, seed);
  std::filesystem::create_directories(out_dir);
  const std::string jsonl_path = (std::filesystem::path(out_dir) / "dataset.jsonl").string();
  const std::string csv_path = (std::filesystem::path(out_dir) / "features.csv").string();
  {
    std::ofstream os(jsonl_path, std::ios::binary | std::ios::trunc);
    priv::synth::export_jsonl(ds, os);
    if (!os) throw StateError("cannot write " + jsonl_path);
  }
  {
    std::ofstream os(csv_path, std::ios::binary | std::ios::trunc);
    priv::synth::export_feature_csv(ds, os);
    if (!os) throw StateError("cannot write " + csv_path);
  }
  if (as_json) {
    nlohmann::json out = {{"records", a.n}, {"paths", {jsonl_path, csv_path}}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "wrote " << a.n << " records to " << jsonl_path << " and " << csv_path << "\n";
  }
}

void run_train(const TrainArgs& a, std::uint64_t seed, const std::string& out_dir, bool as_json) {
  const priv::synth::Dataset ds = priv::synth::generate(a.n, seed);
  std::filesystem::create_directories(out_dir);
  priv::nn::TrainConfig tc;
  tc.epochs = a.epochs;
  tc.seed = seed;
  std::string path;
  double final_loss = 0.0;
  if (a.model == "classifier") {
    priv::nn::Network net({{priv::synth::kFeatureCount, 16, priv::nn::Activation::relu},
                           {16, 1, priv::nn::Activation::sigmoid}},
                          seed);
    const std::vector<double> hist =
        priv::nn::train(net, ds.feature_view(), ds.label_view(), tc);
    final_loss = hist.back();
    path = (std::filesystem::path(out_dir) / "classifier.ckpt").string();
    priv::nn::save_network(net, path);
  } else {
    priv::nn::VaeModel vae =
        priv::nn::VaeModel::make(priv::synth::kFeatureCount, 8, 2, seed);
    const std::vector<double> hist = priv::nn::train_vae(vae, ds.feature_view(), tc);
    final_loss = hist.back();
    path = (std::filesystem::path(out_dir) / "vae.ckpt").string();
    priv::nn::save_vae(vae, path);
  }
  if (as_json) {
    nlohmann::json out = {
        {"model", a.model}, {"path", path}, {"final_loss", final_loss}, {"epochs", a.epochs}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "trained " << a.model << " (" << a.epochs << " epochs, final loss " << final_loss
              << "), saved to " << path << "\n";
  }
}

void run_attack(priv::attacks::AttackKind kind, const AttackArgs& a, std::uint64_t seed,
                const std::string& config_path, const std::string& out_dir, bool as_json) {
  const priv::cli::EvalConfig cfg = load_eval_config(config_path);
  const priv::attacks::AttackReport report =
      priv::cli::run_single_attack(kind, cfg, a.defended, seed);
  const nlohmann::json j = priv::attacks::report_to_json(report);
  if (!out_dir.empty()) {
    const std::string path =
        (std::filesystem::path(out_dir) /
         (std::string(priv::attacks::attack_kind_name(kind)) + "_report.json"))
            .string();
    write_text_file(path, j.dump(2) + "\n");
  }
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << priv::attacks::attack_kind_name(kind) << (report.defended ? " (defended)" : "")
              << " seed " << report.seed << "\n";
    for (const auto& [k, v] : report.metrics) std::cout << "  " << k << " = " << v << "\n";
  }
}

void run_eval_cmd(const EvalArgs& a, const std::string& config_path, const std::string& out_dir,
                  bool as_json) {
  priv::cli::EvalConfig cfg = load_eval_config(config_path);
  if (!a.seeds.empty()) cfg.seeds = a.seeds;
  const priv::cli::EvalReport report = priv::cli::run_eval(cfg);
  const nlohmann::json j = priv::cli::eval_report_to_json(report);
  if (!out_dir.empty()) {
    write_text_file((std::filesystem::path(out_dir) / "report.json").string(), j.dump(2) + "\n");
  }
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "risk: " << priv::cli::level_name(report.risk.risk)
              << " (sensitivity " << priv::cli::level_name(report.risk.sensitivity)
              << ", exposure " << priv::cli::level_name(report.risk.exposure) << ")\n";
    std::cout << "retrieval recall@1: " << report.gateway.retrieval_recall_at_1 << "\n";
    if (!out_dir.empty()) std::cout << "report written to " << out_dir << "/report.json\n";
  }
}

void run_serve(const ServeArgs& a) {
  priv::gw::LoadedGateway loaded = priv::gw::gateway_from_config_file(a.config_path);
  priv::gw::GatewayServer server(loaded.gateway, loaded.server);
  const int port = server.start();
  std::cout << "gateway listening on port " << port << "\n" << std::flush;
  for (;;) std::this_thread::sleep_for(std::chrono::hours(24));
}

void run_plot(const PlotArgs& a, const std::string& out_dir, bool as_json) {
  const priv::cli::EvalReport report =
      priv::cli::eval_report_from_json(read_json_file(a.report_path));
  const std::string dir = out_dir.empty() ? "." : out_dir;
  const std::vector<std::string> written = priv::cli::write_plots(report, dir);
  if (as_json) {
    std::cout << nlohmann::json{{"written", written}}.dump(2) << "\n";
  } else {
    for (const std::string& p : written) std::cout << "wrote " << p << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privacy red-team lab and defense gateway"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string config_path;
  std::string out_dir;
  bool as_json = false;
  app.add_option("--seed", seed, "experiment seed")->capture_default_str();
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--json", as_json, "machine-readable stdout");

  // Global flags stay valid after a subcommand name.
  app.fallthrough();

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  gen->fallthrough();
  gen->add_option("--n", gen_args.n, "record count")->capture_default_str();

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train", "train a model checkpoint");
  train->fallthrough();
  train->add_option("--model", train_args.model, "model kind")
      ->check(CLI::IsMember({"classifier", "vae"}))
      ->capture_default_str();
  train->add_option("--n", train_args.n, "training record count")->capture_default_str();
  train->add_option("--epochs", train_args.epochs, "training epochs")->capture_default_str();

  AttackArgs attack_args;
  CLI::App* attack = app.add_subcommand("attack", "run one attack experiment");
  attack->fallthrough();
  attack->require_subcommand(1);
  attack->add_flag("--defended", attack_args.defended,
                   "preprocess inputs with the redaction pipeline first");
  const std::map<std::string, priv::attacks::AttackKind> attack_names = {
      {"mia", priv::attacks::AttackKind::mia},
      {"extract", priv::attacks::AttackKind::extraction},
      {"poison", priv::attacks::AttackKind::poisoning},
      {"invert", priv::attacks::AttackKind::inversion},
      {"property", priv::attacks::AttackKind::property},
  };
  for (const auto& [name, kind] : attack_names) {
    attack->add_subcommand(name)->fallthrough();
    (void)kind;
  }

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "full attack/defense evaluation matrix");
  eval->fallthrough();
  eval->add_option("--seeds", eval_args.seeds, "seed list")->delimiter(',');

  ServeArgs serve_args;
  CLI::App* serve = app.add_subcommand("serve", "start the gateway HTTP service");
  serve->fallthrough();
  serve->add_option("--config", serve_args.config_path, "gateway config JSON")->required();

  PlotArgs plot_args;
  CLI::App* plot = app.add_subcommand("plot", "export figure CSVs from a report");
  plot->fallthrough();
  plot->add_option("--report", plot_args.report_path, "eval report JSON")->required();

  try {
    app.parse(argc, argv);
    if (gen->parsed()) {
      run_gen(gen_args, seed, out_dir.empty() ? "." : out_dir, as_json);
    } else if (train->parsed()) {
      run_train(train_args, seed, out_dir.empty() ? "." : out_dir, as_json);
    } else if (attack->parsed()) {
      for (const auto& [name, kind] : attack_names) {
        if (attack->got_subcommand(name)) {
          run_attack(kind, attack_args, seed, config_path, out_dir, as_json);
          break;
        }
      }
    } else if (eval->parsed()) {
      run_eval_cmd(eval_args, config_path, out_dir, as_json);
    } else if (serve->parsed()) {
      run_serve(serve_args);
    } else if (plot->parsed()) {
      run_plot(plot_args, out_dir, as_json);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const priv::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
