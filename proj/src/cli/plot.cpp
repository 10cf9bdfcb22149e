#include "priv/cli/plot.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "priv/attacks/report.hpp"
#include "priv/errors.hpp"

namespace priv::cli {

namespace {

using attacks::AttackKind;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& body,
                std::vector<std::string>& written) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  os << body;
  os.flush();
  if (!os) throw StateError("cannot write " + path.string());
  written.push_back(path.string());
}

const attacks::AttackReport* first_undefended(const EvalReport& r, AttackKind kind) {
  auto it = r.attacks.find(kind);
  if (it == r.attacks.end() || it->second.undefended.per_seed.empty()) return nullptr;
  return &it->second.undefended.per_seed.front();
}

}  // namespace

std::vector<std::string> write_plots(const EvalReport& r, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw StateError("cannot create output directory " + out_dir);
  }

  std::vector<std::string> written;

  if (const attacks::AttackReport* mia = first_undefended(r, AttackKind::mia)) {
    write_file(dir / "mia_roc.csv", attacks::curve_to_csv(*mia, "fpr", "tpr"), written);
  }
  if (const attacks::AttackReport* inv = first_undefended(r, AttackKind::inversion)) {
    write_file(dir / "inversion_loss.csv", attacks::curve_to_csv(*inv, "step", "loss"), written);
  }

  auto pois = r.attacks.find(AttackKind::poisoning);
  if (pois != r.attacks.end() && !pois->second.undefended.per_seed.empty()) {
    std::string body = "seed,accuracy_clean,accuracy_poisoned,degradation\n";
    for (const attacks::AttackReport& rep : pois->second.undefended.per_seed) {
      body += std::to_string(rep.seed) + "," + fmt(rep.metrics.at("accuracy_clean")) + "," +
              fmt(rep.metrics.at("accuracy_poisoned")) + "," +
              fmt(rep.metrics.at("degradation")) + "\n";
    }
    write_file(dir / "poisoning_accuracy.csv", body, written);
  }

  if (!r.timing.scalability.empty()) {
    std::string body = "docs,chats_per_second\n";
    for (const ThroughputPoint& p : r.timing.scalability) {
      body += std::to_string(p.docs) + "," + fmt(p.chats_per_second) + "\n";
    }
    write_file(dir / "scalability.csv", body, written);
  }

  return written;
}

}  // namespace priv::cli
