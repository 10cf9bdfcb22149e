#pragma once

#include <string>
#include <vector>

#include "priv/cli/eval.hpp"

namespace priv::cli {

// Writes the report's figure data as CSV (ROC curve, inversion loss trace,
// poisoning accuracies, throughput curve). Files whose data is absent are
// skipped; returns the paths written. Numeric columns round-trip exactly.
std::vector<std::string> write_plots(const EvalReport& r, const std::string& out_dir);

}  // namespace priv::cli
