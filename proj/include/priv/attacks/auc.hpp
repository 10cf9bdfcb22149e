#pragma once

#include <vector>

namespace priv::attacks {

// Mann-Whitney AUC with member-low orientation: the fraction of
// (member, non-member) pairs where the member scores strictly lower, ties
// counted 0.5. Requires both classes present.
double auc(const std::vector<double>& scores, const std::vector<bool>& is_member);

// Percentile with linear interpolation between order statistics, pct in
// (0, 100). Input need not be sorted.
double percentile(std::vector<double> values, double pct);

}  // namespace priv::attacks
