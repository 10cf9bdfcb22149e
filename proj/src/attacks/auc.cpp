#include "priv/attacks/auc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "priv/errors.hpp"

namespace priv::attacks {

double auc(const std::vector<double>& scores, const std::vector<bool>& is_member) {
  if (scores.size() != is_member.size()) throw ShapeError("auc: scores/labels size mismatch");
  std::size_t members = 0;
  for (bool b : is_member) members += b ? 1 : 0;
  const std::size_t non_members = scores.size() - members;
  if (members == 0 || non_members == 0) throw FormatError("auc: both classes required");
  for (double s : scores) {
    if (!std::isfinite(s)) throw NumericError("auc: non-finite score");
  }

  // Average ranks handle ties exactly; rank sum gives the Mann-Whitney U.
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  std::vector<double> rank(scores.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j - 1)) / 2.0 + 1.0;
    for (std::size_t k = i; k < j; ++k) rank[idx[k]] = avg;
    i = j;
  }
  double member_rank_sum = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (is_member[i]) member_rank_sum += rank[i];
  }
  const double m = static_cast<double>(members);
  const double n = static_cast<double>(non_members);
  // U = pairs where the member scores higher; member-low wants the complement.
  const double u_high = member_rank_sum - m * (m + 1.0) / 2.0;
  return 1.0 - u_high / (m * n);
}

double percentile(std::vector<double> values, double pct) {
  if (values.empty()) throw FormatError("percentile: empty input");
  if (!(pct > 0.0 && pct < 100.0)) throw FormatError("percentile: pct must be in (0, 100)");
  std::sort(values.begin(), values.end());
  const double pos = pct / 100.0 * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

}  // namespace priv::attacks
