// Copyright 2026 The mi-audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "miaudit/roc.hpp"

#include "miaudit/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace miaudit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ClassCounts {
  Index positives = 0;
  Index negatives = 0;
};

ClassCounts count_classes(std::span<const ScoredRound> rounds) {
  ClassCounts c;
  for (const auto& r : rounds) (r.member ? c.positives : c.negatives)++;
  return c;
}

std::vector<ScoredRound> sorted_descending(std::span<const ScoredRound> rounds) {
  std::vector<ScoredRound> sorted(rounds.begin(), rounds.end());
  for (const auto& r : sorted) require(!std::isnan(r.score), "ROC input contains a NaN score");
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ScoredRound& a, const ScoredRound& b) { return a.score > b.score; });
  return sorted;
}

// Anti-diagonal parametrization s = x + y of a monotone polyline.
struct AntiDiagonal {
  std::vector<double> s;
  std::vector<double> x;

  explicit AntiDiagonal(std::span<const RocPoint> pts) {
    require(!pts.empty(), "curve needs at least one point");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0) {
        require(pts[i].fpr >= pts[i - 1].fpr && pts[i].tpr >= pts[i - 1].tpr,
                "curve points must be non-decreasing in both coordinates");
      }
      const double si = pts[i].fpr + pts[i].tpr;
      if (!s.empty() && si == s.back()) continue;
      s.push_back(si);
      x.push_back(pts[i].fpr);
    }
  }

  [[nodiscard]] double x_at(double si) const {
    if (si <= s.front()) return x.front();
    if (si >= s.back()) return x.back();
    const auto it = std::upper_bound(s.begin(), s.end(), si);
    const auto hi = static_cast<std::size_t>(it - s.begin());
    const auto lo = hi - 1;
    const double t = (si - s[lo]) / (s[hi] - s[lo]);
    return x[lo] + t * (x[hi] - x[lo]);
  }
};

}  // namespace

RocCurve roc(std::span<const ScoredRound> rounds) {
  const ClassCounts counts = count_classes(rounds);
  require(counts.positives > 0 && counts.negatives > 0,
          "ROC needs at least one member and one non-member round");
  const auto sorted = sorted_descending(rounds);
  const double np = static_cast<double>(counts.positives);
  const double nn = static_cast<double>(counts.negatives);

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  Index tp = 0;
  Index fp = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double s = sorted[i].score;
    // Equal scores form one threshold step.
    while (i < sorted.size() && sorted[i].score == s) {
      (sorted[i].member ? tp : fp)++;
      ++i;
    }
    curve.points.push_back({static_cast<double>(fp) / nn, static_cast<double>(tp) / np});
  }
  double auc = 0.0;
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    const auto& a = curve.points[k - 1];
    const auto& b = curve.points[k];
    auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  curve.auc = std::clamp(auc, 0.0, 1.0);
  return curve;
}

double empirical_advantage(std::span<const ScoredRound> rounds, double threshold) {
  require(!rounds.empty(), "advantage needs at least one round");
  Index correct = 0;
  for (const auto& r : rounds) correct += ((r.score > threshold) == r.member) ? 1 : 0;
  return 2.0 * static_cast<double>(correct) / static_cast<double>(rounds.size()) - 1.0;
}

BestAdvantage best_advantage(std::span<const ScoredRound> rounds, bool two_sided) {
  require(!rounds.empty(), "advantage needs at least one round");
  const auto sorted = sorted_descending(rounds);
  const double total = static_cast<double>(rounds.size());
  const ClassCounts counts = count_classes(rounds);

  // Nothing guessed "member": accuracy is the non-member share.
  Index correct = counts.negatives;
  auto advantage_of = [&](Index c) { return 2.0 * static_cast<double>(c) / total - 1.0; };
  auto score_of = [&](double adv) { return two_sided ? std::abs(adv) : adv; };

  BestAdvantage best{advantage_of(correct), kInf};
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double s = sorted[i].score;
    while (i < sorted.size() && sorted[i].score == s) {
      correct += sorted[i].member ? 1 : -1;
      ++i;
    }
    const double adv = advantage_of(correct);
    const double threshold = i < sorted.size() ? sorted[i].score : -kInf;
    if (score_of(adv) > score_of(best.advantage)) best = {adv, threshold};
  }
  if (two_sided) best.advantage = std::abs(best.advantage);
  return best;
}

double empirical_power(const RocCurve& curve, double alpha) {
  double power = 0.0;
  for (const auto& p : curve.points) {
    if (p.fpr <= alpha) power = std::max(power, p.tpr);
  }
  return power;
}

double curve_gap(std::span<const RocPoint> a, std::span<const RocPoint> b) {
  const AntiDiagonal pa(a);
  const AntiDiagonal pb(b);
  double gap = 0.0;
  for (double s : pa.s) gap = std::max(gap, std::abs(pa.x_at(s) - pb.x_at(s)));
  for (double s : pb.s) gap = std::max(gap, std::abs(pa.x_at(s) - pb.x_at(s)));
  return gap;
}

std::vector<RocPoint> theory_polyline(double m_eff) {
  std::vector<double> alphas;
  constexpr int kUniform = 4097;
  for (int i = 0; i < kUniform; ++i) alphas.push_back(static_cast<double>(i) / (kUniform - 1));
  // Geometric refinement where the curve is steep.
  for (int e = -300; e <= -30; ++e) alphas.push_back(std::pow(10.0, e / 10.0));
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  std::vector<RocPoint> pts;
  pts.reserve(alphas.size());
  for (double a : alphas) pts.push_back({a, theoretical_power(m_eff, a)});
  return pts;
}

double theory_gap(const RocCurve& curve, double m_eff) {
  const auto theory = theory_polyline(m_eff);
  return curve_gap(curve.points, theory);
}

}  // namespace miaudit
