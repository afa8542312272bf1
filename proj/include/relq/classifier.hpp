#pragma once

#include <algorithm>
#include <string>

#include "relq/errors.hpp"
#include "relq/profiler.hpp"
#include "relq/rational.hpp"

namespace relq {

/// Classification knobs, all in [0, 1].
///
///   delta_sel  minimum selectivity gap for the selectivity rule to decide
///   eps_rhr    minimum hit-rate gap for the tiebreak rule to decide
///   tau_pk     minimum selectivity the chosen PK end must have
///   rho_count  small-side guard: when one end's row count is below
///              rho_count times the other end's cardinality, its selectivity
///              is an artifact of having few rows (a 99-row column is 100%
///              unique for free), so the selectivity rule is skipped and the
///              hit-rate tiebreak decides
struct Thresholds {
  Rational delta_sel{5, 100};
  Rational eps_rhr{5, 100};
  Rational tau_pk{90, 100};
  Rational rho_count{10, 100};
};

/// Assigns PK/FK roles to the ends of a profiled constraint.
///
/// Decision order:
///   1. small-side guard (see Thresholds::rho_count): skip rule 2
///   2. selectivity gap >= delta_sel: PK = higher-selectivity end
///   3. hit-rate gap >= eps_rhr: FK = end with the higher outbound rate
///   4. otherwise Ambiguous
/// Post-check: a PK end with selectivity < tau_pk is demoted to Ambiguous.
/// Confidence is the deciding rule's gap, clipped to [0, 1].
inline RelationshipCandidate classify(RelationshipCandidate candidate,
                                      const Thresholds& thresholds) {
  if (candidate.classification == Classification::unprofilable) {
    return candidate;  // nothing to decide
  }
  if (!candidate.left_profile.selectivity || !candidate.right_profile.selectivity) {
    throw MissingMetricsError("classify() needs both selectivities and both hit rates");
  }

  const Rational& sel_left = *candidate.left_profile.selectivity;
  const Rational& sel_right = *candidate.right_profile.selectivity;
  const Rational& rhr_lr = candidate.left_to_right.row_hit_rate;
  const Rational& rhr_rl = candidate.right_to_left.row_hit_rate;

  auto rows = [&](int end) {
    return static_cast<std::int64_t>(candidate.profile(end).row_count);
  };
  auto cards = [&](int end) {
    return static_cast<std::int64_t>(candidate.profile(end).cardinality);
  };

  // Small-side guard: min(row_count) against max(cardinality). Row counts
  // alone cannot tell the 99-rows-vs-1500 trap apart from a plain
  // small-table-vs-big-table pair, but a side with fewer rows than the
  // other side's distinct-value count cannot cover it and its perfect
  // selectivity proves nothing.
  std::int64_t min_rows = std::min(rows(0), rows(1));
  std::int64_t max_card = std::max(cards(0), cards(1));
  bool guard = max_card == 0 || Rational(min_rows, max_card) < thresholds.rho_count;

  candidate.classification = Classification::ambiguous;
  candidate.pk_end = -1;
  candidate.rule_used = ClassificationRule::none;
  candidate.confidence = Rational(0, 1);

  Rational sel_gap = Rational::abs_diff(sel_left, sel_right);
  Rational rhr_gap = Rational::abs_diff(rhr_lr, rhr_rl);

  if (!guard && sel_gap >= thresholds.delta_sel && sel_gap > Rational(0, 1)) {
    candidate.classification = Classification::pk_fk;
    candidate.pk_end = sel_left > sel_right ? 0 : 1;
    candidate.rule_used = ClassificationRule::selectivity_gap;
    candidate.confidence = sel_gap.clipped_to_unit();
  } else if (rhr_gap >= thresholds.eps_rhr && rhr_gap > Rational(0, 1)) {
    // The FK side references the PK side, so its outbound hit rate is the
    // higher one.
    candidate.classification = Classification::pk_fk;
    candidate.pk_end = rhr_lr > rhr_rl ? 1 : 0;
    candidate.rule_used = ClassificationRule::row_hit_tiebreak;
    candidate.confidence = rhr_gap.clipped_to_unit();
    if (guard) {
      candidate.notes.push_back("small-side guard: selectivity rule skipped");
    }
  }

  if (candidate.classification == Classification::pk_fk) {
    const Rational& pk_sel = *candidate.profile(candidate.pk_end).selectivity;
    if (pk_sel < thresholds.tau_pk) {
      candidate.classification = Classification::ambiguous;
      candidate.notes.push_back("pk-end not unique enough");
    }
  }
  return candidate;
}

}  // namespace relq
