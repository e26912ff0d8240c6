#pragma once

#include "wgtk/attributes.hpp"
#include "wgtk/interventions.hpp"
#include "wgtk/labels.hpp"
#include "wgtk/multiplicity.hpp"
#include "wgtk/regression.hpp"
#include "wgtk/weighted_network.hpp"

#include <string>
#include <vector>

namespace wgtk {

struct TuneTracePoint {
    double upper = 0.0;
    double rp_target = 0.0;
};

struct TuneResult {
    ScaleParams scale;            // lower pinned at 0, tuned upper
    double rp_reliable = 0.0;     // achieved RP per group at the tuned scale
    double rp_mixed = 0.0;
    double rp_unreliable = 0.0;
    double ris = 0.0;
    std::vector<TuneTracePoint> trace;

    std::string to_json() const;
};

/**
 * Bisects the minmax upper bound in [0.1, 16] (lower pinned at 0) until the
 * target group's mean retention under the multiplicity reweighting is 1
 * within 1e-3. `unit_scores` must be edge scores aggregated at unit scale
 * (lower 0, upper 1); a candidate upper u evaluates the table scaled by u.
 * Errors when RP(target) = 1 is not bracketed by the interval.
 */
TuneResult tune_scale(const EdgeScoreTable& unit_scores, const WeightedNetwork& net,
                      const AttributeTable& attrs, const RegressionModel& model,
                      const LabelTable& labels, Reliability target_group);

} // namespace wgtk
