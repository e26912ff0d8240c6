#pragma once

#include "wgtk/attributes.hpp"
#include "wgtk/common.hpp"
#include "wgtk/labels.hpp"
#include "wgtk/multiplicity.hpp"
#include "wgtk/regression.hpp"
#include "wgtk/weighted_network.hpp"

#include <set>
#include <span>
#include <string>
#include <vector>

namespace wgtk {

/// The name of the mutated attribute (X1); every other column passes through
/// untouched.
inline constexpr const char* kBacklinkColumn = "backlinks";

struct InterventionResult {
    AttributeTable attrs;
    std::uint64_t clamp_events = 0; // rows where backlinks hit the floor of 1
};

/// Uniform penalty: backlinks' = max(1, backlinks * (1 - delta)).
InterventionResult apply_control(const AttributeTable& attrs, double delta);

/// Removes scheme-sourced backlink volume per destination:
/// backlinks'(d) = max(1, backlinks(d) - sum of scheme edge weights into d).
InterventionResult apply_linkscheme_removal(const AttributeTable& attrs,
                                            const WeightedNetwork& net,
                                            const std::set<std::string>& schemes);

/// Reweights network-covered backlinks by edge scores:
/// backlinks'(d) = max(1, backlinks(d) + sum over covered edges of w*(s-1)).
/// Off-network backlinks are untouched; `skip_sources` (scheme domains already
/// removed) leaves those edges alone.
InterventionResult apply_multiplicity_reweight(const AttributeTable& attrs,
                                               const WeightedNetwork& net,
                                               const EdgeScoreTable& scores,
                                               const std::set<std::string>* skip_sources = nullptr);

struct InterventionStep {
    enum class Kind { control, edge_removal, multiplicity };
    Kind kind = Kind::control;
    double delta = 0.0;                 // control
    std::set<std::string> schemes;      // edge_removal
    EdgeScoreTable scores;              // multiplicity
};

/// Applies steps left to right. Multiplicity steps skip edges whose source
/// was removed by an earlier edge_removal step.
InterventionResult compose_interventions(const AttributeTable& attrs, const WeightedNetwork& net,
                                         std::span<const InterventionStep> steps);

struct RetentionReport {
    struct PerDomain {
        std::string domain;
        std::string label; // empty when unlabeled
        double rp = 1.0;
    };
    std::vector<PerDomain> per_domain;
    double rp_reliable = 0.0;
    double rp_mixed = 0.0;
    double rp_unreliable = 0.0;
    double ris = 0.0;
    std::uint64_t rows_skipped = 0; // shared domains unusable under the model

    std::string to_json() const;
    void save_csv(const std::string& path) const;
};

/// RIS = RP(reliable) - (RP(unreliable) + RP(mixed)) / 2.
double reliability_impact_score(double rp_reliable, double rp_mixed, double rp_unreliable);

/**
 * Per-domain retention RP = exp(prediction on post) / exp(prediction on pre),
 * group means over labeled domains, and the RIS. Pre and post must cover the
 * same domains; every reliability group must resolve at least one domain.
 */
RetentionReport predict_retention(const RegressionModel& model, const AttributeTable& pre,
                                  const AttributeTable& post, const LabelTable& labels);

} // namespace wgtk
