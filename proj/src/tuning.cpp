#include "wgtk/tuning.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace wgtk {

namespace {
constexpr double kLowerBound = 0.1;
constexpr double kUpperBound = 16.0;
constexpr double kRpTolerance = 1e-3;
} // namespace

TuneResult tune_scale(const EdgeScoreTable& unit_scores, const WeightedNetwork& net,
                      const AttributeTable& attrs, const RegressionModel& model,
                      const LabelTable& labels, Reliability target_group) {
    auto rp_of = [&](const RetentionReport& r) {
        switch (target_group) {
        case Reliability::reliable: return r.rp_reliable;
        case Reliability::mixed: return r.rp_mixed;
        case Reliability::unreliable: return r.rp_unreliable;
        }
        return r.rp_reliable;
    };

    TuneResult result;
    auto evaluate = [&](double upper) {
        const auto post = apply_multiplicity_reweight(attrs, net, unit_scores.scaled(upper));
        const auto report = predict_retention(model, attrs, post.attrs, labels);
        result.trace.push_back({upper, rp_of(report)});
        return report;
    };

    double lo = kLowerBound, hi = kUpperBound;
    RetentionReport report_lo = evaluate(lo);
    RetentionReport report_hi = evaluate(hi);
    const double f_lo = rp_of(report_lo) - 1.0;
    const double f_hi = rp_of(report_hi) - 1.0;
    if (std::abs(f_lo) <= kRpTolerance) {
        hi = lo;
        report_hi = report_lo;
    } else if (std::abs(f_hi) <= kRpTolerance) {
        lo = hi;
        report_lo = report_hi;
    } else if (f_lo * f_hi > 0.0) {
        throw ValidationError("RP(target) = 1 is not bracketed by upper in [0.1, 16]");
    }

    RetentionReport best = f_lo * f_lo < f_hi * f_hi ? report_lo : report_hi;
    double best_upper = f_lo * f_lo < f_hi * f_hi ? lo : hi;
    const bool increasing = f_hi > f_lo;
    for (int iter = 0; iter < 100 && std::abs(rp_of(best) - 1.0) > kRpTolerance; ++iter) {
        const double mid = (lo + hi) / 2.0;
        const RetentionReport report = evaluate(mid);
        const double f = rp_of(report) - 1.0;
        best = report;
        best_upper = mid;
        if ((f < 0.0) == increasing)
            lo = mid;
        else
            hi = mid;
    }
    if (std::abs(rp_of(best) - 1.0) > kRpTolerance)
        throw RuntimeError("bisection did not converge to RP(target) = 1");

    result.scale = ScaleParams{0.0, best_upper};
    result.rp_reliable = best.rp_reliable;
    result.rp_mixed = best.rp_mixed;
    result.rp_unreliable = best.rp_unreliable;
    result.ris = best.ris;
    return result;
}

std::string TuneResult::to_json() const {
    nlohmann::json j;
    j["scale"]["lower"] = scale.lower;
    j["scale"]["upper"] = scale.upper;
    j["rp"]["reliable"] = rp_reliable;
    j["rp"]["mixed"] = rp_mixed;
    j["rp"]["unreliable"] = rp_unreliable;
    j["ris"] = ris;
    auto& trace_json = j["trace"] = nlohmann::json::array();
    for (const auto& t : trace) trace_json.push_back({{"upper", t.upper}, {"rp_target", t.rp_target}});
    return j.dump(2) + "\n";
}

} // namespace wgtk
