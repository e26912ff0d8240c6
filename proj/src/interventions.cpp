#include "wgtk/interventions.hpp"

#include "wgtk/io_util.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <map>

namespace wgtk {

namespace {

InterventionResult adjust_backlinks(const AttributeTable& attrs,
                                    const std::map<std::string, double>& delta_by_domain) {
    InterventionResult result{attrs, 0};
    auto backlinks = result.attrs.column_mut(kBacklinkColumn);
    const auto& domains = result.attrs.domains();
    for (std::size_t r = 0; r < domains.size(); ++r) {
        auto it = delta_by_domain.find(domains[r]);
        if (it == delta_by_domain.end()) continue;
        double updated = backlinks[r] + it->second;
        if (updated < 1.0) {
            updated = 1.0;
            ++result.clamp_events;
        }
        backlinks[r] = updated;
    }
    return result;
}

} // namespace

InterventionResult apply_control(const AttributeTable& attrs, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw ValidationError("delta must be in [0, 1]");
    InterventionResult result{attrs, 0};
    for (double& v : result.attrs.column_mut(kBacklinkColumn)) {
        double updated = v * (1.0 - delta);
        if (updated < 1.0) {
            updated = 1.0;
            ++result.clamp_events;
        }
        v = updated;
    }
    return result;
}

InterventionResult apply_linkscheme_removal(const AttributeTable& attrs,
                                            const WeightedNetwork& net,
                                            const std::set<std::string>& schemes) {
    std::map<std::string, double> removed;
    for (const auto& e : net.edges)
        if (schemes.count(e.source)) removed[e.target] -= static_cast<double>(e.backlinks);
    return adjust_backlinks(attrs, removed);
}

InterventionResult apply_multiplicity_reweight(const AttributeTable& attrs,
                                               const WeightedNetwork& net,
                                               const EdgeScoreTable& scores,
                                               const std::set<std::string>* skip_sources) {
    std::map<std::string, double> shift;
    for (const auto& e : net.edges) {
        if (skip_sources && skip_sources->count(e.source)) continue;
        const EdgeScore* s = scores.find(e.source, e.target);
        if (!s) continue; // uncovered edges keep weight 1 implicitly
        shift[e.target] += static_cast<double>(e.backlinks) * (s->score - 1.0);
    }
    return adjust_backlinks(attrs, shift);
}

InterventionResult compose_interventions(const AttributeTable& attrs, const WeightedNetwork& net,
                                         std::span<const InterventionStep> steps) {
    InterventionResult acc{attrs, 0};
    std::set<std::string> removed_sources;
    for (const auto& step : steps) {
        InterventionResult next{AttributeTable{}, 0};
        switch (step.kind) {
        case InterventionStep::Kind::control:
            next = apply_control(acc.attrs, step.delta);
            break;
        case InterventionStep::Kind::edge_removal:
            next = apply_linkscheme_removal(acc.attrs, net, step.schemes);
            removed_sources.insert(step.schemes.begin(), step.schemes.end());
            break;
        case InterventionStep::Kind::multiplicity:
            next = apply_multiplicity_reweight(acc.attrs, net, step.scores,
                                               removed_sources.empty() ? nullptr : &removed_sources);
            break;
        }
        acc.attrs = std::move(next.attrs);
        acc.clamp_events += next.clamp_events;
    }
    return acc;
}

double reliability_impact_score(double rp_reliable, double rp_mixed, double rp_unreliable) {
    return rp_reliable - (rp_unreliable + rp_mixed) / 2.0;
}

RetentionReport predict_retention(const RegressionModel& model, const AttributeTable& pre,
                                  const AttributeTable& post, const LabelTable& labels) {
    if (pre.row_count() != post.row_count())
        throw ValidationError("pre/post attribute tables cover different domains");

    std::vector<std::span<const double>> pre_cols, post_cols;
    for (const auto& r : model.regressors) {
        pre_cols.push_back(pre.column(r));
        post_cols.push_back(post.column(r));
    }

    RetentionReport report;
    double sum_rel = 0.0, sum_mix = 0.0, sum_unrel = 0.0;
    std::uint64_t n_rel = 0, n_mix = 0, n_unrel = 0;
    std::vector<double> pre_vals(model.regressors.size()), post_vals(model.regressors.size());

    for (std::size_t r = 0; r < pre.row_count(); ++r) {
        const std::string& domain = pre.domains()[r];
        auto post_row = post.row_of(domain);
        if (!post_row)
            throw ValidationError("domain missing from post table: " + domain);
        bool usable = true;
        for (std::size_t j = 0; j < pre_vals.size(); ++j) {
            pre_vals[j] = pre_cols[j][r];
            post_vals[j] = post_cols[j][*post_row];
            usable = usable && pre_vals[j] > 0.0 && post_vals[j] > 0.0;
        }
        if (!usable) {
            ++report.rows_skipped;
            continue;
        }
        // intercept and unchanged regressors cancel in the ratio
        const double rp = std::exp(model.predict_log(post_vals) - model.predict_log(pre_vals));

        const LabelRow* label = labels.find(domain);
        RetentionReport::PerDomain pd{domain, label ? to_string(label->reliability) : "", rp};
        report.per_domain.push_back(std::move(pd));
        if (!label) continue;
        switch (label->reliability) {
        case Reliability::reliable: sum_rel += rp; ++n_rel; break;
        case Reliability::mixed: sum_mix += rp; ++n_mix; break;
        case Reliability::unreliable: sum_unrel += rp; ++n_unrel; break;
        }
    }

    if (n_rel == 0 || n_mix == 0 || n_unrel == 0)
        throw ValidationError("a reliability group has no usable labeled domains");
    report.rp_reliable = sum_rel / static_cast<double>(n_rel);
    report.rp_mixed = sum_mix / static_cast<double>(n_mix);
    report.rp_unreliable = sum_unrel / static_cast<double>(n_unrel);
    report.ris =
        reliability_impact_score(report.rp_reliable, report.rp_mixed, report.rp_unreliable);
    return report;
}

std::string RetentionReport::to_json() const {
    nlohmann::json j;
    j["rp"]["reliable"] = rp_reliable;
    j["rp"]["mixed"] = rp_mixed;
    j["rp"]["unreliable"] = rp_unreliable;
    j["ris"] = ris;
    j["rows_skipped"] = rows_skipped;
    j["domains"] = per_domain.size();
    return j.dump(2) + "\n";
}

void RetentionReport::save_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    out << "domain,label,rp\n";
    for (const auto& pd : per_domain)
        out << join_csv({pd.domain, pd.label, format_double(pd.rp)}) << '\n';
    if (!out) throw RuntimeError("write failed: " + path);
}

} // namespace wgtk
