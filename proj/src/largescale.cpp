#include "wgtk/largescale.hpp"

#include "wgtk/io_util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

namespace wgtk {

LargeScaleReport retention_report(const ScoreVector& pre, const ScoreVector& post,
                                  const VertexTable& vertices, const LabelTable& labels) {
    if (pre.size() != post.size() || pre.size() != vertices.size())
        throw ValidationError("score vectors and vertex table cover different node universes");

    const auto pre_pos = rank_positions(pre);
    const auto post_pos = rank_positions(post);

    LargeScaleReport report;
    double c_sum[3] = {0, 0, 0}, r_sum[3] = {0, 0, 0};
    std::uint64_t n[3] = {0, 0, 0};

    for (const auto& row : labels.rows()) {
        // exact form first, then reversed-host with subdomain expansion
        std::vector<NodeId> hosts;
        if (auto id = vertices.find(row.domain)) hosts.push_back(*id);
        if (hosts.empty()) {
            const std::string reversed = reverse_host(row.domain);
            hosts = vertices.find_with_subdomains(reversed);
        }
        if (hosts.empty()) {
            ++report.unresolved_labels;
            continue;
        }
        double pre_score = 0.0, post_score = 0.0;
        std::uint32_t best_pre = 0, best_post = 0;
        for (NodeId h : hosts) {
            pre_score += pre.scores[h];
            post_score += post.scores[h];
            if (best_pre == 0 || pre_pos[h] < best_pre) best_pre = pre_pos[h];
            if (best_post == 0 || post_pos[h] < best_post) best_post = post_pos[h];
        }
        if (!(pre_score > 0.0)) {
            ++report.skipped_zero_pre;
            continue;
        }
        LargeScaleReport::PerDomain pd;
        pd.domain = row.domain;
        pd.label = to_string(row.reliability);
        pd.pre_score = pre_score;
        pd.post_score = post_score;
        pd.pre_position = best_pre;
        pd.post_position = best_post;
        pd.centrality_retention = post_score / pre_score;
        pd.rank_retention = static_cast<double>(best_pre) / static_cast<double>(best_post);
        const int g = static_cast<int>(row.reliability); // reliable=0, mixed=1, unreliable=2
        c_sum[g] += pd.centrality_retention;
        r_sum[g] += pd.rank_retention;
        ++n[g];
        report.per_domain.push_back(std::move(pd));
    }

    if (n[0] == 0 || n[1] == 0 || n[2] == 0)
        throw ValidationError("a reliability group resolved no domains in the graph");
    report.centrality.reliable = c_sum[0] / static_cast<double>(n[0]);
    report.centrality.mixed = c_sum[1] / static_cast<double>(n[1]);
    report.centrality.unreliable = c_sum[2] / static_cast<double>(n[2]);
    report.centrality.ris = report.centrality.reliable -
                            (report.centrality.unreliable + report.centrality.mixed) / 2.0;
    report.rank.reliable = r_sum[0] / static_cast<double>(n[0]);
    report.rank.mixed = r_sum[1] / static_cast<double>(n[1]);
    report.rank.unreliable = r_sum[2] / static_cast<double>(n[2]);
    report.rank.ris =
        report.rank.reliable - (report.rank.unreliable + report.rank.mixed) / 2.0;
    return report;
}

std::string LargeScaleReport::to_json() const {
    nlohmann::json j;
    auto group = [](const GroupRetention& g) {
        return nlohmann::json{{"unreliable", g.unreliable},
                              {"mixed", g.mixed},
                              {"reliable", g.reliable},
                              {"ris", g.ris}};
    };
    j["centrality"] = group(centrality);
    j["rank"] = group(rank);
    j["domains"] = per_domain.size();
    j["unresolved_labels"] = unresolved_labels;
    j["skipped_zero_pre"] = skipped_zero_pre;
    return j.dump(2) + "\n";
}

void LargeScaleReport::save_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    out << "domain,label,pre_score,post_score,pre_pos,post_pos,centrality_retention,rank_retention\n";
    for (const auto& pd : per_domain)
        out << join_csv({pd.domain, pd.label, format_double(pd.pre_score),
                         format_double(pd.post_score), std::to_string(pd.pre_position),
                         std::to_string(pd.post_position), format_double(pd.centrality_retention),
                         format_double(pd.rank_retention)})
            << '\n';
    if (!out) throw RuntimeError("write failed: " + path);
}

ChangeHistogram change_distribution(const ScoreVector& pre, const ScoreVector& post,
                                    const std::vector<double>& bin_edges) {
    if (pre.size() != post.size())
        throw ValidationError("score vectors cover different node universes");
    if (bin_edges.size() < 2) throw ValidationError("need at least two bin edges");
    for (std::size_t i = 1; i < bin_edges.size(); ++i)
        if (!(bin_edges[i] > bin_edges[i - 1]))
            throw ValidationError("bin edges must be strictly increasing");

    ChangeHistogram h;
    h.bin_edges = bin_edges;
    h.counts.assign(bin_edges.size() - 1, 0);
    for (NodeId u = 0; u < pre.size(); ++u) {
        if (!(pre.scores[u] > 0.0)) {
            ++h.zero_pre;
            continue;
        }
        const double change = (post.scores[u] - pre.scores[u]) / pre.scores[u];
        if (change < bin_edges.front()) {
            ++h.below_range;
        } else if (change >= bin_edges.back()) {
            ++h.above_range;
        } else {
            auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), change);
            h.counts[static_cast<std::size_t>(it - bin_edges.begin()) - 1] += 1;
        }
    }
    return h;
}

void ChangeHistogram::save_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    out << "bin_low,bin_high,count\n";
    for (std::size_t i = 0; i + 1 < bin_edges.size(); ++i)
        out << join_csv({format_double(bin_edges[i]), format_double(bin_edges[i + 1]),
                         std::to_string(counts[i])})
            << '\n';
    if (!out) throw RuntimeError("write failed: " + path);
}

DomainSet affected_domains(const ScoreVector& pre, const ScoreVector& post, double min_pre,
                           double min_drop) {
    if (pre.size() != post.size())
        throw ValidationError("score vectors cover different node universes");
    if (!(min_pre > 0.0) || !(min_drop > 0.0))
        throw ValidationError("thresholds must be > 0");
    DomainSet out;
    for (NodeId u = 0; u < pre.size(); ++u) {
        if (pre.scores[u] < min_pre) continue;
        if ((pre.scores[u] - post.scores[u]) / pre.scores[u] >= min_drop) out.push_back(u);
    }
    return out;
}

CategoryTable CategoryTable::load(const std::string& path) {
    CategoryTable table;
    LineReader reader(path);
    std::string line;
    if (!reader.next(line)) throw ValidationError(path + ": empty file");
    auto header = split_csv(line);
    if (header.size() < 2 || std::string(trim(header[0])) != "domain" ||
        std::string(trim(header[1])) != "category")
        throw ValidationError(path + ":1: expected header domain,category");
    while (reader.next(line)) {
        if (trim(line).empty()) continue;
        const std::string where = path + ":" + std::to_string(reader.line_number());
        auto fields = split_csv(line);
        if (fields.size() < 2) throw ValidationError(where + ": expected 2 fields");
        table.add(std::string(trim(fields[0])), std::string(trim(fields[1])));
    }
    return table;
}

void CategoryTable::add(std::string domain, std::string category) {
    if (!by_domain_.emplace(std::move(domain), std::move(category)).second)
        throw ValidationError("duplicate categorized domain");
}

const std::string* CategoryTable::find(std::string_view domain) const {
    auto it = by_domain_.find(std::string(domain));
    return it == by_domain_.end() ? nullptr : &it->second;
}

CategoryCounts categorize(const DomainSet& domains, const CategoryTable& categories,
                          const VertexTable& vertices) {
    std::map<std::string, std::uint64_t> counts;
    CategoryCounts out;
    for (NodeId id : domains) {
        const std::string& name = vertices.name(id);
        const std::string* cat = categories.find(name);
        if (!cat) cat = categories.find(reverse_host(name));
        if (cat)
            ++counts[*cat];
        else
            ++out.uncategorized;
    }
    out.categories.assign(counts.begin(), counts.end());
    std::sort(out.categories.begin(), out.categories.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

std::string CategoryCounts::to_json() const {
    nlohmann::json j;
    auto& cats = j["categories"] = nlohmann::json::array();
    for (const auto& [name, count] : categories)
        cats.push_back({{"category", name}, {"count", count}});
    j["uncategorized"] = uncategorized;
    return j.dump(2) + "\n";
}

} // namespace wgtk
