#include "wgtk/multiplicity.hpp"

#include "wgtk/io_util.hpp"

#include <algorithm>
#include <fstream>

namespace wgtk {

UrlPairTable ingest_url_pairs(const std::string& path) {
    UrlPairTable table;
    LineReader reader(path);
    std::string line;
    if (!reader.next(line)) throw ValidationError(path + ": empty file");
    auto header = split_csv(line);
    if (header.size() < 3 || std::string(trim(header[0])) != "source_domain" ||
        std::string(trim(header[1])) != "source_url" ||
        std::string(trim(header[2])) != "dest_url")
        throw ValidationError(path + ":1: expected header source_domain,source_url,dest_url");

    static const char* kDropped[] = {".jpg", ".png", ".css", ".js"};
    while (reader.next(line)) {
        if (trim(line).empty()) continue;
        const std::string where = path + ":" + std::to_string(reader.line_number());
        auto fields = split_csv(line);
        if (fields.size() < 3) throw ValidationError(where + ": expected 3 fields");
        UrlPairTable::Row row{std::string(trim(fields[0])), std::string(trim(fields[1])),
                              std::string(trim(fields[2]))};
        if (row.source_domain.empty() || row.dest_url.empty())
            throw ValidationError(where + ": empty source_domain or dest_url");
        bool drop = false;
        for (const char* ext : kDropped)
            if (ends_with_icase(row.dest_url, ext)) {
                drop = true;
                break;
            }
        if (drop)
            ++table.dropped_filetype;
        else
            table.rows.push_back(std::move(row));
    }
    return table;
}

MultiplicityTable compute_multiplicity(const UrlPairTable& pairs) {
    MultiplicityTable m;
    for (const auto& row : pairs.rows) ++m[{row.source_domain, row.dest_url}];
    return m;
}

std::vector<PairScore> score_multiplicity(const MultiplicityTable& m, const ScaleParams& scale) {
    if (m.empty()) throw ValidationError("multiplicity table is empty");
    if (!(scale.lower < scale.upper)) throw ValidationError("scale requires lower < upper");

    std::uint64_t lo = m.begin()->second, hi = m.begin()->second;
    for (const auto& [key, mult] : m) {
        lo = std::min(lo, mult);
        hi = std::max(hi, mult);
    }

    std::vector<PairScore> out;
    out.reserve(m.size());
    const double midpoint = (scale.lower + scale.upper) / 2.0;
    const double span = scale.upper - scale.lower;
    for (const auto& [key, mult] : m) {
        double score =
            lo == hi ? midpoint
                     : scale.lower + span * static_cast<double>(hi - mult) /
                                         static_cast<double>(hi - lo);
        out.push_back({key.first, key.second, mult, score});
    }
    return out;
}

std::string host_of_url(std::string_view url) {
    std::size_t scheme = url.find("://");
    std::string_view rest = scheme == std::string_view::npos ? url : url.substr(scheme + 3);
    std::size_t end = rest.find_first_of("/?#");
    std::string_view authority = end == std::string_view::npos ? rest : rest.substr(0, end);
    std::size_t at = authority.rfind('@');
    if (at != std::string_view::npos) authority = authority.substr(at + 1);
    std::size_t colon = authority.find(':');
    if (colon != std::string_view::npos) authority = authority.substr(0, colon);
    return std::string(authority);
}

const EdgeScore* EdgeScoreTable::find(const std::string& source, const std::string& target) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), std::tie(source, target),
                               [](const EdgeScore& e, const auto& key) {
                                   return std::tie(e.source, e.target) < key;
                               });
    if (it == entries.end() || it->source != source || it->target != target) return nullptr;
    return &*it;
}

EdgeScoreTable EdgeScoreTable::load(const std::string& path) {
    EdgeScoreTable table;
    LineReader reader(path);
    std::string line;
    if (!reader.next(line)) throw ValidationError(path + ": empty file");
    auto header = split_csv(line);
    if (header.size() < 3 || std::string(trim(header[0])) != "source" ||
        std::string(trim(header[1])) != "target" || std::string(trim(header[2])) != "score")
        throw ValidationError(path + ":1: expected header source,target,score");
    while (reader.next(line)) {
        if (trim(line).empty()) continue;
        const std::string where = path + ":" + std::to_string(reader.line_number());
        auto fields = split_csv(line);
        if (fields.size() < 3) throw ValidationError(where + ": expected 3 fields");
        table.entries.push_back({std::string(trim(fields[0])), std::string(trim(fields[1])),
                                 parse_double(fields[2], where), 0});
    }
    std::sort(table.entries.begin(), table.entries.end(), [](const auto& a, const auto& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    return table;
}

void EdgeScoreTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    out << "source,target,score\n";
    for (const auto& e : entries)
        out << join_csv({e.source, e.target, format_double(e.score)}) << '\n';
    if (!out) throw RuntimeError("write failed: " + path);
}

EdgeScoreTable EdgeScoreTable::scaled(double factor) const {
    EdgeScoreTable out = *this;
    for (auto& e : out.entries) e.score *= factor;
    return out;
}

EdgeScoreTable aggregate_edge_scores(const std::vector<PairScore>& pair_scores,
                                     const ScaleParams& scale) {
    std::map<std::pair<std::string, std::string>, std::pair<double, std::uint64_t>> acc;
    for (const auto& p : pair_scores) {
        auto& slot = acc[{p.source_domain, host_of_url(p.dest_url)}];
        slot.first += p.score;
        slot.second += 1;
    }
    EdgeScoreTable table;
    table.entries.reserve(acc.size());
    for (const auto& [key, sum_count] : acc) {
        double mean = sum_count.first / static_cast<double>(sum_count.second);
        // means of in-range scores stay in range; clamp only guards fp dust
        mean = std::clamp(mean, scale.lower, scale.upper);
        table.entries.push_back({key.first, key.second, mean, sum_count.second});
    }
    return table;
}

} // namespace wgtk
