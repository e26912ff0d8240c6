#include "wgtk/weighted_network.hpp"

#include "wgtk/io_util.hpp"

#include <fstream>
#include <set>

namespace wgtk {

WeightedNetwork WeightedNetwork::load(const std::string& path) {
    WeightedNetwork net;
    LineReader reader(path);
    std::string line;
    if (!reader.next(line)) throw ValidationError(path + ": empty file");
    auto header = split_csv(line);
    const std::vector<std::string> expected = {"source", "target", "backlinks", "ref_pages"};
    if (header.size() < expected.size())
        throw ValidationError(path + ":1: missing column (need source,target,backlinks,ref_pages)");
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (std::string(trim(header[i])) != expected[i])
            throw ValidationError(path + ":1: expected column '" + expected[i] + "', got '" +
                                  header[i] + "'");

    std::set<std::pair<std::string, std::string>> seen;
    while (reader.next(line)) {
        if (trim(line).empty()) continue;
        const std::string where = path + ":" + std::to_string(reader.line_number());
        auto fields = split_csv(line);
        if (fields.size() < 4) throw ValidationError(where + ": expected 4 fields");
        WeightedEdge e;
        e.source = std::string(trim(fields[0]));
        e.target = std::string(trim(fields[1]));
        std::int64_t backlinks = parse_int(fields[2], where);
        std::int64_t ref_pages = parse_int(fields[3], where);
        if (backlinks < 0) throw ValidationError(where + ": negative backlink count");
        if (ref_pages < 0) throw ValidationError(where + ": negative ref_pages count");
        e.backlinks = static_cast<std::uint64_t>(backlinks);
        e.ref_pages = static_cast<std::uint64_t>(ref_pages);
        if (!seen.emplace(e.source, e.target).second)
            throw ValidationError(where + ": duplicate edge (" + e.source + ", " + e.target + ")");
        net.edges.push_back(std::move(e));
    }
    return net;
}

void WeightedNetwork::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    out << "source,target,backlinks,ref_pages\n";
    for (const auto& e : edges)
        out << join_csv({e.source, e.target, std::to_string(e.backlinks),
                         std::to_string(e.ref_pages)})
            << '\n';
    if (!out) throw RuntimeError("write failed: " + path);
}

WeightedNetwork filter_weighted_edges(const WeightedNetwork& net,
                                      std::uint64_t min_backlinks,
                                      std::uint64_t min_ref_pages) {
    WeightedNetwork out;
    for (const auto& e : net.edges)
        if (e.backlinks >= min_backlinks && e.ref_pages >= min_ref_pages)
            out.edges.push_back(e);
    return out;
}

} // namespace wgtk
