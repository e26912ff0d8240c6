#pragma once

#include "wgtk/common.hpp"

#include <map>
#include <string>
#include <vector>

namespace wgtk {

/**
 * Declarative record of one CLI run: the exact argument vector, every input
 * with a content digest, every declared output, and the toolkit version.
 * Serial-mode runs are byte-reproducible from manifest plus inputs, and
 * `wgtk replay` re-executes the stored argument vector. No timestamps, so a
 * repeated run writes an identical manifest.
 */
struct RunManifest {
    std::string version;
    std::string command;
    std::vector<std::string> argv; // full subcommand argv, replayable
    std::map<std::string, std::string> params;
    std::map<std::string, std::string> inputs; // path -> sha256
    std::vector<std::string> outputs;

    std::string to_json() const;
    static RunManifest from_json_file(const std::string& path);
    void save(const std::string& path) const;
};

} // namespace wgtk
