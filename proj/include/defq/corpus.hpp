#pragma once

#include <string>
#include <vector>

namespace defq {

struct CorpusEntry {
    std::string name;
    std::string text;
};

/// The specs shipped with the tool, embedded at build time.
const std::vector<CorpusEntry>& bundled_corpus();

}  // namespace defq
