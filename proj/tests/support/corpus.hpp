#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "epsilon/epsilon.hpp"

namespace testing_support {

inline std::filesystem::path corpus_dir() { return EPSILON_CORPUS_DIR; }
inline std::filesystem::path golden_dir() { return EPSILON_GOLDEN_DIR; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct CorpusEntry {
  std::string name;  // "<dir>/<file>"
  std::filesystem::path path;
  epsilon::ProofScript proof;
};

// Sorted by file name so iteration order is stable.
inline std::vector<CorpusEntry> load_corpus(const std::string& subdir) {
  std::vector<CorpusEntry> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir() / subdir)) {
    if (e.path().extension() != ".proof") continue;
    out.push_back({subdir + "/" + e.path().filename().string(), e.path(),
                   epsilon::parse_proof(read_file(e.path()))});
  }
  std::sort(out.begin(), out.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
  return out;
}

inline std::vector<CorpusEntry> load_all_corpora() {
  std::vector<CorpusEntry> all;
  for (const char* d : {"base", "open", "ansatz", "blockers", "epsub"}) {
    auto part = load_corpus(d);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace testing_support
