#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hopfconc/link_diagram.hpp"
#include "hopfconc/seifert.hpp"

namespace hopfconc {

struct KnownCover {
  std::vector<std::int64_t> orders;
  std::size_t free_rank = 0;
  std::vector<std::int64_t> torsion;
};

// A corpus file: '#' header lines "key: value" followed by the diagram.
//
//   # name: trefoil
//   # seifert: [[1,-1],[0,1]]
//   # seifert.provenance: ...
//   # alexander: t^2-t+1
//   # alexander.provenance: ...
//   # cover 2: 1 | 3          (orders: free rank | torsion)
//   # cover.provenance: ...
//   # gamma: [[0,1],[4,-1]]
//   # gamma.provenance: ...
//
// Every known field needs its provenance line; other header lines are free
// text.
struct CorpusEntry {
  std::string name;
  std::string pd_text;
  PDCode diagram;
  std::optional<SeifertMatrix> seifert;
  std::optional<std::string> alexander;
  std::vector<KnownCover> covers;
  std::optional<Word> gamma;
  std::vector<std::pair<std::string, std::string>> provenance;
};

CorpusEntry parse_corpus_entry(const std::string& text);
CorpusEntry load_corpus_entry(const std::filesystem::path& path);
// All *.pd files of a directory, sorted by file name.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);

}  // namespace hopfconc
