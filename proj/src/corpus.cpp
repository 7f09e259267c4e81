#include "hopfconc/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hopfconc/errors.hpp"

namespace hopfconc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::int64_t> parse_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stoll(item));
    } catch (const std::logic_error&) {
      throw ParseError("bad integer '" + item + "' in corpus header");
    }
  }
  return out;
}

// "2,2: 2 | 9" -> orders, free rank, torsion.
KnownCover parse_cover(const std::string& key, const std::string& value) {
  KnownCover c;
  c.orders = parse_list(key.substr(std::string("cover").size()));
  const auto bar = value.find('|');
  if (c.orders.empty() || bar == std::string::npos) throw ParseError("cover header must read 'cover k,l: free | torsion'");
  const auto fr = parse_list(value.substr(0, bar));
  if (fr.size() != 1 || fr[0] < 0) throw ParseError("cover header needs one free rank");
  c.free_rank = static_cast<std::size_t>(fr[0]);
  c.torsion = parse_list(value.substr(bar + 1));
  return c;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormRequired("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CorpusEntry parse_corpus_entry(const std::string& text) {
  CorpusEntry e;
  std::map<std::string, std::string> prov;
  std::vector<std::string> known;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] != '#') {
      e.pd_text += t + "\n";
      continue;
    }
    const std::string body = trim(t.substr(1));
    const auto colon = body.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = trim(body.substr(0, colon)), value = trim(body.substr(colon + 1));
    if (key.size() > 11 && key.ends_with(".provenance")) {
      prov[key.substr(0, key.size() - 11)] = value;
      e.provenance.emplace_back(key.substr(0, key.size() - 11), value);
    } else if (key == "name") {
      e.name = value;
    } else if (key == "seifert") {
      try {
        e.seifert = parse_seifert_json(nlohmann::json{{"V", nlohmann::json::parse(value)}});
      } catch (const nlohmann::json::exception&) {
        throw ParseError("bad seifert header");
      }
      known.push_back("seifert");
    } else if (key == "alexander") {
      e.alexander = value;
      known.push_back("alexander");
    } else if (key.starts_with("cover")) {
      e.covers.push_back(parse_cover(key, value));
      known.push_back("cover");
    } else if (key == "gamma") {
      try {
        Word w;
        for (const auto& l : nlohmann::json::parse(value)) w.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
        e.gamma = w;
      } catch (const nlohmann::json::exception&) {
        throw ParseError("bad gamma header");
      }
      known.push_back("gamma");
    }
  }
  for (const auto& k : known)
    if (!prov.count(k)) throw ParseError("corpus field '" + k + "' has no provenance line");
  e.diagram = parse_pd(e.pd_text);
  return e;
}

CorpusEntry load_corpus_entry(const std::filesystem::path& path) {
  CorpusEntry e = parse_corpus_entry(read_file(path));
  if (e.name.empty()) e.name = path.stem().string();
  return e;
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::directory_iterator(dir))
    if (f.path().extension() == ".pd") files.push_back(f.path());
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& f : files) out.push_back(load_corpus_entry(f));
  return out;
}

}  // namespace hopfconc
