#include "refeval/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "refeval/error.hpp"
#include "refeval/tsv.hpp"

namespace refeval {

using nlohmann::json;

std::string RefKey::str() const {
  if (editor.empty()) return level;
  return level + "+" + proficiency + ":" + editor;
}

RefKey RefKey::parse(std::string_view text) {
  RefKey key;
  size_t plus = text.find('+');
  if (plus == std::string_view::npos) {
    key.level = std::string(text);
    return key;
  }
  key.level = std::string(text.substr(0, plus));
  std::string_view rest = text.substr(plus + 1);
  size_t colon = rest.find(':');
  if (colon == std::string_view::npos) {
    throw DataError("bad reference key '" + std::string(text) +
                    "': expected level+proficiency:editor");
  }
  key.proficiency = std::string(rest.substr(0, colon));
  key.editor = std::string(rest.substr(colon + 1));
  if (key.level.empty() || key.proficiency.empty() || key.editor.empty()) {
    throw DataError("bad reference key '" + std::string(text) + "'");
  }
  return key;
}

const Reference* Segment::find_reference(const RefKey& key) const {
  auto it = std::lower_bound(references.begin(), references.end(), key,
                             [](const Reference& r, const RefKey& k) { return r.key < k; });
  if (it != references.end() && it->key == key) return &*it;
  return nullptr;
}

const Segment* Corpus::find_segment(const std::string& id) const {
  auto it = std::lower_bound(segments.begin(), segments.end(), id,
                             [](const Segment& s, const std::string& v) { return s.id < v; });
  if (it != segments.end() && it->id == id) return &*it;
  return nullptr;
}

double Corpus::human_score(const std::string& system, const std::string& segment) const {
  auto it = human_scores.find({system, segment});
  if (it == human_scores.end()) {
    throw DataError("missing human score for system '" + system + "', segment '" + segment + "'");
  }
  return it->second;
}

CorpusCounts Corpus::counts() const {
  CorpusCounts c;
  c.segments = segments.size();
  c.documents = documents.size();
  c.systems = systems.size();
  for (const auto& seg : segments) {
    for (const auto& ref : seg.references) {
      if (ref.key.is_post_edit()) {
        ++c.post_edits;
      } else {
        ++c.references;
      }
    }
  }
  return c;
}

void Corpus::validate() const {
  if (segments.empty()) throw DataError("no segments");

  if (!std::is_sorted(segments.begin(), segments.end(),
                      [](const Segment& a, const Segment& b) { return a.id < b.id; })) {
    throw DataError("segments not in canonical order");
  }
  for (size_t i = 1; i < segments.size(); ++i) {
    if (segments[i - 1].id == segments[i].id) {
      throw DataError("duplicate segment id '" + segments[i].id + "'");
    }
  }

  std::set<std::string> docs(documents.begin(), documents.end());
  if (docs.size() != documents.size()) throw DataError("duplicate document id");
  std::set<std::string> seen_docs;
  for (const auto& seg : segments) {
    if (!docs.count(seg.doc_id)) {
      throw DataError("segment '" + seg.id + "' references unknown document '" + seg.doc_id + "'");
    }
    seen_docs.insert(seg.doc_id);
  }
  if (seen_docs.size() != docs.size()) throw DataError("document list has entries without segments");

  std::set<std::string> sys(systems.begin(), systems.end());
  if (sys.size() != systems.size()) throw DataError("duplicate system id");

  for (const auto& seg : segments) {
    if (seg.references.empty()) {
      throw DataError("segment '" + seg.id + "' has no references");
    }
    for (size_t i = 0; i < seg.references.size(); ++i) {
      const RefKey& key = seg.references[i].key;
      if (key.level.empty()) throw DataError("segment '" + seg.id + "': reference without level");
      if (key.proficiency.empty() != key.editor.empty()) {
        throw DataError("segment '" + seg.id + "': reference '" + key.str() +
                        "' must set both or neither editor fields");
      }
      if (i > 0 && !(seg.references[i - 1].key < key)) {
        throw DataError("segment '" + seg.id + "': duplicate or unsorted reference '" +
                        key.str() + "'");
      }
    }
    for (const auto& s : systems) {
      if (!seg.hypotheses.count(s)) {
        throw DataError("missing hypothesis for system '" + s + "', segment '" + seg.id + "'");
      }
    }
    for (const auto& [s, text] : seg.hypotheses) {
      if (!sys.count(s)) {
        throw DataError("segment '" + seg.id + "' has hypothesis for unknown system '" + s + "'");
      }
    }
  }

  for (const auto& [key, value] : human_scores) {
    if (!sys.count(key.first)) {
      throw DataError("human score for unknown system '" + key.first + "'");
    }
    if (!find_segment(key.second)) {
      throw DataError("human score for unknown segment '" + key.second + "'");
    }
    (void)value;
  }
}

// Import ------------------------------------------------------------------

namespace {

double parse_double_field(const tsv::Row& row, size_t index) {
  const std::string& s = row.fields[index];
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError(row.locus() + ": bad number '" + s + "'");
  }
  return value;
}

void check_declared_counts(const Corpus& corpus, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return;  // header is optional
  json header;
  try {
    in >> header;
  } catch (const json::exception& e) {
    throw DataError(file.string() + ": " + e.what());
  }
  CorpusCounts actual = corpus.counts();
  auto check = [&](const char* name, size_t got) {
    if (header.contains(name) && header[name].get<size_t>() != got) {
      throw DataError(file.string() + ": declared " + name + "=" +
                      std::to_string(header[name].get<size_t>()) + " but corpus has " +
                      std::to_string(got));
    }
  };
  check("segments", actual.segments);
  check("documents", actual.documents);
  check("systems", actual.systems);
  check("references", actual.references);
  check("post_edits", actual.post_edits);
}

Corpus finalize_corpus(std::vector<Segment> segments,
                       std::map<std::pair<std::string, std::string>, double> human) {
  Corpus corpus;
  std::sort(segments.begin(), segments.end(),
            [](const Segment& a, const Segment& b) { return a.id < b.id; });
  std::set<std::string> docs;
  std::set<std::string> systems;
  for (auto& seg : segments) {
    std::sort(seg.references.begin(), seg.references.end(),
              [](const Reference& a, const Reference& b) { return a.key < b.key; });
    docs.insert(seg.doc_id);
    for (const auto& [s, text] : seg.hypotheses) systems.insert(s);
  }
  corpus.segments = std::move(segments);
  corpus.documents.assign(docs.begin(), docs.end());
  corpus.systems.assign(systems.begin(), systems.end());
  corpus.human_scores = std::move(human);
  corpus.validate();
  return corpus;
}

Corpus import_tsv_dir(const std::filesystem::path& dir) {
  auto seg_rows = tsv::read_file(dir / "segments.tsv", {"doc_id", "seg_id", "source"});
  if (seg_rows.empty()) throw DataError(dir.string() + ": no segments");

  std::map<std::string, Segment> segments;
  for (const auto& row : seg_rows) {
    Segment seg;
    seg.doc_id = row.fields[0];
    seg.id = row.fields[1];
    seg.source = row.fields[2];
    if (!segments.emplace(seg.id, std::move(seg)).second) {
      throw DataError(row.locus() + ": duplicate segment id '" + row.fields[1] + "'");
    }
  }

  auto ref_rows = tsv::read_file(dir / "references.tsv",
                                 {"seg_id", "level", "editor_proficiency", "editor_id", "text"});
  for (const auto& row : ref_rows) {
    auto it = segments.find(row.fields[0]);
    if (it == segments.end()) {
      throw DataError(row.locus() + ": unknown segment '" + row.fields[0] + "'");
    }
    RefKey key{row.fields[1], row.fields[2], row.fields[3]};
    if (key.proficiency.empty() != key.editor.empty()) {
      throw DataError(row.locus() + ": editor_proficiency and editor_id must both be set or empty");
    }
    for (const auto& existing : it->second.references) {
      if (existing.key == key) {
        throw DataError(row.locus() + ": duplicate reference '" + key.str() + "' for segment '" +
                        row.fields[0] + "'");
      }
    }
    it->second.references.push_back(Reference{std::move(key), row.fields[4]});
  }

  auto sys_rows = tsv::read_file(dir / "systems.tsv", {"system_id", "seg_id", "text"});
  std::set<std::string> systems;
  for (const auto& row : sys_rows) {
    auto it = segments.find(row.fields[1]);
    if (it == segments.end()) {
      throw DataError(row.locus() + ": unknown segment '" + row.fields[1] + "'");
    }
    if (!it->second.hypotheses.emplace(row.fields[0], row.fields[2]).second) {
      throw DataError(row.locus() + ": duplicate hypothesis for system '" + row.fields[0] +
                      "', segment '" + row.fields[1] + "'");
    }
    systems.insert(row.fields[0]);
  }

  auto human_rows = tsv::read_file(dir / "human.tsv", {"system_id", "seg_id", "da_score"});
  std::map<std::pair<std::string, std::string>, double> human;
  for (const auto& row : human_rows) {
    if (!segments.count(row.fields[1])) {
      throw DataError(row.locus() + ": unknown segment '" + row.fields[1] + "'");
    }
    if (!systems.count(row.fields[0])) {
      throw DataError(row.locus() + ": unknown system '" + row.fields[0] + "'");
    }
    double score = parse_double_field(row, 2);
    if (!human.emplace(std::make_pair(row.fields[0], row.fields[1]), score).second) {
      throw DataError(row.locus() + ": duplicate human score");
    }
  }

  std::vector<Segment> seg_list;
  seg_list.reserve(segments.size());
  for (auto& [id, seg] : segments) seg_list.push_back(std::move(seg));

  Corpus corpus = finalize_corpus(std::move(seg_list), std::move(human));
  check_declared_counts(corpus, dir / "corpus.json");
  return corpus;
}

// Released-layout converter: one JSON file, {"segments": [{doc, id, source,
// references: {level: text}, post_edits: {level: {editor: {proficiency,
// text}}}, systems: {id: text}, scores: {id: da}}]}.
Corpus import_ort_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open " + file.string());
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw DataError(file.string() + ": " + e.what());
  }
  if (!root.contains("segments") || !root["segments"].is_array() || root["segments"].empty()) {
    throw DataError(file.string() + ": no segments");
  }

  std::vector<Segment> segments;
  std::map<std::pair<std::string, std::string>, double> human;
  size_t index = 0;
  for (const auto& item : root["segments"]) {
    Segment seg;
    seg.doc_id = item.at("doc").get<std::string>();
    seg.id = item.contains("id") ? item["id"].get<std::string>() : std::to_string(index);
    seg.source = item.at("source").get<std::string>();
    for (const auto& [level, text] : item.at("references").items()) {
      seg.references.push_back(Reference{RefKey{level, "", ""}, text.get<std::string>()});
    }
    if (item.contains("post_edits")) {
      for (const auto& [level, editors] : item["post_edits"].items()) {
        for (const auto& [editor, pe] : editors.items()) {
          RefKey key{level, pe.at("proficiency").get<std::string>(), editor};
          seg.references.push_back(Reference{std::move(key), pe.at("text").get<std::string>()});
        }
      }
    }
    for (const auto& [system, text] : item.at("systems").items()) {
      seg.hypotheses[system] = text.get<std::string>();
    }
    if (item.contains("scores")) {
      for (const auto& [system, score] : item["scores"].items()) {
        human[{system, seg.id}] = score.get<double>();
      }
    }
    segments.push_back(std::move(seg));
    ++index;
  }
  return finalize_corpus(std::move(segments), std::move(human));
}

}  // namespace

Corpus import_corpus(const std::filesystem::path& dir) { return import_tsv_dir(dir); }

Corpus import_corpus(const std::filesystem::path& path, const std::string& format) {
  if (format == "tsv") return import_tsv_dir(path);
  if (format == "ort-json") return import_ort_json(path);
  throw UsageError("unknown corpus format '" + format + "' (expected tsv or ort-json)");
}

void export_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    tsv::Writer w(dir / "segments.tsv", {"doc_id", "seg_id", "source"});
    for (const auto& seg : corpus.segments) w.row({seg.doc_id, seg.id, seg.source});
  }
  {
    tsv::Writer w(dir / "references.tsv",
                  {"seg_id", "level", "editor_proficiency", "editor_id", "text"});
    for (const auto& seg : corpus.segments) {
      for (const auto& ref : seg.references) {
        w.row({seg.id, ref.key.level, ref.key.proficiency, ref.key.editor, ref.text});
      }
    }
  }
  {
    tsv::Writer w(dir / "systems.tsv", {"system_id", "seg_id", "text"});
    for (const auto& system : corpus.systems) {
      for (const auto& seg : corpus.segments) {
        w.row({system, seg.id, seg.hypotheses.at(system)});
      }
    }
  }
  {
    tsv::Writer w(dir / "human.tsv", {"system_id", "seg_id", "da_score"});
    for (const auto& [key, value] : corpus.human_scores) {
      w.row({key.first, key.second, tsv::format_double(value)});
    }
  }
  CorpusCounts c = corpus.counts();
  json header = {{"segments", c.segments},
                 {"documents", c.documents},
                 {"systems", c.systems},
                 {"references", c.references},
                 {"post_edits", c.post_edits}};
  std::ofstream out(dir / "corpus.json");
  out << header.dump(2) << "\n";
}

// Selectors ----------------------------------------------------------------

namespace {

enum class RefSpec { Original, AllPostEdits, ProficiencyPostEdits, SpecificEditor };

struct SelectorAtom {
  std::vector<std::string> levels;  // empty = every level in the corpus
  RefSpec spec = RefSpec::Original;
  std::string proficiency;
  std::string editor;
};

// Splits on top-level commas; commas inside {...} stay.
std::vector<std::string> split_atoms(std::string_view selector) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : selector) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  out.push_back(current);
  return out;
}

void parse_suffix(std::string_view text, SelectorAtom& atom) {
  if (text.empty()) return;
  if (text.rfind("^PE", 0) == 0) {
    std::string_view rest = text.substr(3);
    if (rest.empty()) {
      atom.spec = RefSpec::AllPostEdits;
      return;
    }
    if (rest.front() == '(' && rest.back() == ')') {
      atom.spec = RefSpec::ProficiencyPostEdits;
      atom.proficiency = std::string(rest.substr(1, rest.size() - 2));
      if (atom.proficiency.empty()) throw UsageError("empty proficiency in selector");
      return;
    }
    throw UsageError("bad post-edit suffix '" + std::string(text) + "'");
  }
  if (text.front() == '+') {
    size_t colon = text.find(':');
    if (colon == std::string_view::npos || colon == 1 || colon + 1 == text.size()) {
      throw UsageError("bad editor suffix '" + std::string(text) +
                       "' (expected +proficiency:editor)");
    }
    atom.spec = RefSpec::SpecificEditor;
    atom.proficiency = std::string(text.substr(1, colon - 1));
    atom.editor = std::string(text.substr(colon + 1));
    return;
  }
  throw UsageError("bad selector suffix '" + std::string(text) + "'");
}

// One brace item: "3", "x", optionally with "^PE".
void expand_brace_item(std::string_view item, const SelectorAtom& base,
                       std::vector<SelectorAtom>& out) {
  SelectorAtom atom = base;
  size_t caret = item.find('^');
  std::string_view levelpart = item;
  if (caret != std::string_view::npos) {
    if (atom.spec != RefSpec::Original) {
      throw UsageError("post-edit marker given both inside and outside braces");
    }
    parse_suffix(item.substr(caret), atom);
    levelpart = item.substr(0, caret);
  }
  if (levelpart.empty()) throw UsageError("empty level in selector braces");
  if (levelpart == "x") {
    atom.levels.clear();  // all levels
  } else {
    atom.levels = {"R" + std::string(levelpart)};
  }
  out.push_back(std::move(atom));
}

std::vector<SelectorAtom> parse_selector(std::string_view selector) {
  std::vector<SelectorAtom> atoms;
  for (const std::string& raw : split_atoms(selector)) {
    if (raw.empty()) throw UsageError("empty selector atom in '" + std::string(selector) + "'");
    std::string_view text = raw;
    if (text.front() != 'R') throw UsageError("selector atom must start with R: '" + raw + "'");
    std::string_view body = text.substr(1);
    if (body.empty()) throw UsageError("bad selector atom '" + raw + "'");

    if (body.front() == '{') {
      size_t close = body.find('}');
      if (close == std::string_view::npos) throw UsageError("unclosed brace in '" + raw + "'");
      SelectorAtom base;
      parse_suffix(body.substr(close + 1), base);
      std::string_view inner = body.substr(1, close - 1);
      std::string item;
      std::vector<std::string> items;
      for (char c : inner) {
        if (c == ',') {
          items.push_back(item);
          item.clear();
        } else {
          item.push_back(c);
        }
      }
      items.push_back(item);
      for (const auto& it : items) expand_brace_item(it, base, atoms);
      continue;
    }

    size_t suffix_start = body.find_first_of("^+");
    std::string_view levelpart =
        suffix_start == std::string_view::npos ? body : body.substr(0, suffix_start);
    SelectorAtom atom;
    if (suffix_start != std::string_view::npos) parse_suffix(body.substr(suffix_start), atom);
    if (levelpart.empty()) throw UsageError("missing level in selector atom '" + raw + "'");
    if (levelpart == "x") {
      atom.levels.clear();
    } else {
      atom.levels = {"R" + std::string(levelpart)};
    }
    atoms.push_back(std::move(atom));
  }
  return atoms;
}

bool atom_matches(const SelectorAtom& atom, const RefKey& key,
                  const std::vector<std::string>& all_levels) {
  const std::vector<std::string>& levels = atom.levels.empty() ? all_levels : atom.levels;
  if (std::find(levels.begin(), levels.end(), key.level) == levels.end()) return false;
  switch (atom.spec) {
    case RefSpec::Original:
      return !key.is_post_edit();
    case RefSpec::AllPostEdits:
      return key.is_post_edit();
    case RefSpec::ProficiencyPostEdits:
      return key.is_post_edit() && key.proficiency == atom.proficiency;
    case RefSpec::SpecificEditor:
      return key.proficiency == atom.proficiency && key.editor == atom.editor;
  }
  return false;
}

}  // namespace

SelectedRefs select_references(const Corpus& corpus, std::string_view selector) {
  auto atoms = parse_selector(selector);

  std::set<std::string> level_set;
  for (const auto& seg : corpus.segments) {
    for (const auto& ref : seg.references) level_set.insert(ref.key.level);
  }
  std::vector<std::string> all_levels(level_set.begin(), level_set.end());

  SelectedRefs out;
  for (const auto& seg : corpus.segments) {
    std::vector<RefKey> keys;
    for (const auto& ref : seg.references) {
      for (const auto& atom : atoms) {
        if (atom_matches(atom, ref.key, all_levels)) {
          keys.push_back(ref.key);
          break;
        }
      }
    }
    // references are sorted per segment, so keys are sorted and unique
    if (keys.empty()) {
      throw DataError("selector '" + std::string(selector) + "' selects no references for segment '" +
                      seg.id + "'");
    }
    out.emplace(seg.id, std::move(keys));
  }
  return out;
}

}  // namespace refeval
