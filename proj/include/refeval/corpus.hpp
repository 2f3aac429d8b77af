#ifndef REFEVAL_CORPUS_HPP
#define REFEVAL_CORPUS_HPP

#include <compare>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace refeval {

// Identifies one reference translation of a segment: the vendor level it was
// bought at, plus the post-editor when it is a post-edited variant. Both
// editor fields empty means the vendor's original translation.
struct RefKey {
  std::string level;        // e.g. "R1".."R4"
  std::string proficiency;  // e.g. "layman" | "student" | "professional"
  std::string editor;       // annotator id, e.g. "a07"

  bool is_post_edit() const { return !editor.empty(); }

  // "R3" for originals, "R3+layman:a07" for post-edits.
  std::string str() const;
  static RefKey parse(std::string_view text);

  auto operator<=>(const RefKey&) const = default;
};

struct Reference {
  RefKey key;
  std::string text;

  bool operator==(const Reference&) const = default;
};

struct Segment {
  std::string id;
  std::string doc_id;
  std::string source;
  std::vector<Reference> references;              // sorted by key
  std::map<std::string, std::string> hypotheses;  // system id -> text

  const Reference* find_reference(const RefKey& key) const;

  bool operator==(const Segment&) const = default;
};

struct CorpusCounts {
  size_t segments = 0;
  size_t documents = 0;
  size_t systems = 0;
  size_t references = 0;  // originals only
  size_t post_edits = 0;

  bool operator==(const CorpusCounts&) const = default;
};

// Immutable after import; safe to share across threads.
struct Corpus {
  std::vector<std::string> documents;  // sorted, unique
  std::vector<Segment> segments;       // sorted by id
  std::vector<std::string> systems;    // sorted, unique
  std::map<std::pair<std::string, std::string>, double> human_scores;  // (system, segment) -> DA

  const Segment* find_segment(const std::string& id) const;
  double human_score(const std::string& system, const std::string& segment) const;
  CorpusCounts counts() const;

  // Checks every structural invariant; throws DataError with the offending
  // cell on violation.
  void validate() const;

  bool operator==(const Corpus&) const = default;
};

// Canonical on-disk layout: segments.tsv, references.tsv, systems.tsv,
// human.tsv and an optional corpus.json with declared counts for self-check.
Corpus import_corpus(const std::filesystem::path& dir);

// format: "tsv" (canonical directory layout) or "ort-json" (one JSON file in
// the released-dataset layout; see README).
Corpus import_corpus(const std::filesystem::path& path, const std::string& format);

void export_corpus(const Corpus& corpus, const std::filesystem::path& dir);

// Reference selection ---------------------------------------------------

// Per-segment ordered reference keys, canonical order.
using SelectedRefs = std::map<std::string, std::vector<RefKey>>;

// Selector expressions, comma-separated union of atoms:
//   R3              original translation of level 3
//   Rx              originals of every level
//   R{3,4}          originals of levels 3 and 4
//   R3^PE           every post-edit of R3
//   R3^PE(layman)   layman post-edits of R3
//   R3+layman:a07   one specific post-edit
//   R{x,x^PE}       originals plus every post-edit
// Throws UsageError on syntax errors and DataError when the selection is
// empty for some segment.
SelectedRefs select_references(const Corpus& corpus, std::string_view selector);

}  // namespace refeval

#endif  // REFEVAL_CORPUS_HPP
