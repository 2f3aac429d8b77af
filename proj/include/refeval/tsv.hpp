#ifndef REFEVAL_TSV_HPP
#define REFEVAL_TSV_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace refeval::tsv {

// One parsed record plus its origin, for error messages.
struct Row {
  std::vector<std::string> fields;
  std::string file;
  size_t line = 0;  // 1-based, header included

  std::string locus() const { return file + ":" + std::to_string(line); }
};

// Reads a whole TSV file. The first line must equal `header` (tab-joined
// column names); remaining lines must have exactly header.size() fields.
// UTF-8, tab-separated, no quoting, one record per line.
std::vector<Row> read_file(const std::filesystem::path& path,
                           const std::vector<std::string>& header);

class Writer {
 public:
  Writer(const std::filesystem::path& path, const std::vector<std::string>& header);
  ~Writer();
  Writer(const Writer&) = delete;
  Writer& operator=(const Writer&) = delete;

  void row(const std::vector<std::string>& fields);
  void close();

 private:
  struct Impl;
  Impl* impl_;
};

// Number formatting used in every exported table: shortest representation
// that round-trips a double, so repeated runs are byte-identical.
std::string format_double(double v);

}  // namespace refeval::tsv

#endif  // REFEVAL_TSV_HPP
