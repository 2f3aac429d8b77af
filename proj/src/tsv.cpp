#include "refeval/tsv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "refeval/error.hpp"

namespace refeval::tsv {

static std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<Row> read_file(const std::filesystem::path& path,
                           const std::vector<std::string>& header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());

  std::vector<Row> rows;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      auto cols = split_tabs(line);
      if (cols != header) {
        std::ostringstream want;
        for (size_t i = 0; i < header.size(); ++i) want << (i ? "\t" : "") << header[i];
        throw DataError(path.string() + ":1: expected header '" + want.str() +
                        "', got '" + line + "'");
      }
      continue;
    }
    if (line.empty()) continue;
    Row row{split_tabs(line), path.string(), lineno};
    if (row.fields.size() != header.size()) {
      throw DataError(row.locus() + ": expected " + std::to_string(header.size()) +
                      " fields, got " + std::to_string(row.fields.size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Writer::Impl {
  std::ofstream out;
  size_t columns;
  std::filesystem::path path;
};

Writer::Writer(const std::filesystem::path& path, const std::vector<std::string>& header)
    : impl_(new Impl{std::ofstream(path, std::ios::binary), header.size(), path}) {
  if (!impl_->out) {
    delete impl_;
    throw DataError("cannot write " + path.string());
  }
  row(header);
}

Writer::~Writer() {
  close();
  delete impl_;
}

void Writer::row(const std::vector<std::string>& fields) {
  if (fields.size() != impl_->columns) {
    throw DataError(impl_->path.string() + ": row has " + std::to_string(fields.size()) +
                    " fields, expected " + std::to_string(impl_->columns));
  }
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) impl_->out << '\t';
    impl_->out << fields[i];
  }
  impl_->out << '\n';
}

void Writer::close() {
  if (impl_->out.is_open()) impl_->out.close();
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace refeval::tsv
