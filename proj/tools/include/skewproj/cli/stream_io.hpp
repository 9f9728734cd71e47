#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "skewproj/sketch.hpp"

namespace skewproj::cli {

// Line-oriented reader for "<index> <delta>" stream files. Lines starting with
// '#' and blank lines are skipped.
class StreamReader {
 public:
  explicit StreamReader(std::istream& in) : in_(in) {}
  // Returns false at end of input. Throws ParseError on a malformed line.
  bool next(StreamUpdate& out);
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::string buf_;
  std::size_t line_ = 0;
};

std::vector<StreamUpdate> read_stream(std::istream& in);
void write_update(std::ostream& out, const StreamUpdate& u);
void write_stream(std::ostream& out, const std::vector<StreamUpdate>& updates);

// Formats a real so that parsing it back yields the same double.
std::string format_exact(double x);

}  // namespace skewproj::cli
