#include "skewproj/cli/stream_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "skewproj/error.hpp"

namespace skewproj::cli {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

}  // namespace

bool StreamReader::next(StreamUpdate& out) {
  while (std::getline(in_, buf_)) {
    ++line_;
    const char* p = buf_.data();
    const char* end = p + buf_.size();
    while (p < end && is_space(*p)) ++p;
    if (p == end || *p == '#') continue;

    std::uint64_t index = 0;
    auto [q, ec] = std::from_chars(p, end, index);
    if (ec != std::errc() || q == p) throw ParseError(line_, "expected a positive integer index");
    if (index == 0) throw ParseError(line_, "index must be at least 1");
    if (q == end || !is_space(*q)) throw ParseError(line_, "expected whitespace after index");
    p = q;
    while (p < end && is_space(*p)) ++p;
    double delta = 0.0;
    auto [r, ec2] = std::from_chars(p, end, delta);
    if (ec2 != std::errc() || r == p) throw ParseError(line_, "expected a real delta");
    if (!std::isfinite(delta)) throw ParseError(line_, "delta must be finite");
    p = r;
    while (p < end && is_space(*p)) ++p;
    if (p != end) throw ParseError(line_, "trailing characters");
    out = {index, delta};
    return true;
  }
  return false;
}

std::vector<StreamUpdate> read_stream(std::istream& in) {
  StreamReader reader(in);
  std::vector<StreamUpdate> out;
  StreamUpdate u;
  while (reader.next(u)) out.push_back(u);
  return out;
}

std::string format_exact(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, p);
}

void write_update(std::ostream& out, const StreamUpdate& u) {
  out << u.index << ' ' << format_exact(u.increment) << '\n';
}

void write_stream(std::ostream& out, const std::vector<StreamUpdate>& updates) {
  for (const auto& u : updates) write_update(out, u);
}

}  // namespace skewproj::cli
