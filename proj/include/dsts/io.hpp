#pragma once

// Text formats for instances and schedules.

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dsts/core.hpp"

namespace dsts {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace detail

inline std::string write_instance(const Instance& inst) {
  std::string out = "DSTS 1\n";
  out += "name " + inst.name + "\n";
  out += "docks " + std::to_string(inst.docks) + "\n";
  out += "horizon " + std::to_string(inst.horizon) + "\n";
  out += "trailers " + std::to_string(inst.size()) + "\n";
  for (const Trailer& t : inst.trailers) {
    out += std::to_string(t.id) + ' ' + std::to_string(t.r) + ' ' + std::to_string(t.due) + ' ' +
           std::to_string(t.p) + ' ' + std::to_string(t.delta) + ' ' + std::to_string(t.f) + ' ' +
           std::to_string(t.g) + '\n';
  }
  return out;
}

inline Instance read_instance(std::string_view text) {
  const auto lines = detail::split_lines(text);
  std::size_t next = 0;
  auto header = [&](std::string_view key) -> std::string_view {
    const int lineno = static_cast<int>(next) + 1;
    if (next >= lines.size()) throw ParseError(lineno, "missing section '" + std::string(key) + "'");
    std::string_view line = lines[next++];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.substr(0, key.size()) != key || (line.size() > key.size() && line[key.size()] != ' '))
      throw ParseError(lineno, "expected '" + std::string(key) + "'");
    return line.size() > key.size() ? line.substr(key.size() + 1) : std::string_view{};
  };
  auto integer = [&](std::string_view key) {
    const std::string_view value = header(key);
    long long v = 0;
    if (!detail::parse_int(value, v)) throw ParseError(static_cast<int>(next), "bad integer for '" + std::string(key) + "'");
    return v;
  };

  if (header("DSTS") != "1") throw ParseError(1, "unsupported format version");
  Instance inst;
  inst.name = std::string(header("name"));
  inst.docks = static_cast<int>(integer("docks"));
  inst.horizon = static_cast<Time>(integer("horizon"));
  const long long n = integer("trailers");
  if (n < 1) throw ParseError(static_cast<int>(next), "instance needs at least one trailer");
  if (inst.docks < 1) throw ParseError(3, "docks must be >= 1");
  if (inst.horizon < 2) throw ParseError(4, "horizon must be >= 2");

  for (long long k = 1; k <= n; ++k) {
    const int lineno = static_cast<int>(next) + 1;
    if (next >= lines.size() || detail::split_ws(lines[next]).empty())
      throw ParseError(lineno, "missing section 'trailer " + std::to_string(k) + "' (" + std::to_string(n) +
                                   " declared)");
    const auto fields = detail::split_ws(lines[next++]);
    if (fields.size() != 7) throw ParseError(lineno, "trailer line needs 7 fields");
    Trailer t;
    long long f = 0;
    long long g = 0;
    if (!detail::parse_int(fields[0], t.id) || !detail::parse_int(fields[1], t.r) ||
        !detail::parse_int(fields[2], t.due) || !detail::parse_int(fields[3], t.p) ||
        !detail::parse_int(fields[4], t.delta) || !detail::parse_int(fields[5], f) || !detail::parse_int(fields[6], g))
      throw ParseError(lineno, "malformed trailer field");
    t.f = f;
    t.g = g;
    if (t.id != k) throw ParseError(lineno, "trailer ids must ascend 1..N");
    if (t.r < 0 || t.due < 0 || t.p < 1 || t.delta < 0 || t.f < 0 || t.g < 0)
      throw ParseError(lineno, "trailer field out of range");
    inst.trailers.push_back(t);
  }
  for (; next < lines.size(); ++next)
    if (!detail::split_ws(lines[next]).empty()) throw ParseError(static_cast<int>(next) + 1, "trailing content");
  return inst;
}

inline Instance load_instance(const std::string& path) { return read_instance(detail::read_file(path)); }

inline std::string write_schedule(const Schedule& s) {
  std::string out;
  for (const DockRun& run : s.runs) {
    out += "dock " + std::to_string(run.dock) + ":";
    for (const Entry& e : run.entries) out += " (" + std::to_string(e.trailer) + "," + std::to_string(e.start) + ")";
    out += '\n';
  }
  out += "unserved:";
  for (int id : s.unserved) out += " " + std::to_string(id);
  out += '\n';
  return out;
}

/// Parses the schedule text format. The cost field is left at zero; use
/// refresh() or evaluate() against an instance.
inline Schedule read_schedule(std::string_view text) {
  Schedule s;
  bool have_unserved = false;
  const auto lines = detail::split_lines(text);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const int lineno = static_cast<int>(k) + 1;
    std::string_view line = lines[k];
    const auto colon = line.find(':');
    if (detail::split_ws(line).empty()) continue;
    if (colon == std::string_view::npos) throw ParseError(lineno, "expected ':'");
    const auto head = detail::split_ws(line.substr(0, colon));
    const auto body = detail::split_ws(line.substr(colon + 1));
    if (head.size() == 2 && head[0] == "dock") {
      if (have_unserved) throw ParseError(lineno, "dock line after unserved line");
      DockRun run;
      if (!detail::parse_int(head[1], run.dock)) throw ParseError(lineno, "bad dock index");
      for (std::string_view tok : body) {
        const auto comma = tok.find(',');
        if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')' || comma == std::string_view::npos)
          throw ParseError(lineno, "expected (id,start)");
        Entry e;
        if (!detail::parse_int(tok.substr(1, comma - 1), e.trailer) ||
            !detail::parse_int(tok.substr(comma + 1, tok.size() - comma - 2), e.start))
          throw ParseError(lineno, "expected (id,start)");
        run.entries.push_back(e);
      }
      s.runs.push_back(std::move(run));
    } else if (head.size() == 1 && head[0] == "unserved") {
      if (have_unserved) throw ParseError(lineno, "duplicate unserved line");
      have_unserved = true;
      for (std::string_view tok : body) {
        int id = 0;
        if (!detail::parse_int(tok, id)) throw ParseError(lineno, "bad trailer id");
        s.unserved.push_back(id);
      }
    } else {
      throw ParseError(lineno, "expected 'dock <d>:' or 'unserved:'");
    }
  }
  if (!have_unserved) throw ParseError(static_cast<int>(lines.size()) + 1, "missing section 'unserved'");
  return s;
}

}  // namespace dsts
